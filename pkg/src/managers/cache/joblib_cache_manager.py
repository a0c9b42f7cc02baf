# src/managers/cache/joblib_cache_manager.py
import hashlib
import os
import time
from pathlib import Path
from typing import Any, Callable, Tuple

import joblib

from src.core.logger_setup import get_logger
from src.managers.cache.cache_manager import CacheManager

ENTRY_FORMAT = 1
SUFFIX = ".joblib"


class JoblibCacheManager(CacheManager):
    """
    One joblib pickle per key under `cache_dir`, named by the sha256 of the key.

    Each file holds {"format", "key", "value"}; an entry whose stored key or
    format does not match is treated as a miss and recomputed.
    """

    def __init__(self, cache_dir: str = "cache", enabled: bool = True):
        self.logger = get_logger()
        self.root = Path(cache_dir)
        self.enabled = enabled
        if enabled:
            self.root.mkdir(parents=True, exist_ok=True)
        self.logger.debug(f"Oracle cache at {self.root} (enabled={enabled})")

    def _entry_path(self, key: str) -> Path:
        return self.root / (hashlib.sha256(key.encode("utf-8")).hexdigest() + SUFFIX)

    def get(self, key: str) -> Tuple[bool, Any]:
        if not self.enabled:
            return False, None
        path = self._entry_path(key)
        if not path.is_file():
            return False, None
        try:
            entry = joblib.load(path)
        except Exception as e:
            self.logger.warning(f"Unreadable cache entry {path.name}, recomputing: {e}")
            return False, None
        if not isinstance(entry, dict) or entry.get("format") != ENTRY_FORMAT or entry.get("key") != key:
            self.logger.warning(f"Stale cache entry {path.name}, recomputing")
            return False, None
        self.logger.debug(f"Cache hit: {key}")
        return True, entry["value"]

    def set(self, key: str, value: Any) -> bool:
        if not self.enabled:
            return False
        path = self._entry_path(key)
        staging = path.with_name(path.name + ".tmp")
        try:
            joblib.dump({"format": ENTRY_FORMAT, "key": key, "value": value}, staging)
            os.replace(staging, path)
        except OSError as e:
            self.logger.error(f"Could not write cache entry for {key}: {e}")
            staging.unlink(missing_ok=True)
            return False
        return True

    def invalidate(self, key: str) -> bool:
        path = self._entry_path(key)
        try:
            path.unlink()
        except FileNotFoundError:
            return False
        self.logger.debug(f"Dropped cache entry: {key}")
        return True

    def clear(self) -> bool:
        if not self.root.is_dir():
            return True
        ok = True
        for path in self.root.glob("*" + SUFFIX):
            try:
                path.unlink()
            except OSError as e:
                self.logger.error(f"Could not remove {path}: {e}")
                ok = False
        self.logger.info(f"Cleared oracle cache at {self.root}")
        return ok

    def cached_call(self, cache_key: str, func: Callable, *args, **kwargs) -> Any:
        hit, value = self.get(cache_key)
        if hit:
            return value
        started = time.perf_counter()
        value = func(*args, **kwargs)
        self.logger.info(
            f"Computed {cache_key} in {time.perf_counter() - started:.2f}s")
        self.set(cache_key, value)
        return value
