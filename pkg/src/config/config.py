# src/config/config.py
import json
import os
from pathlib import Path
from typing import Any, Dict, Optional

from dotenv import load_dotenv

from src.core.logger_setup import get_logger
from src.managers.artifacts.artifact_manager import ArtifactManager
from src.managers.artifacts.csv_artifact_manager import CSVArtifactManager
from src.managers.cache.cache_manager import CacheManager
from src.managers.cache.joblib_cache_manager import JoblibCacheManager

PROJECT_ROOT = Path(__file__).resolve().parents[2]

DEFAULT_SETTINGS: Dict[str, Any] = {
    "cache_backend": "joblib",
    "artifact_backend": "csv",
    "cache_enabled": True,
    "cache_dir": "cache",
    "logs_dir": "logs",
    "output_dir": "output",
    "enumeration_cap": 28,
    "enumeration_chunk_bits": 20,
    "n_jobs": 1,
    "energy_tolerance": 1e-9,
    "log_level_env_var": "LEVEL_ENGINE_LOG_LEVEL",
}


class ConfigManager:
    """
    Application settings and backend selection.

    Settings from config.json are merged over DEFAULT_SETTINGS; a missing
    file is written out with the defaults. Relative directories are resolved
    against the current working directory.
    """

    _instance = None
    _is_initialized = False

    def __new__(cls, config_file: Optional[str] = None):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __init__(self, config_file: Optional[str] = None):
        if self._is_initialized:
            return
        self.logger = get_logger()
        self.config_path = Path(config_file) if config_file else PROJECT_ROOT / "config.json"
        load_dotenv()
        self.config = self._read_settings()
        self._is_initialized = True

    @classmethod
    def reset(cls) -> None:
        """Drop the singleton so the next construction reloads settings."""
        cls._instance = None
        cls._is_initialized = False

    def _read_settings(self) -> Dict[str, Any]:
        settings = dict(DEFAULT_SETTINGS)
        if not self.config_path.exists():
            self._write_settings(settings)
            return settings
        try:
            stored = json.loads(self.config_path.read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as e:
            self.logger.warning(f"Ignoring unreadable settings file {self.config_path}: {e}")
            return settings
        if not isinstance(stored, dict):
            self.logger.warning(f"Ignoring settings file {self.config_path}: not a JSON object")
            return settings
        unknown = sorted(set(stored) - set(DEFAULT_SETTINGS))
        if unknown:
            self.logger.warning(f"Unknown settings ignored: {unknown}")
        settings.update({k: v for k, v in stored.items() if k in DEFAULT_SETTINGS})
        return settings

    def _write_settings(self, settings: Dict[str, Any]) -> bool:
        try:
            self.config_path.write_text(json.dumps(settings, indent=2) + "\n", encoding="utf-8")
        except OSError as e:
            self.logger.warning(f"Could not write settings file {self.config_path}: {e}")
            return False
        return True

    def get_cache_manager(self) -> CacheManager:
        """Oracle cache for the configured backend (joblib is the only one)."""
        backend = self.config["cache_backend"]
        if backend != "joblib":
            self.logger.warning(f"Unknown cache backend '{backend}', using joblib")
        return JoblibCacheManager(self.config["cache_dir"], enabled=self.is_caching_enabled())

    def get_artifact_manager(self, output_dir: Optional[str] = None) -> ArtifactManager:
        """Artifact writer rooted at output_dir (default: the configured output_dir)."""
        backend = self.config["artifact_backend"]
        if backend != "csv":
            self.logger.warning(f"Unknown artifact backend '{backend}', using csv")
        return CSVArtifactManager(output_dir or self.get_output_dir())

    def update_config(self, updates: Dict[str, Any], persist: bool = False) -> bool:
        self.config.update(updates)
        return self._write_settings(self.config) if persist else True

    def get_logs_dir(self) -> str:
        return self.config["logs_dir"]

    def get_output_dir(self) -> str:
        return self.config["output_dir"]

    def get_enumeration_cap(self) -> int:
        return int(self.config["enumeration_cap"])

    def get_chunk_bits(self) -> int:
        return int(self.config["enumeration_chunk_bits"])

    def get_n_jobs(self) -> int:
        return int(self.config["n_jobs"])

    def get_energy_tolerance(self) -> float:
        return float(self.config["energy_tolerance"])

    def get_log_level(self) -> Optional[str]:
        """Log level name read from the environment variable named by log_level_env_var."""
        return os.getenv(self.config["log_level_env_var"])

    def is_caching_enabled(self) -> bool:
        return bool(self.config["cache_enabled"])
