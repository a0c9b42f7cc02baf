# src/managers/cache/cache_manager.py
from abc import ABC, abstractmethod
from typing import Any, Callable, Tuple


class CacheManager(ABC):
    """
    Store for exact enumeration results (level and transition histograms)
    so that repeated oracle and compare runs skip the 2^n sweep.

    Keys are plain strings built from a model's `cache_key()` plus whatever
    else changes the result (tolerance, cap, observable).
    """

    @abstractmethod
    def get(self, key: str) -> Tuple[bool, Any]:
        """Return (hit, value); value is None on a miss."""

    @abstractmethod
    def set(self, key: str, value: Any) -> bool:
        """Store value under key. Returns False when nothing was written."""

    @abstractmethod
    def invalidate(self, key: str) -> bool:
        """Drop one entry. Returns True if an entry was removed."""

    @abstractmethod
    def clear(self) -> bool:
        """Drop every entry."""

    @abstractmethod
    def cached_call(self, cache_key: str, func: Callable, *args, **kwargs) -> Any:
        """
        Stored value for cache_key, or func(*args, **kwargs) computed and
        stored on a miss.
        """
