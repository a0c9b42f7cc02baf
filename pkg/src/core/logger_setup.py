# src/core/logger_setup.py
import logging
import threading
import time
import uuid
from pathlib import Path
from typing import Optional

LOG_FORMAT = '%(asctime)s | %(levelname)-8s | %(message)s'


class RunLogger:
    """Centralized per-run logging with thread-safe initialization"""
    _instance = None
    _lock = threading.Lock()

    def __new__(cls):
        with cls._lock:
            if cls._instance is None:
                cls._instance = super().__new__(cls)
                cls._instance._setup()
        return cls._instance

    def _setup(self):
        """Initialize base logger configuration"""
        self._local = threading.local()
        self._level = logging.DEBUG

    def set_level(self, level_name: Optional[str]) -> None:
        """Set the level used for run loggers, e.g. from LEVEL_ENGINE_LOG_LEVEL."""
        if not level_name:
            return
        level = logging.getLevelName(level_name.upper())
        if isinstance(level, int):
            self._level = level

    def start_run(self, scenario: str, run_id: str, log_dir: str = "logs") -> logging.Logger:
        """
        Initialize logging for a new run.

        Args:
            scenario: Scenario name, used as the log sub-directory
            run_id: Unique identifier of the run
            log_dir: Base directory for log files

        Returns:
            The logger bound to this run
        """
        scenario_dir = Path(log_dir) / scenario
        scenario_dir.mkdir(exist_ok=True, parents=True)

        # Single log file per run
        log_file = scenario_dir / f"{run_id}.log"

        logger = logging.getLogger(f"run.{scenario}.{run_id}")
        logger.setLevel(self._level)
        logger.propagate = False

        if not logger.handlers:
            file_handler = logging.FileHandler(log_file)
            file_handler.setFormatter(logging.Formatter(LOG_FORMAT))
            logger.addHandler(file_handler)

        # Store in thread-local storage
        self._local.logger = logger
        return logger

    def end_run(self) -> None:
        """Close the current run's handlers and fall back to the system logger."""
        logger = getattr(self._local, 'logger', None)
        if logger is None:
            return
        for handler in logger.handlers[:]:
            handler.close()
            logger.removeHandler(handler)
        del self._local.logger

    def get_logger(self) -> logging.Logger:
        """Get the current run's logger"""
        if not hasattr(self._local, 'logger'):
            # Fallback to system logger if no run initialized
            system_logger = logging.getLogger("system")
            if not system_logger.handlers:
                system_logger.addHandler(logging.StreamHandler())
                system_logger.setLevel(logging.WARNING)
            return system_logger
        return self._local.logger


# Global instance
run_logger = RunLogger()


def get_logger() -> logging.Logger:
    return run_logger.get_logger()


def new_run_id() -> str:
    """Unique run ID: timestamp + short UUID."""
    return f"{int(time.time())}_{uuid.uuid4().hex[:8]}"
