# tests/conftest.py
import numpy as np
import pytest

from src.config.config import ConfigManager
from src.core.logger_setup import run_logger


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def workspace(tmp_path, monkeypatch):
    """Run in an empty directory with fresh application settings."""
    monkeypatch.chdir(tmp_path)
    ConfigManager.reset()
    ConfigManager(config_file=str(tmp_path / "config.json"))
    yield tmp_path
    run_logger.end_run()
    ConfigManager.reset()
