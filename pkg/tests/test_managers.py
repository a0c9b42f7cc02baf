"""
Tests for the settings, scenario loading, artifact and cache layers.
"""
import json

import numpy as np
import pytest

from src.config.config import DEFAULT_SETTINGS, ConfigManager
from src.config.scenario_config import (
    DEFAULT_BIG_N, DEFAULT_TAU, ScenarioConfig, apply_overrides, load_scenario, resolve_scenario,
)
from src.core.errors import ArtifactError, ConfigError
from src.managers.artifacts.csv_artifact_manager import CSVArtifactManager
from src.managers.cache.joblib_cache_manager import JoblibCacheManager
from src.models.ising import spectrum
from src.models.presets import get_preset


# =============================================================================
# Settings Tests
# =============================================================================

def test_missing_settings_file_is_created(workspace):
    settings = ConfigManager()
    assert (workspace / "config.json").is_file()
    assert settings.get_enumeration_cap() == 28
    assert settings.get_output_dir() == "output"
    assert settings.is_caching_enabled()


def test_settings_file_overrides_defaults(tmp_path):
    path = tmp_path / "settings.json"
    path.write_text(json.dumps({"enumeration_cap": 12, "n_jobs": 2}))
    ConfigManager.reset()
    try:
        settings = ConfigManager(config_file=str(path))
        assert settings.get_enumeration_cap() == 12
        assert settings.get_n_jobs() == 2
        assert settings.get_chunk_bits() == 20
    finally:
        ConfigManager.reset()


def test_settings_keys(workspace, tmp_path_factory):
    written = json.loads((workspace / "config.json").read_text())
    assert set(written) == set(DEFAULT_SETTINGS) == {
        "cache_backend", "artifact_backend", "cache_enabled", "cache_dir", "logs_dir",
        "output_dir", "enumeration_cap", "enumeration_chunk_bits", "n_jobs",
        "energy_tolerance", "log_level_env_var",
    }

    path = tmp_path_factory.mktemp("settings") / "config.json"
    path.write_text(json.dumps({"environment": "production", "n_jobs": 3}))
    ConfigManager.reset()
    settings = ConfigManager(config_file=str(path))
    assert settings.get_n_jobs() == 3
    assert "environment" not in settings.config


def test_log_level_from_environment(workspace, monkeypatch):
    monkeypatch.setenv("LEVEL_ENGINE_LOG_LEVEL", "info")
    assert ConfigManager().get_log_level() == "info"


def test_update_config_persists(workspace):
    settings = ConfigManager()
    assert settings.update_config({"output_dir": "results"}, persist=True)
    assert json.loads((workspace / "config.json").read_text())["output_dir"] == "results"


# =============================================================================
# Scenario Config Tests
# =============================================================================

def test_preset_name_resolves():
    scenario = resolve_scenario(load_scenario("lattice6"))
    assert scenario.name == "lattice6"
    assert scenario.grid.big_n == 192
    assert scenario.claimed_levels == [-7.0, -3.0, 0.0, 3.0, 7.0]
    assert scenario.spectral.window == "hann"


def test_file_name_becomes_scenario_name(tmp_path):
    path = tmp_path / "my_chain.json"
    path.write_text(json.dumps({"model": {"num_spins": 2, "couplings": [[0, 1, 1.0]]}}))
    scenario = resolve_scenario(load_scenario(str(path)))
    assert scenario.name == "my_chain"
    assert scenario.grid.tau == pytest.approx(DEFAULT_TAU)
    assert scenario.grid.big_n == DEFAULT_BIG_N
    assert scenario.observable.qubits == frozenset({0})


def test_overrides_replace_loaded_values():
    config = apply_overrides(load_scenario("chain3"), out="elsewhere", seed=3, shots=64,
                             readout_flip=0.01, mode="transition")
    assert config.output_dir == "elsewhere"
    assert (config.noise.seed, config.noise.shots, config.noise.readout_flip_prob) == (3, 64, 0.01)
    assert config.mode == "transition"
    scenario = resolve_scenario(config)
    assert scenario.noise.seed == 3


@pytest.mark.parametrize("payload", [
    {"model": "no_such_preset"},
    {"model": {"num_spins": 2, "couplings": [[0, 5, 1.0]]}},
    {"model": "chain3", "observable": [7]},
    {"model": {"num_spins": 2, "fields": [[0, 1.0], [0, 2.0]]}},
])
def test_inconsistent_scenarios(payload):
    with pytest.raises(ConfigError):
        resolve_scenario(ScenarioConfig.model_validate(payload))


@pytest.mark.parametrize("text", ["[1, 2]", "{\"name\": \"missing model\"}", "{oops"])
def test_invalid_files(tmp_path, text):
    path = tmp_path / "bad.json"
    path.write_text(text)
    with pytest.raises(ConfigError):
        load_scenario(str(path))


# =============================================================================
# Artifact Tests
# =============================================================================

def test_table_round_trip(tmp_path):
    manager = CSVArtifactManager(str(tmp_path / "out"))
    rows = [{"omega": 0.5, "height": 1.25}, {"omega": -0.5, "height": 1.0 / 3.0}]
    path = manager.write_table("peaks.csv", rows, ["omega", "height"])
    assert path.read_text() == "omega,height\n0.5,1.25\n-0.5,0.3333333333\n"
    assert list(manager.read_table("peaks.csv")["omega"]) == [0.5, -0.5]


def test_empty_table_keeps_header(tmp_path):
    manager = CSVArtifactManager(str(tmp_path))
    manager.write_table("levels.csv", [], ["energy", "height"])
    assert (tmp_path / "levels.csv").read_text() == "energy,height\n"
    assert manager.read_table("levels.csv").empty


def test_json_handles_numpy_values(tmp_path):
    manager = CSVArtifactManager(str(tmp_path))
    manager.write_json("report.json", {"count": np.int64(3), "value": np.float64(0.25), "none": float("nan")})
    assert manager.read_json("report.json") == {"count": 3, "value": 0.25, "none": None}


def test_no_temporary_files_left(tmp_path):
    manager = CSVArtifactManager(str(tmp_path))
    manager.write_text("spectrum.svg", "<svg/>")
    assert [p.name for p in tmp_path.iterdir()] == ["spectrum.svg"]


def test_missing_artifacts(tmp_path):
    manager = CSVArtifactManager(str(tmp_path))
    assert not manager.exists("levels.csv")
    with pytest.raises(ArtifactError):
        manager.read_table("levels.csv")
    with pytest.raises(ArtifactError):
        manager.read_json("run_summary.json")
    (tmp_path / "run_summary.json").write_text("{")
    with pytest.raises(ArtifactError):
        manager.read_json("run_summary.json")


# =============================================================================
# Cache Tests
# =============================================================================

def test_cached_call_computes_once(tmp_path):
    cache = JoblibCacheManager(str(tmp_path / "cache"))
    calls = []

    def compute(x):
        calls.append(x)
        return x * 2

    assert cache.cached_call("double|4", compute, 4) == 8
    assert cache.cached_call("double|4", compute, 4) == 8
    assert calls == [4]
    assert cache.invalidate("double|4")
    assert cache.cached_call("double|4", compute, 4) == 8
    assert calls == [4, 4]


def test_cached_spectrum_survives_a_new_manager(tmp_path):
    h = get_preset("lattice6").hamiltonian
    key = f"spectrum|{h.cache_key()}"
    JoblibCacheManager(str(tmp_path)).cached_call(key, spectrum, h)
    hit, cached = JoblibCacheManager(str(tmp_path)).get(key)
    assert hit
    assert cached.entries == spectrum(h).entries


def test_disabled_cache_always_computes(tmp_path):
    cache = JoblibCacheManager(str(tmp_path / "never"), enabled=False)
    assert cache.cached_call("k", lambda: 1) == 1
    assert cache.get("k") == (False, None)
    assert not (tmp_path / "never").exists()


def test_clear(tmp_path):
    cache = JoblibCacheManager(str(tmp_path))
    cache.set("a", 1)
    cache.set("b", 2)
    assert cache.clear()
    assert cache.get("a") == (False, None)
