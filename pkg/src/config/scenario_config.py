# src/config/scenario_config.py
"""
Scenario configuration: a JSON document validated by pydantic, or a bare preset
name. Every key has a default except `model`.

Example:
    {
      "name": "chain3_noisy",
      "model": "chain3",
      "noise": {"shots": 8192, "readout_flip_prob": 0.02, "seed": 7},
      "spectral": {"window": "hann"}
    }

An explicit model stores each unordered coupling once with its full J_ij:
    "model": {"num_spins": 3, "couplings": [[0, 1, 1.0], [1, 2, 1.0]], "fields": []}
"""
import json
import os
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, List, Literal, Optional, Tuple, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, ValidationError

from src.core.errors import AnticommutationError, ConfigError, LevelEngineError
from src.core.logger_setup import get_logger
from src.core.timeseries import TimeGrid
from src.models.ising import IsingHamiltonian, XStringObservable, find_anticommuting_observable
from src.models.presets import PRESETS, get_preset
from src.quantum.noise import NoiseConfig

DEFAULT_TAU = np.pi / 12
DEFAULT_BIG_N = 96


class ModelSpec(BaseModel):
    model_config = ConfigDict(extra="forbid")

    num_spins: int = Field(ge=1)
    couplings: List[Tuple[int, int, float]] = Field(default_factory=list)
    fields: List[Tuple[int, float]] = Field(default_factory=list)


class GridSpec(BaseModel):
    model_config = ConfigDict(extra="forbid")

    tau: float = Field(gt=0)
    big_n: int = Field(ge=1)


class NoiseSpec(BaseModel):
    model_config = ConfigDict(extra="forbid")

    shots: int = Field(default=0, ge=0)
    readout_flip_prob: float = Field(default=0.0, ge=0.0, lt=0.5)
    seed: Optional[int] = None


class SpectralSettings(BaseModel):
    model_config = ConfigDict(extra="forbid")

    omega_step: float = Field(default=0.01, gt=0)
    omega_max: Optional[float] = Field(default=None, gt=0)
    threshold_fraction: float = Field(default=0.1, gt=0, lt=1)
    min_separation: Optional[float] = Field(default=None, ge=0)
    # "none" gives the raw sum; "hann" keeps sidelobes under the default threshold
    window: str = "hann"
    normalize: bool = False


class ScenarioConfig(BaseModel):
    model_config = ConfigDict(extra="forbid")

    model: Union[str, ModelSpec]
    name: Optional[str] = None
    observable: Optional[List[int]] = None
    grid: Optional[GridSpec] = None
    noise: NoiseSpec = Field(default_factory=NoiseSpec)
    spectral: SpectralSettings = Field(default_factory=SpectralSettings)
    mode: Literal["level", "transition"] = "level"
    claimed_levels: Optional[List[float]] = None
    enumeration_cap: Optional[int] = Field(default=None, ge=1)
    output_dir: Optional[str] = None
    plot: bool = True


@dataclass
class Scenario:
    """A ScenarioConfig with presets expanded into concrete objects."""
    name: str
    hamiltonian: IsingHamiltonian
    observable: XStringObservable
    grid: TimeGrid
    noise: NoiseConfig
    spectral: SpectralSettings
    mode: str
    claimed_levels: List[float]
    enumeration_cap: Optional[int]
    output_dir: Optional[str]
    plot: bool


def _validate(data: Dict[str, Any], origin: str) -> ScenarioConfig:
    try:
        return ScenarioConfig.model_validate(data)
    except ValidationError as e:
        raise ConfigError(f"Invalid scenario config {origin}: {e}") from e


def load_scenario(source: str) -> ScenarioConfig:
    """
    Load a scenario from a JSON file path or a preset name.

    Raises:
        ConfigError: unreadable file, invalid JSON, validation failure or unknown preset
    """
    if not os.path.exists(source) and source in PRESETS:
        return ScenarioConfig(model=source, name=source)

    path = Path(source)
    if not path.is_file():
        raise ConfigError(
            f"'{source}' is neither a config file nor a preset ({', '.join(PRESETS)})")
    try:
        with open(path, 'r') as f:
            data = json.load(f)
    except (OSError, json.JSONDecodeError) as e:
        raise ConfigError(f"Cannot read scenario config {path}: {e}") from e
    if not isinstance(data, dict):
        raise ConfigError(f"Scenario config {path} must be a JSON object")

    config = _validate(data, str(path))
    if config.name is None:
        config = config.model_copy(update={"name": path.stem})
    return config


def apply_overrides(config: ScenarioConfig, out: Optional[str] = None, seed: Optional[int] = None,
                    shots: Optional[int] = None, readout_flip: Optional[float] = None,
                    mode: Optional[str] = None) -> ScenarioConfig:
    """Return a re-validated copy with command-line values replacing the loaded ones."""
    data = config.model_dump()
    noise = data["noise"]
    if seed is not None:
        noise["seed"] = seed
    if shots is not None:
        noise["shots"] = shots
    if readout_flip is not None:
        noise["readout_flip_prob"] = readout_flip
    if mode is not None:
        data["mode"] = mode
    if out is not None:
        data["output_dir"] = out
    return _validate(data, "after command-line overrides")


def resolve_scenario(config: ScenarioConfig) -> Scenario:
    """
    Expand presets and defaults.

    An explicit model without an observable gets an anticommuting X-string
    found from its coupling graph.

    Raises:
        ConfigError: inconsistent model or observable
        AnticommutationError: no observable given and none anticommutes with H
    """
    logger = get_logger()
    preset = get_preset(config.model) if isinstance(config.model, str) else None
    name = config.name or (preset.name if preset else "custom")

    try:
        if preset is not None:
            hamiltonian = preset.hamiltonian
        else:
            hamiltonian = IsingHamiltonian(
                config.model.num_spins,
                tuple(config.model.couplings),
                tuple(config.model.fields))

        if config.observable is not None:
            observable = XStringObservable(frozenset(config.observable))
            observable.validate_for(hamiltonian)
        elif preset is not None:
            observable = preset.observable
        else:
            observable = find_anticommuting_observable(hamiltonian)
            if observable is None:
                raise AnticommutationError(
                    f"no X-string anticommutes with H = {hamiltonian.describe()}; "
                    f"give an observable and use mode 'transition'")
            logger.info(f"Using anticommuting observable {observable.label}")

        if config.grid is not None:
            grid = TimeGrid(config.grid.tau, config.grid.big_n)
        elif preset is not None:
            grid = TimeGrid(preset.tau, preset.big_n)
        else:
            grid = TimeGrid(DEFAULT_TAU, DEFAULT_BIG_N)

        noise = NoiseConfig(config.noise.shots, config.noise.readout_flip_prob, config.noise.seed)
    except AnticommutationError:
        raise
    except LevelEngineError as e:
        raise ConfigError(f"Scenario '{name}': {e}") from e

    if config.claimed_levels is not None:
        claimed = list(config.claimed_levels)
    else:
        claimed = list(preset.claimed_levels) if preset else []

    return Scenario(
        name=name,
        hamiltonian=hamiltonian,
        observable=observable,
        grid=grid,
        noise=noise,
        spectral=config.spectral,
        mode=config.mode,
        claimed_levels=claimed,
        enumeration_cap=config.enumeration_cap,
        output_dir=config.output_dir,
        plot=config.plot,
    )
