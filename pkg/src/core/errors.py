# src/core/errors.py


class LevelEngineError(Exception):
    """
    Base class for all errors raised by the level engine.
    Each error carries the process exit code the CLI reports for it.
    """

    exit_code = 1


class ConfigError(LevelEngineError, ValueError):
    """Scenario or application configuration could not be parsed or validated."""


class ArtifactError(LevelEngineError):
    """A required artifact is missing or unreadable."""


class InvalidGateError(LevelEngineError, ValueError):
    """Gate refers to a qubit outside the register, or CNOT control equals target."""


class DimensionMismatchError(LevelEngineError, ValueError):
    """Circuit and state have a different number of qubits."""


class InvalidStateError(LevelEngineError, ValueError):
    """Amplitude vector has the wrong length or is not normalised."""


class HamiltonianError(LevelEngineError, ValueError):
    """Ising Hamiltonian or observable definition is inconsistent."""


class NoiseConfigError(LevelEngineError, ValueError):
    """Noise configuration or sampler input is invalid."""


class SpectralError(LevelEngineError, ValueError):
    """Invalid frequency grid or spectral parameters."""


class AnticommutationError(LevelEngineError):
    """Level extraction requested with an observable that does not anticommute with H."""

    exit_code = 2


class ResourceCapError(LevelEngineError):
    """Exhaustive enumeration would exceed the configured spin cap."""

    exit_code = 3
