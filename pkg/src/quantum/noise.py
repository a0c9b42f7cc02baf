# src/quantum/noise.py
"""
Finite-shot sampling of parity measurements with independent readout bit-flips.

Randomness is drawn from a counter-based Philox generator keyed by
(seed, stream_index), so every grid point owns a reproducible stream regardless
of evaluation order.
"""
from dataclasses import dataclass
from typing import Iterable, Optional

import numpy as np

from src.core.errors import NoiseConfigError

PROBABILITY_TOLERANCE = 1e-9
_SEED_MASK = 2 ** 64 - 1


@dataclass(frozen=True)
class NoiseConfig:
    """shots = 0 selects exact expectations; otherwise `shots` samples per grid point."""
    shots: int = 0
    readout_flip_prob: float = 0.0
    seed: Optional[int] = None

    def __post_init__(self):
        if int(self.shots) != self.shots or self.shots < 0:
            raise NoiseConfigError(f"shots must be a non-negative integer, got {self.shots}")
        if not 0.0 <= self.readout_flip_prob < 0.5:
            raise NoiseConfigError(
                f"readout flip probability must lie in [0, 0.5), got {self.readout_flip_prob}")

    @property
    def is_exact(self) -> bool:
        return self.shots == 0


def stream_generator(seed: int, stream_index: int) -> np.random.Generator:
    """Independent Philox stream for (seed, stream_index)."""
    if stream_index < 0:
        raise NoiseConfigError(f"stream index must be non-negative, got {stream_index}")
    sequence = np.random.SeedSequence([int(seed) & _SEED_MASK, int(stream_index)])
    return np.random.Generator(np.random.Philox(sequence))


def attenuation_factor(k: int, readout_flip_prob: float) -> float:
    """Expected multiplicative shrink (1 - 2p)^k of a k-qubit parity under readout flips."""
    if k < 1:
        raise NoiseConfigError(f"need at least one measured qubit, got {k}")
    return (1.0 - 2.0 * readout_flip_prob) ** k


def sample_parity(probabilities: np.ndarray, parity_qubits: Iterable[int],
                  config: NoiseConfig, stream_index: int) -> float:
    """
    Monte Carlo estimate of a Z-parity from outcome probabilities.

    Draws `config.shots` basis outcomes, flips each measured parity bit
    independently with `config.readout_flip_prob`, and returns
    (count_even - count_odd) / shots.

    Raises:
        NoiseConfigError: shots == 0, missing seed, or unnormalised probabilities
    """
    if config.shots == 0:
        raise NoiseConfigError("shots = 0 requests the exact expectation, not sampling")
    if config.seed is None:
        raise NoiseConfigError("a seed is required for sampled runs")

    probabilities = np.asarray(probabilities, dtype=float)
    if np.any(probabilities < -PROBABILITY_TOLERANCE):
        raise NoiseConfigError("negative outcome probability")
    total = float(np.sum(probabilities))
    if abs(total - 1.0) > PROBABILITY_TOLERANCE:
        raise NoiseConfigError(f"outcome probabilities sum to {total:.12g}, not 1")

    qubits = np.array(sorted(set(parity_qubits)), dtype=np.int64)
    if qubits.size == 0:
        raise NoiseConfigError("parity over an empty qubit set")

    rng = stream_generator(config.seed, stream_index)
    outcomes = rng.choice(probabilities.size, size=config.shots,
                          p=np.clip(probabilities, 0.0, None) / total)
    bits = (outcomes[:, None] >> qubits[None, :]) & 1
    if config.readout_flip_prob > 0.0:
        flips = rng.random(bits.shape) < config.readout_flip_prob
        bits = bits ^ flips
    odd = int(np.count_nonzero(np.sum(bits, axis=1) & 1))
    return (config.shots - 2 * odd) / config.shots
