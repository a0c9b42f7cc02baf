"""
Tests for finite-shot parity sampling and readout bit-flips.
"""
import numpy as np
import pytest

from src.analysis.spectral import default_omega_max, dft, find_peaks
from src.core.errors import NoiseConfigError
from src.models.presets import get_preset
from src.quantum.noise import NoiseConfig, attenuation_factor, sample_parity, stream_generator
from src.quantum.protocol import ProtocolRun, TimeGrid, measure_series

BELL = np.array([0.5, 0.0, 0.0, 0.5])
BIASED = np.array([0.7, 0.3])  # <Z> = 0.4


def sampled(shots: int, p: float = 0.0, seed: int = 11) -> NoiseConfig:
    return NoiseConfig(shots=shots, readout_flip_prob=p, seed=seed)


# =============================================================================
# Sampling Tests
# =============================================================================

def test_deterministic_outcomes():
    assert sample_parity(np.array([1.0, 0.0]), [0], sampled(100), 0) == 1.0
    assert sample_parity(np.array([0.0, 1.0]), [0], sampled(100), 0) == -1.0
    assert sample_parity(BELL, [0, 1], sampled(1000), 0) == 1.0


def test_parity_ignores_unmeasured_qubits():
    # qubit 1 is random, qubit 0 is always 0
    probabilities = np.array([0.5, 0.0, 0.5, 0.0])
    assert sample_parity(probabilities, [0], sampled(500), 3) == 1.0


def test_same_stream_same_estimate():
    first = sample_parity(BIASED, [0], sampled(1000, 0.05), 4)
    second = sample_parity(BIASED, [0], sampled(1000, 0.05), 4)
    assert first == second


def test_streams_are_independent():
    estimates = {sample_parity(BIASED, [0], sampled(1000), index) for index in range(10)}
    assert len(estimates) > 1


def test_stream_generator_is_counter_based():
    a = stream_generator(5, 2).random(4)
    b = stream_generator(5, 2).random(4)
    c = stream_generator(5, 3).random(4)
    assert np.array_equal(a, b)
    assert not np.array_equal(a, c)


def test_large_seeds_are_accepted():
    stream_generator(-1, 0)
    stream_generator(2 ** 70, 0)


def test_sampling_is_unbiased():
    estimates = [sample_parity(BIASED, [0], sampled(1000, seed=99), index) for index in range(200)]
    assert abs(np.mean(estimates) - 0.4) <= 0.01


@pytest.mark.parametrize("probabilities, qubits, exact, p", [
    (BIASED, [0], 0.4, 0.1),
    (BELL, [0, 1], 1.0, 0.1),
    (BELL, [0, 1], 1.0, 0.25),
])
def test_readout_flips_attenuate_parity(probabilities, qubits, exact, p):
    estimate = sample_parity(probabilities, qubits, sampled(100_000, p), 0)
    expected = exact * attenuation_factor(len(qubits), p)
    assert abs(estimate - expected) <= 0.015


def test_attenuation_factor():
    assert attenuation_factor(1, 0.0) == 1.0
    assert attenuation_factor(2, 0.1) == pytest.approx(0.64)
    assert attenuation_factor(3, 0.25) == pytest.approx(0.125)


def test_noisy_chain_keeps_its_levels():
    preset = get_preset("chain3")
    grid = TimeGrid(preset.tau, preset.big_n)
    noise = NoiseConfig(shots=8192, readout_flip_prob=0.02, seed=20240611)
    series = measure_series(ProtocolRun(preset.hamiltonian, preset.observable, grid, noise=noise))
    omega_max = default_omega_max(grid.tau)
    peaks = find_peaks(dft(series, -omega_max, omega_max, window="hann"))
    assert len(peaks) == 3
    for omega, target in zip(peaks.omegas, (-4.0, 0.0, 4.0)):
        assert abs(omega - target) <= 0.15


# =============================================================================
# Error Tests
# =============================================================================

@pytest.mark.parametrize("kwargs", [
    dict(shots=-1),
    dict(shots=2.5),
    dict(readout_flip_prob=0.5),
    dict(readout_flip_prob=-0.01),
])
def test_invalid_noise_config(kwargs):
    with pytest.raises(NoiseConfigError):
        NoiseConfig(**kwargs)


def test_sampling_needs_shots_and_seed():
    with pytest.raises(NoiseConfigError):
        sample_parity(BIASED, [0], NoiseConfig(), 0)
    with pytest.raises(NoiseConfigError):
        sample_parity(BIASED, [0], NoiseConfig(shots=10), 0)


@pytest.mark.parametrize("probabilities", [
    np.array([0.6, 0.6]),
    np.array([1.2, -0.2]),
])
def test_invalid_probabilities(probabilities):
    with pytest.raises(NoiseConfigError):
        sample_parity(probabilities, [0], sampled(10), 0)


def test_invalid_counts():
    with pytest.raises(NoiseConfigError):
        attenuation_factor(0, 0.1)
    with pytest.raises(NoiseConfigError):
        stream_generator(1, -1)
    with pytest.raises(NoiseConfigError):
        sample_parity(BIASED, [], sampled(10), 0)
