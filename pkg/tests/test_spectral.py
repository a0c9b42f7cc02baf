"""
Tests for the discrete spectrum, broadening kernels and peak reading.
"""
import time

import numpy as np
import pytest

from src.analysis.comparison import match_lines, omega_tolerance
from src.analysis.spectral import (
    Peak, PeakKind, PeakSet, Spectrum, continuum_kernel, default_omega_max, dft,
    dirichlet_kernel, find_peaks, level_bounds, omega_grid, peaks_to_levels, window_weights,
)
from src.core.errors import SpectralError
from src.core.timeseries import TimeGrid, TimeSeries
from src.models.ising import characteristic_series, spectrum
from src.models.presets import get_preset
from src.quantum.protocol import ProtocolRun, measure_series
from tests.helpers import random_anticommuting_instance

GRID = TimeGrid(np.pi / 12, 96)


def series_of(func, grid: TimeGrid = GRID) -> TimeSeries:
    return TimeSeries(grid, func(grid.times()))


def preset_spectrum(name: str) -> Spectrum:
    preset = get_preset(name)
    grid = TimeGrid(preset.tau, preset.big_n)
    series = characteristic_series(preset.hamiltonian, grid)
    omega_max = default_omega_max(grid.tau)
    return dft(series, -omega_max, omega_max, window="hann")


def height_at(peaks: PeakSet, omega: float) -> float:
    return min(peaks, key=lambda p: abs(p.omega - omega)).height


# =============================================================================
# DFT Tests
# =============================================================================

def test_constant_series():
    result = dft(series_of(np.ones_like), -1.0, 1.0)
    assert result.value_at(0.0) == pytest.approx(193.0)
    assert result.window == "none"


def test_cosine_series():
    result = dft(series_of(lambda t: np.cos(2 * t)), -10.0, 10.0)
    assert result.value_at(2.0).real == pytest.approx(97.0)
    assert result.value_at(-2.0).real == pytest.approx(97.0)


def test_chain_peak_ratio_without_window():
    result = dft(series_of(lambda t: 0.5 + 0.5 * np.cos(4 * t)), -6.0, 6.0)
    assert result.value_at(0.0).real == pytest.approx(97.0)
    assert result.value_at(4.0).real == pytest.approx(49.0)
    assert abs(result.value_at(0.0).real / result.value_at(4.0).real - 2.0) <= 0.1


def test_normalized_constant_series():
    assert dft(series_of(np.ones_like), 0.0, 0.0, normalize=True).value_at(0.0) == pytest.approx(1.0)
    hann = dft(series_of(np.ones_like), 0.0, 0.0, normalize=True, window="hann")
    assert hann.value_at(0.0) == pytest.approx(1.0)
    assert hann.normalized and hann.window == "hann"


def test_dft_matches_dirichlet_kernel():
    lines = [(0.0, 0.3), (3.0, 0.35), (-3.0, 0.35)]
    result = dft(series_of(lambda t: 0.3 + 0.7 * np.cos(3 * t)), -8.0, 8.0, omega_step=0.05)
    expected = dirichlet_kernel(lines, GRID.tau, GRID.big_n, result.omegas)
    assert np.allclose(result.real, expected, atol=1e-9)
    assert np.allclose(result.imag, 0.0, atol=1e-9)


def test_dft_is_linear(rng):
    a = rng.normal(size=GRID.size)
    b = rng.normal(size=GRID.size)
    combined = dft(TimeSeries(GRID, 2.0 * a - 0.5 * b), -3.0, 3.0, omega_step=0.1)
    separate = (2.0 * dft(TimeSeries(GRID, a), -3.0, 3.0, omega_step=0.1).values
                - 0.5 * dft(TimeSeries(GRID, b), -3.0, 3.0, omega_step=0.1).values)
    assert np.allclose(combined.values, separate)


def test_real_series_has_hermitian_spectrum(rng):
    result = dft(TimeSeries(GRID, rng.normal(size=GRID.size)), -5.0, 5.0)
    assert np.array_equal(result.omegas, -result.omegas[::-1])
    assert np.allclose(result.values[::-1], np.conj(result.values))


def test_peaks_invariant_under_scaling():
    series = series_of(lambda t: 0.75 + 0.25 * np.cos(8 * t))
    base = find_peaks(dft(series, -11.0, 11.0, window="hann"))
    for factor in (0.01, 3.0, 250.0):
        scaled = TimeSeries(GRID, factor * series.values)
        assert find_peaks(dft(scaled, -11.0, 11.0, window="hann")).omegas == base.omegas


def test_main_lobe_follows_resolution_law():
    for big_n in (24, 48, 96):
        grid = TimeGrid(np.pi / 12, big_n)
        result = dft(series_of(np.ones_like, grid), 0.0, 1.0, omega_step=0.001)
        first_zero = result.omegas[int(np.argmax(result.real <= 0.0))]
        assert abs(first_zero - 2.0 * result.resolution) <= 0.001


def test_default_omega_max():
    assert default_omega_max(np.pi / 12) == pytest.approx(11.99)
    assert default_omega_max(np.pi / 24) == pytest.approx(23.99)
    assert default_omega_max(np.pi / 12, user_max=5.0) == pytest.approx(5.0)
    assert default_omega_max(np.pi / 12, omega_step=0.5) == pytest.approx(11.5)


def test_omega_grid_is_exact_on_multiples_of_the_step():
    omegas = omega_grid(-10.0, 10.0, 0.01)
    assert len(omegas) == 2001
    assert 2.0 in omegas and 0.0 in omegas


# =============================================================================
# Kernel Tests
# =============================================================================

def test_continuum_kernel_peak_height():
    assert continuum_kernel([(1.0, 2.0)], 5.0, 1.0) == pytest.approx(10.0 / np.pi)
    assert continuum_kernel([(1.0, 2.0)], 5.0, 1.0 + np.pi / 5.0) == pytest.approx(0.0, abs=1e-12)


def test_continuum_kernel_sums_lines():
    omegas = np.linspace(-3.0, 3.0, 31)
    lines = [(-1.0, 0.5), (2.0, 0.25)]
    total = continuum_kernel(lines, 4.0, omegas)
    parts = sum(continuum_kernel([line], 4.0, omegas) for line in lines)
    assert np.allclose(total, parts)


def test_dirichlet_kernel_singular_point():
    assert dirichlet_kernel([(0.0, 1.0)], GRID.tau, GRID.big_n, 0.0) == pytest.approx(193.0)
    # aliased copy at 2 pi / tau
    assert dirichlet_kernel([(0.0, 1.0)], GRID.tau, GRID.big_n, 24.0) == pytest.approx(193.0)


# =============================================================================
# Peak Tests
# =============================================================================

def test_peaks_to_levels():
    peaks = PeakSet([Peak(-4.0, 10.0), Peak(0.0, 20.0), Peak(4.0, 10.0)])
    assert peaks_to_levels(peaks) == [(-2.0, 10.0), (0.0, 20.0), (2.0, 10.0)]
    assert peaks_to_levels(peaks, PeakKind.TRANSITION) == [(-4.0, 10.0), (0.0, 20.0), (4.0, 10.0)]
    assert level_bounds(peaks_to_levels(peaks)) == {"min": -2.0, "max": 2.0}
    assert level_bounds([]) == {"min": None, "max": None}


def test_equal_heights_keep_lower_omega():
    omegas = np.round(np.arange(11) * 0.1, 12)
    values = np.zeros(11)
    values[[3, 5]] = 1.0
    peaks = find_peaks(Spectrum(omegas, values, 0.1, 10), min_separation=0.3)
    assert peaks.omegas == [0.3]


def test_merge_keeps_higher_peak():
    omegas = np.round(np.arange(11) * 0.1, 12)
    values = np.zeros(11)
    values[3], values[5] = 0.8, 1.0
    assert find_peaks(Spectrum(omegas, values, 0.1, 10), min_separation=0.3).omegas == [0.5]
    assert find_peaks(Spectrum(omegas, values, 0.1, 10), min_separation=0.1).omegas == [0.3, 0.5]


def test_non_positive_spectrum_has_no_peaks():
    omegas = np.arange(5) * 0.1
    assert len(find_peaks(Spectrum(omegas, -np.ones(5), 0.1, 10))) == 0


@pytest.mark.parametrize("name, expected", [
    ("spin_field", [-2.0, 2.0]),
    ("chain3", [-4.0, 0.0, 4.0]),
    ("square4_iso", [-8.0, 0.0, 8.0]),
    ("square4_aniso", [-4.0, 4.0]),
    ("lattice6", [-14.0, -6.0, -2.0, 2.0, 6.0, 14.0]),
])
def test_preset_peak_locations(name, expected):
    peaks = find_peaks(preset_spectrum(name))
    assert len(peaks) == len(expected)
    for omega, target in zip(peaks.omegas, expected):
        assert abs(omega - target) <= 0.05


@pytest.mark.parametrize("name, expected, budget", [
    ("spin_field", [-2.0, 2.0], 1.0),
    ("chain3", [-4.0, 0.0, 4.0], 2.0),
    ("lattice6", [-14.0, -6.0, -2.0, 2.0, 6.0, 14.0], 10.0),
])
def test_simulated_presets_within_time_budget(name, expected, budget):
    preset = get_preset(name)
    grid = TimeGrid(preset.tau, preset.big_n)
    started = time.perf_counter()
    series = measure_series(ProtocolRun(preset.hamiltonian, preset.observable, grid))
    omega_max = default_omega_max(grid.tau)
    peaks = find_peaks(dft(series, -omega_max, omega_max, window="hann"))
    elapsed = time.perf_counter() - started
    assert elapsed < budget, f"{name} took {elapsed:.2f}s"
    assert len(peaks) == len(expected)
    for omega, target in zip(peaks.omegas, expected):
        assert abs(omega - target) <= 0.05


def test_peaks_on_grid_edges():
    omegas = np.round(np.arange(5) * 0.1, 12)
    peaks = find_peaks(Spectrum(omegas, np.array([5.0, 1.0, 0.0, 1.0, 2.0]), 0.1, 10),
                       min_separation=0.1)
    assert peaks.omegas == [0.0, 0.4]
    assert [p.height for p in peaks] == [5.0, 2.0]


def test_line_on_omega_max_is_detected():
    preset = get_preset("square4_iso")
    grid = TimeGrid(preset.tau, preset.big_n)
    omega_max = default_omega_max(grid.tau, 0.01, user_max=8.0)
    assert omega_max == 8.0
    result = dft(characteristic_series(preset.hamiltonian, grid), -omega_max, omega_max, window="hann")
    assert find_peaks(result).omegas == [-8.0, 0.0, 8.0]


def test_preset_peak_ratios():
    chain = find_peaks(preset_spectrum("chain3"))
    assert abs(height_at(chain, 0.0) / height_at(chain, 4.0) - 2.0) <= 0.1

    iso = find_peaks(preset_spectrum("square4_iso"))
    assert abs(height_at(iso, 0.0) / height_at(iso, 8.0) - 6.0) <= 0.3

    aniso = preset_spectrum("square4_aniso")
    assert aniso.value_at(0.0).real < 0.1 * aniso.value_at(4.0).real

    lattice = find_peaks(preset_spectrum("lattice6"))
    heights = np.array([height_at(lattice, w) for w in (2.0, 6.0, 14.0)])
    for measured, weight in zip(heights / heights[0], (1.0, 12.0 / 18.0, 2.0 / 18.0)):
        assert abs(measured - weight) <= 0.15 * weight


def test_detected_levels_match_oracle(rng):
    # |E| stays below 10 for five spins, inside the pi/tau band
    grid = TimeGrid(np.pi / 24, 192)
    omega_max = default_omega_max(grid.tau)
    tolerance = omega_tolerance(0.01, grid.tau, grid.big_n) / 2.0
    for _ in range(30):
        h, _ = random_anticommuting_instance(rng, int(rng.integers(1, 6)))
        histogram = spectrum(h)
        result = dft(characteristic_series(h, grid, histogram=histogram),
                     -omega_max, omega_max, window="hann")
        levels = peaks_to_levels(find_peaks(result, threshold_fraction=0.05))
        oracle = [(row["energy"], row["weight"]) for row in histogram.to_rows()]
        match = match_lines(levels, oracle, tolerance, threshold_fraction=0.1)
        assert match.passed, (h.describe(), match)


# =============================================================================
# Error Tests
# =============================================================================

@pytest.mark.parametrize("fraction", [0.0, 1.0, -0.2])
def test_threshold_outside_unit_interval(fraction):
    with pytest.raises(SpectralError):
        find_peaks(dft(series_of(np.ones_like), -1.0, 1.0), threshold_fraction=fraction)


def test_empty_spectrum():
    with pytest.raises(SpectralError):
        find_peaks(Spectrum([], [], 0.1, 10))


def test_invalid_frequency_grids():
    with pytest.raises(SpectralError):
        omega_grid(1.0, -1.0, 0.01)
    with pytest.raises(SpectralError):
        omega_grid(-1.0, 1.0, 0.0)


def test_unknown_window():
    with pytest.raises(SpectralError):
        window_weights("no-such-window", 11)


def test_continuum_kernel_needs_positive_time():
    with pytest.raises(SpectralError):
        continuum_kernel([(0.0, 1.0)], 0.0, 0.0)
