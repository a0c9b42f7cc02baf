# src/analysis/spectral.py
"""
Discrete spectrum A(omega) = sum_n A(t_n) exp(i omega n tau) of a sampled
series, its finite-time broadening models, and peak reading.

Re A(omega) is the detection signal; Im A is kept for diagnostics.
"""
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
import scipy.signal

from src.core.data_types import PeakRow, SpectrumRow
from src.core.errors import SpectralError
from src.core.logger_setup import get_logger
from src.core.timeseries import TimeSeries
from src.utils.utils import timing_decorator

DEFAULT_OMEGA_STEP = 0.01
DEFAULT_THRESHOLD_FRACTION = 0.1
NO_WINDOW = "none"

Line = Tuple[float, float]


class PeakKind(str, Enum):
    LEVEL = "level"
    TRANSITION = "transition"


@dataclass
class Spectrum:
    omegas: np.ndarray
    values: np.ndarray
    tau: float
    big_n: int
    normalized: bool = False
    window: str = NO_WINDOW

    def __post_init__(self):
        self.omegas = np.asarray(self.omegas, dtype=float)
        self.values = np.asarray(self.values, dtype=complex)
        if self.omegas.shape != self.values.shape:
            raise SpectralError(
                f"{len(self.omegas)} frequencies but {len(self.values)} spectrum values")

    @property
    def real(self) -> np.ndarray:
        return self.values.real

    @property
    def imag(self) -> np.ndarray:
        return self.values.imag

    @property
    def omega_step(self) -> float:
        return float(self.omegas[1] - self.omegas[0]) if len(self.omegas) > 1 else 0.0

    @property
    def resolution(self) -> float:
        """Half-width pi / ((2N+1) tau) of the unwindowed main lobe."""
        return float(np.pi / ((2 * self.big_n + 1) * self.tau))

    def scaled(self, factor: float) -> "Spectrum":
        return Spectrum(self.omegas.copy(), self.values * factor, self.tau, self.big_n,
                        self.normalized, self.window)

    def value_at(self, omega: float) -> complex:
        """Value at the grid frequency nearest to omega."""
        return complex(self.values[int(np.argmin(np.abs(self.omegas - omega)))])

    def to_rows(self) -> List[SpectrumRow]:
        return [
            SpectrumRow(omega=float(w), re=float(v.real), im=float(v.imag))
            for w, v in zip(self.omegas, self.values)
        ]


@dataclass(frozen=True)
class Peak:
    omega: float
    height: float
    kind: PeakKind = PeakKind.LEVEL


@dataclass
class PeakSet:
    peaks: List[Peak] = field(default_factory=list)
    threshold_fraction: float = DEFAULT_THRESHOLD_FRACTION
    min_separation: float = 0.0

    @property
    def omegas(self) -> List[float]:
        return [p.omega for p in self.peaks]

    def __len__(self) -> int:
        return len(self.peaks)

    def __iter__(self):
        return iter(self.peaks)

    def to_rows(self) -> List[PeakRow]:
        return [PeakRow(omega=p.omega, height=p.height) for p in self.peaks]


def default_omega_max(tau: float, omega_step: float = DEFAULT_OMEGA_STEP,
                      user_max: Optional[float] = None) -> float:
    """
    min(pi/tau - step, user_max), floored to a multiple of the step so that the
    grid -max..max is symmetric about zero.
    """
    limit = np.pi / tau - omega_step
    if user_max is not None:
        limit = min(limit, user_max)
    steps = np.floor(limit / omega_step + 1e-9)
    return float(np.round(steps * omega_step, 12))


def omega_grid(omega_min: float, omega_max: float, omega_step: float) -> np.ndarray:
    if not omega_step > 0:
        raise SpectralError(f"omega step must be positive, got {omega_step}")
    if omega_max < omega_min:
        raise SpectralError(f"empty frequency range [{omega_min}, {omega_max}]")
    count = int(np.floor((omega_max - omega_min) / omega_step + 1e-9)) + 1
    return np.round(omega_min + omega_step * np.arange(count), 12)


def window_weights(name: Optional[str], size: int) -> np.ndarray:
    """Symmetric taper of the given scipy window name; "none" is all ones."""
    if name is None or name == NO_WINDOW:
        return np.ones(size)
    try:
        return scipy.signal.get_window(name, size, fftbins=False)
    except ValueError as e:
        raise SpectralError(f"unknown window '{name}': {e}") from e


@timing_decorator
def dft(series: TimeSeries, omega_min: float, omega_max: float,
        omega_step: float = DEFAULT_OMEGA_STEP, normalize: bool = False,
        window: Optional[str] = None) -> Spectrum:
    """
    Evaluate A(omega) on omega_min..omega_max in steps of omega_step.

    Args:
        series: Sampled A(t_n), n = -N..N
        omega_min: Lowest frequency (units J)
        omega_max: Highest frequency
        omega_step: Grid spacing, > 0
        normalize: Divide by the sum of window weights (2N+1 without a window)
        window: scipy window name applied over n = -N..N, or None / "none"

    Returns:
        Spectrum with complex values and the grid metadata

    Raises:
        SpectralError: empty range, non-positive step or unknown window
    """
    omegas = omega_grid(omega_min, omega_max, omega_step)
    grid = series.grid
    if np.max(np.abs(omegas)) >= grid.nyquist:
        get_logger().warning(
            f"frequency grid reaches |omega| = {np.max(np.abs(omegas)):.4g} >= pi/tau = "
            f"{grid.nyquist:.4g}; values beyond it alias")

    weights = window_weights(window, grid.size)
    samples = series.values * weights
    values = np.exp(1j * np.outer(omegas, grid.times())) @ samples
    if normalize:
        values = values / float(np.sum(weights))
    return Spectrum(omegas, values, grid.tau, grid.big_n, normalize,
                    NO_WINDOW if window is None else window)


def continuum_kernel(lines: Sequence[Line], total_time: float,
                     omega: Union[float, np.ndarray]) -> Union[float, np.ndarray]:
    """
    Finite-T broadening sum_l g_l sin((omega - omega_l) T) / (pi (omega - omega_l)).

    Each line peaks at T g_l / pi on its own frequency.
    """
    if not total_time > 0:
        raise SpectralError(f"observation time T must be positive, got {total_time}")
    omega = np.asarray(omega, dtype=float)
    total = np.zeros(omega.shape)
    for omega_l, g in lines:
        # np.sinc(x) = sin(pi x) / (pi x), removable point handled by numpy
        total = total + g * total_time / np.pi * np.sinc((omega - omega_l) * total_time / np.pi)
    return float(total) if total.ndim == 0 else total


def dirichlet_kernel(lines: Sequence[Line], tau: float, big_n: int,
                     omega: Union[float, np.ndarray]) -> Union[float, np.ndarray]:
    """
    Closed form of the unwindowed finite sum: sum_l g_l D((omega - omega_l) tau)
    with D(x) = sin((2N+1) x / 2) / sin(x / 2) and D(2 pi k) = 2N+1.
    """
    omega = np.asarray(omega, dtype=float)
    size = 2 * big_n + 1
    total = np.zeros(omega.shape)
    for omega_l, g in lines:
        x = (omega - omega_l) * tau
        denominator = np.sin(x / 2.0)
        singular = np.abs(denominator) < 1e-12
        safe = np.where(singular, 1.0, denominator)
        total = total + g * np.where(singular, float(size), np.sin(size * x / 2.0) / safe)
    return float(total) if total.ndim == 0 else total


def find_peaks(spectrum: Spectrum, threshold_fraction: float = DEFAULT_THRESHOLD_FRACTION,
               min_separation: Optional[float] = None,
               kind: Union[str, PeakKind] = PeakKind.LEVEL) -> PeakSet:
    """
    Local maxima of Re A(omega) above threshold_fraction * max(Re A); the two
    end points of the grid count when they exceed their single neighbour.

    Maxima closer than min_separation are merged keeping the higher one; equal
    heights keep the lower omega. min_separation defaults to 4 grid steps.

    Raises:
        SpectralError: empty spectrum or threshold outside (0, 1)
    """
    kind = PeakKind(kind)
    if len(spectrum.omegas) == 0:
        raise SpectralError("cannot search peaks in an empty spectrum")
    if not 0.0 < threshold_fraction < 1.0:
        raise SpectralError(f"threshold fraction must lie in (0, 1), got {threshold_fraction}")
    if min_separation is None:
        min_separation = 4.0 * spectrum.omega_step

    signal = spectrum.real
    top = float(np.max(signal))
    if top <= 0.0:
        return PeakSet([], threshold_fraction, min_separation)

    # -inf guards so that a line on +-omega_max counts as a local maximum
    padded = np.concatenate(([-np.inf], signal, [-np.inf]))
    candidates, _ = scipy.signal.find_peaks(padded, height=threshold_fraction * top)
    candidates = candidates - 1
    ranked = sorted(candidates, key=lambda i: (-signal[i], spectrum.omegas[i]))
    accepted: List[int] = []
    for index in ranked:
        omega = spectrum.omegas[index]
        if all(abs(omega - spectrum.omegas[kept]) >= min_separation for kept in accepted):
            accepted.append(index)

    peaks = [Peak(float(spectrum.omegas[i]), float(signal[i]), kind) for i in sorted(accepted)]
    get_logger().debug(
        f"find_peaks: {len(candidates)} maxima above {threshold_fraction:g} * {top:.4g}, "
        f"{len(peaks)} kept")
    return PeakSet(peaks, threshold_fraction, min_separation)


def peaks_to_levels(peaks: PeakSet, mode: Union[str, PeakKind] = PeakKind.LEVEL) -> List[Line]:
    """(value, height) pairs ascending; level mode reports E = omega / 2."""
    mode = PeakKind(mode)
    scale = 0.5 if mode == PeakKind.LEVEL else 1.0
    return sorted((p.omega * scale, p.height) for p in peaks)


def level_bounds(levels: Sequence[Line]) -> Dict[str, Optional[float]]:
    """Lowest and highest detected value."""
    if not levels:
        return {"min": None, "max": None}
    values = [value for value, _ in levels]
    return {"min": float(min(values)), "max": float(max(values))}
