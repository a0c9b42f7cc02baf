# src/core/timeseries.py
from dataclasses import dataclass
from typing import List

import numpy as np

from src.core.data_types import TimeSeriesRow
from src.core.errors import ConfigError


@dataclass(frozen=True)
class TimeGrid:
    """
    Symmetric sampling grid t_n = n * tau for n = -N..N (2N+1 points), T = N * tau.
    Time is measured in units of 1/J with hbar = 1.
    """
    tau: float
    big_n: int

    def __post_init__(self):
        if not self.tau > 0:
            raise ConfigError(f"time step tau must be positive, got {self.tau}")
        if int(self.big_n) != self.big_n or self.big_n < 1:
            raise ConfigError(f"N must be a positive integer, got {self.big_n}")

    @property
    def size(self) -> int:
        return 2 * self.big_n + 1

    @property
    def total_time(self) -> float:
        return self.big_n * self.tau

    @property
    def nyquist(self) -> float:
        """Angular frequency pi/tau beyond which the sampled series aliases."""
        return float(np.pi / self.tau)

    def indices(self) -> np.ndarray:
        return np.arange(-self.big_n, self.big_n + 1)

    def times(self) -> np.ndarray:
        return self.indices() * self.tau


@dataclass
class TimeSeries:
    """Sampled mean values A(t_n) on a TimeGrid, ordered n = -N..N."""
    grid: TimeGrid
    values: np.ndarray

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=float)
        if self.values.shape != (self.grid.size,):
            raise ConfigError(
                f"time series needs {self.grid.size} values, got {self.values.shape}")

    def value_at(self, n: int) -> float:
        return float(self.values[n + self.grid.big_n])

    def is_even(self, tolerance: float = 1e-9) -> bool:
        """A(-t_n) == A(t_n) for every n."""
        return bool(np.all(np.abs(self.values - self.values[::-1]) <= tolerance))

    def to_rows(self) -> List[TimeSeriesRow]:
        return [
            TimeSeriesRow(n=int(n), t=float(t), a_value=float(a))
            for n, t, a in zip(self.grid.indices(), self.grid.times(), self.values)
        ]
