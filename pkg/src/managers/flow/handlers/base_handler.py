# src/managers/flow/handlers/base_handler.py

from typing import List, Tuple, Union

from src.config.scenario_config import Scenario
from src.core.logger_setup import get_logger
from src.managers.artifacts.artifact_manager import ArtifactManager
from src.managers.cache.cache_manager import CacheManager
from src.models.ising import (
    DEFAULT_CHUNK_BITS, DEFAULT_ENUMERATION_CAP, ENERGY_TOLERANCE,
    EnergyHistogram, TransitionHistogram, spectrum, transition_spectrum,
)

TIMESERIES_FILE = "timeseries.csv"
SPECTRUM_FILE = "spectrum.csv"
PEAKS_FILE = "peaks.csv"
LEVELS_FILE = "levels.csv"
PLOT_FILE = "spectrum.svg"
SUMMARY_FILE = "run_summary.json"
ORACLE_FILE = "oracle_spectrum.csv"
ORACLE_TRANSITIONS_FILE = "oracle_transitions.csv"
REPORT_FILE = "compare_report.json"

TIMESERIES_COLUMNS = ["n", "t", "a_value"]
SPECTRUM_COLUMNS = ["omega", "re", "im"]
PEAK_COLUMNS = ["omega", "height"]
LEVEL_COLUMNS = ["energy", "height"]
ORACLE_COLUMNS = ["energy", "degeneracy", "weight"]
TRANSITION_COLUMNS = ["omega", "multiplicity", "weight"]


class BaseHandler:
    """
    Base class for command handlers that provides common functionality.
    """

    def __init__(self, artifact_manager: ArtifactManager, cache_manager: CacheManager,
                 enumeration_cap: int = DEFAULT_ENUMERATION_CAP,
                 chunk_bits: int = DEFAULT_CHUNK_BITS,
                 energy_tolerance: float = ENERGY_TOLERANCE, n_jobs: int = 1):
        """
        Initialize the base handler with artifact and cache managers.

        Args:
            artifact_manager: Writes and reads the files of one output directory
            cache_manager: Keeps enumeration results between runs
            enumeration_cap: Largest spin count enumerated exhaustively
            chunk_bits: log2 of the labels per enumeration chunk
            energy_tolerance: Merge tolerance for equal energies
            n_jobs: joblib workers for enumeration and sweeps
        """
        self.artifact_manager = artifact_manager
        self.cache_manager = cache_manager
        self.enumeration_cap = enumeration_cap
        self.chunk_bits = chunk_bits
        self.energy_tolerance = energy_tolerance
        self.n_jobs = n_jobs
        self.logger = get_logger()

    def _cap_for(self, scenario: Scenario) -> int:
        return scenario.enumeration_cap or self.enumeration_cap

    def oracle_histogram(self, scenario: Scenario,
                         transitions: bool = False) -> Union[EnergyHistogram, TransitionHistogram]:
        """Exact energy (or transition) histogram of the scenario, through the cache."""
        cap = self._cap_for(scenario)
        key_parts = [scenario.hamiltonian.cache_key(), f"tol={self.energy_tolerance!r}", f"cap={cap}"]
        if transitions:
            key_parts = ["transitions", scenario.observable.label] + key_parts
            return self.cache_manager.cached_call(
                "|".join(key_parts), transition_spectrum, scenario.hamiltonian, scenario.observable,
                cap=cap, tolerance=self.energy_tolerance, chunk_bits=self.chunk_bits,
                n_jobs=self.n_jobs)
        key_parts = ["spectrum"] + key_parts
        return self.cache_manager.cached_call(
            "|".join(key_parts), spectrum, scenario.hamiltonian,
            cap=cap, tolerance=self.energy_tolerance, chunk_bits=self.chunk_bits,
            n_jobs=self.n_jobs)

    @staticmethod
    def histogram_lines(histogram: Union[EnergyHistogram, TransitionHistogram]) -> List[Tuple[float, float]]:
        """(value, weight) pairs of an oracle histogram."""
        values = (histogram.energies if isinstance(histogram, EnergyHistogram)
                  else histogram.frequencies)
        return [(float(v), float(w)) for v, w in zip(values, histogram.weights())]
