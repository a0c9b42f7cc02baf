# data_types.py
from typing import TypedDict, List, Dict, Optional


class TimeSeriesRow(TypedDict):
    n: int
    t: float
    a_value: float


class SpectrumRow(TypedDict):
    omega: float
    re: float
    im: float


class PeakRow(TypedDict):
    omega: float
    height: float


class LevelRow(TypedDict):
    energy: float
    height: float


class OracleRow(TypedDict):
    energy: float
    degeneracy: int
    weight: float


class TransitionRow(TypedDict):
    omega: float
    multiplicity: int
    weight: float


class LineMatch(TypedDict):
    """A detected value paired with the oracle line it was matched to."""
    detected: float
    expected: float
    height: float
    weight: float


class ComparisonReport(TypedDict):
    """
    Outcome of matching detected levels (or transition frequencies)
    against the enumeration oracle.
    """
    scenario: str
    mode: str
    tolerance: float
    matched: List[LineMatch]
    missed: List[Dict[str, float]]
    spurious: List[Dict[str, float]]
    claimed_discrepancies: Dict[str, List[float]]
    level_bounds: Dict[str, Optional[float]]
    passed: bool


class RunSummary(TypedDict):
    scenario: str
    run_id: str
    mode: str
    num_spins: int
    observable: List[int]
    tau: float
    big_n: int
    shots: int
    readout_flip_prob: float
    seed: Optional[int]
    window: str
    peaks: List[PeakRow]
    levels: List[LevelRow]
    level_bounds: Dict[str, Optional[float]]
    elapsed_s: float
