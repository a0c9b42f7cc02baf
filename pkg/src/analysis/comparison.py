# src/analysis/comparison.py
"""Matching detected levels or transition frequencies against the exact oracle."""
from dataclasses import dataclass, field
from typing import Dict, List, Sequence, Tuple

import numpy as np

from src.core.data_types import LineMatch

# (value, height) for detections, (value, weight) for oracle lines
Line = Tuple[float, float]


def omega_tolerance(omega_step: float, tau: float, big_n: int) -> float:
    """Location tolerance omega_step + pi / ((2N+1) tau) in omega units."""
    return float(omega_step + np.pi / ((2 * big_n + 1) * tau))


def expected_lines(oracle: Sequence[Line], threshold_fraction: float) -> List[Line]:
    """Oracle lines whose weight reaches threshold_fraction of the strongest line."""
    if not oracle:
        return []
    strongest = max(weight for _, weight in oracle)
    return [(v, w) for v, w in oracle if w >= threshold_fraction * strongest]


@dataclass
class MatchResult:
    tolerance: float
    matched: List[LineMatch] = field(default_factory=list)
    missed: List[Dict[str, float]] = field(default_factory=list)
    spurious: List[Dict[str, float]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.missed and not self.spurious


def match_lines(detected: Sequence[Line], oracle: Sequence[Line], tolerance: float,
                threshold_fraction: float) -> MatchResult:
    """
    Pair each detection with the nearest oracle line within `tolerance`.

    A detection near no oracle line is spurious. An oracle line above the
    weight threshold with no detection near it is missed. Sub-threshold oracle
    lines may be matched but are never missed.
    """
    result = MatchResult(tolerance)
    oracle_values = np.array([v for v, _ in oracle], dtype=float)

    for value, height in detected:
        if len(oracle_values) == 0:
            result.spurious.append({"value": float(value), "height": float(height)})
            continue
        nearest = int(np.argmin(np.abs(oracle_values - value)))
        if abs(oracle_values[nearest] - value) <= tolerance:
            result.matched.append(LineMatch(
                detected=float(value), expected=float(oracle[nearest][0]),
                height=float(height), weight=float(oracle[nearest][1])))
        else:
            result.spurious.append({"value": float(value), "height": float(height)})

    detected_values = np.array([v for v, _ in detected], dtype=float)
    for value, weight in expected_lines(oracle, threshold_fraction):
        if len(detected_values) == 0 or np.min(np.abs(detected_values - value)) > tolerance:
            result.missed.append({"value": float(value), "weight": float(weight)})
    return result


def claim_discrepancies(claimed: Sequence[float], oracle: Sequence[Line], tolerance: float,
                        threshold_fraction: float) -> Dict[str, List[float]]:
    """
    Differences between an asserted level set and the oracle.

    Returns:
        claimed_not_in_oracle: claimed values with no oracle level within tolerance
        oracle_not_claimed: above-threshold oracle levels absent from the claim
    """
    oracle_values = np.array([v for v, _ in oracle], dtype=float)
    claimed_values = np.array(sorted(claimed), dtype=float)

    def near(value: float, pool: np.ndarray) -> bool:
        return len(pool) > 0 and float(np.min(np.abs(pool - value))) <= tolerance

    return {
        "claimed_not_in_oracle": [float(c) for c in claimed_values if not near(c, oracle_values)],
        "oracle_not_claimed": [
            float(v) for v, _ in expected_lines(oracle, threshold_fraction)
            if not near(v, claimed_values)
        ],
    }
