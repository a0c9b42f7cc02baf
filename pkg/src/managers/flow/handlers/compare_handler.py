# src/managers/flow/handlers/compare_handler.py

from typing import List, Tuple

from src.analysis.comparison import claim_discrepancies, match_lines, omega_tolerance
from src.analysis.spectral import level_bounds
from src.config.scenario_config import Scenario
from src.core.data_types import ComparisonReport
from src.core.errors import ArtifactError
from src.managers.flow.handlers.base_handler import (
    BaseHandler, LEVELS_FILE, ORACLE_FILE, ORACLE_TRANSITIONS_FILE, REPORT_FILE, SUMMARY_FILE,
)


class CompareHandler(BaseHandler):
    """
    Handler for acceptance checks: matches the detected levels of a finished
    run against the oracle written by the oracle command.
    """

    def _read_lines(self, name: str, value_column: str, second_column: str) -> List[Tuple[float, float]]:
        table = self.artifact_manager.read_table(name)
        missing = {value_column, second_column} - set(table.columns)
        if missing:
            raise ArtifactError(f"{name} lacks columns {sorted(missing)}")
        return [(float(v), float(s)) for v, s in zip(table[value_column], table[second_column])]

    def compare(self, scenario: Scenario) -> ComparisonReport:
        """
        Build and write compare_report.json.

        The mode and grid are taken from run_summary.json so the comparison
        matches what was actually run.

        Raises:
            ArtifactError: a run or oracle artifact is missing or malformed
        """
        summary = self.artifact_manager.read_json(SUMMARY_FILE)
        try:
            mode = summary["mode"]
            tau = float(summary["tau"])
            big_n = int(summary["big_n"])
        except (KeyError, TypeError, ValueError) as e:
            raise ArtifactError(f"{SUMMARY_FILE} is incomplete: {e}") from e

        detected = self._read_lines(LEVELS_FILE, "energy", "height")
        if mode == "transition":
            oracle = self._read_lines(ORACLE_TRANSITIONS_FILE, "omega", "weight")
            tolerance = omega_tolerance(scenario.spectral.omega_step, tau, big_n)
        else:
            oracle = self._read_lines(ORACLE_FILE, "energy", "weight")
            # levels are omega / 2
            tolerance = omega_tolerance(scenario.spectral.omega_step, tau, big_n) / 2.0

        threshold = scenario.spectral.threshold_fraction
        result = match_lines(detected, oracle, tolerance, threshold)

        claims = {"claimed_not_in_oracle": [], "oracle_not_claimed": []}
        if mode == "level" and scenario.claimed_levels:
            claims = claim_discrepancies(scenario.claimed_levels, oracle, tolerance, threshold)
            if claims["claimed_not_in_oracle"] or claims["oracle_not_claimed"]:
                self.logger.warning(
                    f"Claimed levels of '{scenario.name}' disagree with the oracle: "
                    f"claimed but absent {claims['claimed_not_in_oracle']}, "
                    f"present but not claimed {claims['oracle_not_claimed']}")

        bounds = level_bounds(detected)
        oracle_values = [v for v, _ in oracle]
        report = ComparisonReport(
            scenario=scenario.name,
            mode=mode,
            tolerance=tolerance,
            matched=result.matched,
            missed=result.missed,
            spurious=result.spurious,
            claimed_discrepancies=claims,
            level_bounds={
                "detected_min": bounds["min"],
                "detected_max": bounds["max"],
                "oracle_min": min(oracle_values) if oracle_values else None,
                "oracle_max": max(oracle_values) if oracle_values else None,
            },
            passed=result.passed,
        )
        self.artifact_manager.write_json(REPORT_FILE, dict(report))
        self.logger.info(
            f"Compare '{scenario.name}': {len(result.matched)} matched, "
            f"{len(result.missed)} missed, {len(result.spurious)} spurious")
        return report
