# src/managers/flow/handlers/oracle_handler.py

from typing import List

from src.config.scenario_config import Scenario
from src.core.data_types import OracleRow
from src.managers.flow.handlers.base_handler import (
    BaseHandler, ORACLE_COLUMNS, ORACLE_FILE, ORACLE_TRANSITIONS_FILE, TRANSITION_COLUMNS,
)


class OracleHandler(BaseHandler):
    """
    Handler for the exact reference: enumerates all 2^n configurations and
    writes the energy histogram (and, in transition mode, the transition table).
    """

    def run(self, scenario: Scenario) -> List[OracleRow]:
        """
        Args:
            scenario: Resolved scenario

        Returns:
            Oracle rows (energy, degeneracy, weight), ascending in energy

        Raises:
            ResourceCapError: num_spins exceeds the enumeration cap
        """
        histogram = self.oracle_histogram(scenario)
        if not histogram.is_symmetric(self.energy_tolerance):
            self.logger.info(f"Spectrum of '{scenario.name}' is not symmetric under E -> -E")
        rows = histogram.to_rows()
        self.artifact_manager.write_table(ORACLE_FILE, rows, ORACLE_COLUMNS)

        if scenario.mode == "transition":
            transitions = self.oracle_histogram(scenario, transitions=True)
            self.artifact_manager.write_table(
                ORACLE_TRANSITIONS_FILE, transitions.to_rows(), TRANSITION_COLUMNS)
            self.logger.info(
                f"Transition oracle for {scenario.observable.label}: "
                f"{len(transitions.frequencies)} frequencies")

        self.logger.info(
            f"Oracle for '{scenario.name}': {len(rows)} levels, "
            f"ground {histogram.ground_energy:g}, top {histogram.top_energy:g}")
        return rows
