# src/core/flow_manager.py

from typing import Any, Optional

from src.config.scenario_config import Scenario
from src.core.errors import ConfigError
from src.core.logger_setup import new_run_id, run_logger
from src.managers.artifacts.artifact_manager import ArtifactManager
from src.managers.cache.cache_manager import CacheManager
from src.managers.flow.handlers import CompareHandler, OracleHandler, ScenarioHandler
from src.models.ising import DEFAULT_CHUNK_BITS, DEFAULT_ENUMERATION_CAP, ENERGY_TOLERANCE

COMMANDS = ("run", "oracle", "compare")


class FlowManager:
    """
    Dispatches a command for one scenario to its handler, with a dedicated
    log file per invocation.
    """

    def __init__(self, artifact_manager: ArtifactManager, cache_manager: CacheManager,
                 logs_dir: str = "logs", enumeration_cap: int = DEFAULT_ENUMERATION_CAP,
                 chunk_bits: int = DEFAULT_CHUNK_BITS,
                 energy_tolerance: float = ENERGY_TOLERANCE, n_jobs: int = 1):
        """
        Initialize the FlowManager with artifact and cache managers.

        Args:
            artifact_manager: Writes and reads the scenario's output directory
            cache_manager: Keeps enumeration results between runs
            logs_dir: Base directory of per-run log files
            enumeration_cap: Largest spin count enumerated exhaustively
            chunk_bits: log2 of the labels per enumeration chunk
            energy_tolerance: Merge tolerance for equal energies
            n_jobs: joblib workers
        """
        self.artifact_manager = artifact_manager
        self.cache_manager = cache_manager
        self.logs_dir = logs_dir

        # Initialize handlers with shared references
        shared = dict(enumeration_cap=enumeration_cap, chunk_bits=chunk_bits,
                      energy_tolerance=energy_tolerance, n_jobs=n_jobs)
        self.scenario_handler = ScenarioHandler(artifact_manager, cache_manager, **shared)
        self.oracle_handler = OracleHandler(artifact_manager, cache_manager, **shared)
        self.compare_handler = CompareHandler(artifact_manager, cache_manager, **shared)

    def process(self, command: str, scenario: Scenario, run_id: Optional[str] = None) -> Any:
        """
        Execute `command` ("run", "oracle" or "compare") for the scenario.

        Returns:
            RunSummary, list of OracleRow, or ComparisonReport respectively
        """
        if command not in COMMANDS:
            raise ConfigError(f"Unknown command '{command}'; expected one of {COMMANDS}")

        run_id = run_id or new_run_id()
        logger = run_logger.start_run(scenario.name, run_id, self.logs_dir)
        # handlers log through get_logger(), which now resolves to the run logger
        for handler in (self.scenario_handler, self.oracle_handler, self.compare_handler):
            handler.logger = logger
        logger.info(f"{command} started for scenario '{scenario.name}' (run {run_id})")
        try:
            if command == "run":
                return self.scenario_handler.run(scenario, run_id)
            if command == "oracle":
                return self.oracle_handler.run(scenario)
            return self.compare_handler.compare(scenario)
        except Exception as e:
            logger.error(f"{command} failed for scenario '{scenario.name}': {e}")
            raise
        finally:
            run_logger.end_run()
