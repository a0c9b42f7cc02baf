# main.py

from typing import List, Optional, Tuple

from src.config.config import ConfigManager
from src.config.scenario_config import Scenario, ScenarioConfig, resolve_scenario
from src.core.data_types import ComparisonReport, OracleRow, RunSummary
from src.core.flow_manager import FlowManager
from src.core.logger_setup import get_logger, run_logger
from src.managers.artifacts.artifact_manager import ArtifactManager
from src.managers.cache.cache_manager import CacheManager


def _prepare(config: ScenarioConfig,
             artifact_manager: Optional[ArtifactManager],
             cache_manager: Optional[CacheManager],
             settings: Optional[ConfigManager]) -> Tuple[Scenario, FlowManager]:
    """Resolve the scenario and build a FlowManager, creating default managers when absent."""
    logger = get_logger()
    if settings is None:
        settings = ConfigManager()
    run_logger.set_level(settings.get_log_level())

    scenario = resolve_scenario(config)
    output_dir = scenario.output_dir or f"{settings.get_output_dir()}/{scenario.name}"

    # If managers are not provided, use the configured implementations
    if artifact_manager is None:
        artifact_manager = settings.get_artifact_manager(output_dir)
        logger.debug(f"Created default artifact manager for {output_dir}")
    if cache_manager is None:
        cache_manager = settings.get_cache_manager()
        logger.debug("Created default cache manager")

    flow_manager = FlowManager(
        artifact_manager, cache_manager,
        logs_dir=settings.get_logs_dir(),
        enumeration_cap=settings.get_enumeration_cap(),
        chunk_bits=settings.get_chunk_bits(),
        energy_tolerance=settings.get_energy_tolerance(),
        n_jobs=settings.get_n_jobs(),
    )
    return scenario, flow_manager


def run_scenario(config: ScenarioConfig,
                 artifact_manager: Optional[ArtifactManager] = None,
                 cache_manager: Optional[CacheManager] = None,
                 settings: Optional[ConfigManager] = None) -> RunSummary:
    """
    Simulate the protocol for a scenario and write timeseries, spectrum,
    peaks, levels, the optional chart and run_summary.json.

    Args:
        config: Scenario configuration
        artifact_manager: Optional artifact manager (default: CSV files in the scenario's output dir)
        cache_manager: Optional cache manager (default: from settings)
        settings: Optional application settings (default: the ConfigManager singleton)

    Returns:
        RunSummary of the detected peaks and levels

    Raises:
        AnticommutationError: level mode with a non-anticommuting observable
        ConfigError: invalid scenario
    """
    scenario, flow_manager = _prepare(config, artifact_manager, cache_manager, settings)
    return flow_manager.process("run", scenario)


def run_oracle(config: ScenarioConfig,
               artifact_manager: Optional[ArtifactManager] = None,
               cache_manager: Optional[CacheManager] = None,
               settings: Optional[ConfigManager] = None) -> List[OracleRow]:
    """
    Enumerate the scenario's model exactly and write oracle_spectrum.csv
    (plus oracle_transitions.csv in transition mode).

    Raises:
        ResourceCapError: the model exceeds the enumeration cap
    """
    scenario, flow_manager = _prepare(config, artifact_manager, cache_manager, settings)
    return flow_manager.process("oracle", scenario)


def compare(config: ScenarioConfig,
            artifact_manager: Optional[ArtifactManager] = None,
            cache_manager: Optional[CacheManager] = None,
            settings: Optional[ConfigManager] = None) -> ComparisonReport:
    """
    Match the levels of a finished run against the oracle and write compare_report.json.

    Raises:
        ArtifactError: run or oracle artifacts are missing
    """
    scenario, flow_manager = _prepare(config, artifact_manager, cache_manager, settings)
    return flow_manager.process("compare", scenario)
