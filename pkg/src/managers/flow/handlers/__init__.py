# src/managers/flow/handlers/__init__.py

from src.managers.flow.handlers.scenario_handler import ScenarioHandler
from src.managers.flow.handlers.oracle_handler import OracleHandler
from src.managers.flow.handlers.compare_handler import CompareHandler
