# src/managers/artifacts/artifact_manager.py

from abc import ABC, abstractmethod
from pathlib import Path
from typing import Any, Dict, List, Sequence

import pandas as pd


class ArtifactManager(ABC):
    """
    Interface for run artifacts.
    Defines methods for writing and reading tables and JSON reports in an output directory.
    """

    @abstractmethod
    def write_table(self, name: str, rows: Sequence[Dict[str, Any]], columns: List[str]) -> Path:
        """
        Write rows as a table with exactly the given columns.

        Args:
            name: File name inside the output directory (e.g. "peaks.csv")
            rows: Records keyed by column name
            columns: Column order of the written header

        Returns:
            Path of the written file
        """
        pass

    @abstractmethod
    def read_table(self, name: str) -> pd.DataFrame:
        """
        Read a table written by write_table.

        Raises:
            ArtifactError: the file is missing or unreadable
        """
        pass

    @abstractmethod
    def write_json(self, name: str, payload: Dict[str, Any]) -> Path:
        """Write a JSON report."""
        pass

    @abstractmethod
    def read_json(self, name: str) -> Dict[str, Any]:
        """Read a JSON report; raises ArtifactError when missing or invalid."""
        pass

    @abstractmethod
    def write_text(self, name: str, text: str) -> Path:
        """Write a text file (e.g. an SVG chart) atomically."""
        pass

    @abstractmethod
    def exists(self, name: str) -> bool:
        pass

    @abstractmethod
    def path_for(self, name: str) -> Path:
        """Location of an artifact in the output directory."""
        pass
