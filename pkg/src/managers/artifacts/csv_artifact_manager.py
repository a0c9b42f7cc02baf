# src/managers/artifacts/csv_artifact_manager.py

import json
import os
import tempfile
from pathlib import Path
from typing import Any, Dict, List, Sequence

import pandas as pd

from src.core.errors import ArtifactError
from src.core.logger_setup import get_logger
from src.managers.artifacts.artifact_manager import ArtifactManager
from src.utils.utils import serialize_for_json

FLOAT_FORMAT = "%.10g"


class CSVArtifactManager(ArtifactManager):
    """
    CSV/JSON file implementation of the ArtifactManager interface.
    Every file is written to a temporary sibling and renamed into place.
    """

    def __init__(self, output_dir: str = "output"):
        """
        Initialize CSVArtifactManager with the directory to store artifacts.

        Args:
            output_dir: Directory to store artifact files
        """
        self.output_dir = Path(output_dir)
        self.output_dir.mkdir(parents=True, exist_ok=True)
        self.logger = get_logger()

    def path_for(self, name: str) -> Path:
        return self.output_dir / name

    def exists(self, name: str) -> bool:
        return self.path_for(name).is_file()

    def write_text(self, name: str, text: str) -> Path:
        target = self.path_for(name)
        fd, tmp_name = tempfile.mkstemp(dir=self.output_dir, prefix=f".{name}.", suffix=".tmp")
        try:
            with os.fdopen(fd, "w", encoding="utf-8", newline="") as f:
                f.write(text)
            os.replace(tmp_name, target)
        except OSError as e:
            if os.path.exists(tmp_name):
                os.remove(tmp_name)
            raise ArtifactError(f"Error writing {target}: {e}") from e
        self.logger.debug(f"Wrote artifact {target}")
        return target

    def write_table(self, name: str, rows: Sequence[Dict[str, Any]], columns: List[str]) -> Path:
        frame = pd.DataFrame(list(rows), columns=columns)
        text = frame.to_csv(index=False, float_format=FLOAT_FORMAT, lineterminator="\n")
        return self.write_text(name, text)

    def read_table(self, name: str) -> pd.DataFrame:
        path = self.path_for(name)
        if not path.is_file():
            raise ArtifactError(f"Missing artifact: {path}")
        try:
            return pd.read_csv(path)
        except (OSError, ValueError) as e:
            raise ArtifactError(f"Unreadable artifact {path}: {e}") from e

    def write_json(self, name: str, payload: Dict[str, Any]) -> Path:
        text = json.dumps(serialize_for_json(payload), indent=2) + "\n"
        return self.write_text(name, text)

    def read_json(self, name: str) -> Dict[str, Any]:
        path = self.path_for(name)
        if not path.is_file():
            raise ArtifactError(f"Missing artifact: {path}")
        try:
            with open(path, 'r') as f:
                return json.load(f)
        except (OSError, json.JSONDecodeError) as e:
            raise ArtifactError(f"Unreadable artifact {path}: {e}") from e
