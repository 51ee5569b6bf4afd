"""
File management utilities for revolve.
Persistence of configurations, measures, reports, manifests and curve specs.

CSV columns are fixed: configurations t,phi,x,y,zeta; measures t,x,y,weight. Floats are
written with 17 significant digits and read back with pandas' round-trip parser, so
write-then-read reproduces values exactly.
"""

import json
from pathlib import Path
from typing import Any, Dict, Optional, Union

import numpy as np
import pandas as pd

from ..core.config import Config
from ..core.exceptions import ExportError, RevolveError
from ..core.models import Configuration, ConfigurationMode, DiscreteMeasure, RunManifest
from ..geometry.curves import GeneratorCurve, curve_from_spec
from ..utils.logging_utils import get_logger

PathLike = Union[str, Path]

CONFIGURATION_COLUMNS = ["t", "phi", "x", "y", "zeta"]
MEASURE_COLUMNS = ["t", "x", "y", "weight"]

class FileManager:
    """Reads and writes every result file format of the CLI."""

    def __init__(self, output_dir: Optional[PathLike] = None):
        """Initialize the file manager.

        Args:
            output_dir: Target directory (Config.OUTPUT_DIR if None)
        """
        self.logger = get_logger(self.__class__.__name__)
        self.output_dir = Path(output_dir) if output_dir is not None else Config.OUTPUT_DIR
        self.output_dir.mkdir(parents=True, exist_ok=True)

    def _path(self, name: PathLike) -> Path:
        path = Path(name)
        return path if path.is_absolute() or path.parent != Path('.') else self.output_dir / path

    def save_dataframe(self, df: pd.DataFrame, filename: PathLike) -> str:
        """Save a DataFrame as CSV with exact float serialization.

        Raises:
            ExportError: If the file cannot be written
        """
        filepath = self._path(filename)
        try:
            filepath.parent.mkdir(parents=True, exist_ok=True)
            df.to_csv(filepath, index=False, float_format=Config.FLOAT_FORMAT)
        except OSError as e:
            raise ExportError(f"Failed to save {filepath}: {e}")
        self.logger.info(f"💾 Saved {len(df)} rows to {filepath}")
        return str(filepath)

    def load_dataframe(self, filepath: PathLike, columns: Optional[list] = None) -> pd.DataFrame:
        """Load a CSV written by save_dataframe.

        Raises:
            ExportError: Missing file, unreadable content or missing columns
        """
        filepath = Path(filepath)
        if not filepath.exists():
            raise ExportError(f"File not found: {filepath}")
        try:
            df = pd.read_csv(filepath, float_precision='round_trip')
        except (OSError, ValueError, pd.errors.ParserError) as e:
            raise ExportError(f"Failed to load {filepath}: {e}")
        if columns is not None:
            missing = [c for c in columns if c not in df.columns]
            if missing:
                raise ExportError(f"{filepath} lacks columns {missing}")
        self.logger.info(f"📖 Loaded {len(df)} rows from {filepath}")
        return df

    def save_json(self, payload: Dict[str, Any], filename: PathLike) -> str:
        """Write a JSON document (2-space indent, keys in insertion order).

        Raises:
            ExportError: If the file cannot be written or the payload is not serializable
        """
        filepath = self._path(filename)
        try:
            filepath.parent.mkdir(parents=True, exist_ok=True)
            with open(filepath, 'w', encoding='utf-8') as f:
                json.dump(payload, f, indent=2)
                f.write("\n")
        except (OSError, TypeError, ValueError) as e:
            raise ExportError(f"Failed to save {filepath}: {e}")
        self.logger.info(f"💾 Saved {filepath}")
        return str(filepath)

    def load_json(self, filepath: PathLike) -> Dict[str, Any]:
        """Read a JSON document.

        Raises:
            ExportError: Missing file or malformed JSON
        """
        filepath = Path(filepath)
        if not filepath.exists():
            raise ExportError(f"File not found: {filepath}")
        try:
            with open(filepath, 'r', encoding='utf-8') as f:
                payload = json.load(f)
        except (OSError, json.JSONDecodeError) as e:
            raise ExportError(f"Failed to load {filepath}: {e}")
        self.logger.info(f"📖 Loaded {filepath}")
        return payload

    def save_configuration(self, config: Configuration, stem: str = "configuration") -> Dict[str, str]:
        """Write <stem>.json (curve spec, mode, data file) and <stem>.csv (t,phi,x,y,zeta)."""
        points = config.space_points()
        phi = config.phi if config.phi is not None else np.full(config.N, np.nan)
        df = pd.DataFrame({
            "t": config.t,
            "phi": phi,
            "x": points[:, 0],
            "y": points[:, 1],
            "zeta": points[:, 2],
        }, columns=CONFIGURATION_COLUMNS)
        csv_path = self.save_dataframe(df, f"{stem}.csv")
        json_path = self.save_json({
            "curve": config.curve.to_spec(),
            "mode": config.mode.value,
            "N": config.N,
            "data": f"{stem}.csv",
        }, f"{stem}.json")
        return {"configuration": json_path, "configuration_csv": csv_path}

    def load_configuration(self, filepath: PathLike) -> Configuration:
        """Rebuild a Configuration from the JSON written by save_configuration.

        Raises:
            ExportError: Missing or malformed files
        """
        filepath = Path(filepath)
        meta = self.load_json(filepath)
        try:
            curve = curve_from_spec(meta["curve"])
            mode = ConfigurationMode(meta["mode"])
            df = self.load_dataframe(filepath.parent / meta["data"], CONFIGURATION_COLUMNS)
            phi = df["phi"].to_numpy(dtype=float) if mode is ConfigurationMode.SURFACE_3D else None
            return Configuration(curve, df["t"].to_numpy(dtype=float), phi, mode)
        except ExportError:
            raise
        except (KeyError, ValueError, RevolveError) as e:
            raise ExportError(f"Malformed configuration file {filepath}: {e}")

    def save_measure(self, measure: DiscreteMeasure, filename: PathLike = "measure.csv") -> str:
        """Write a measure as CSV t,x,y,weight (t empty when the nodes carry no parameters)."""
        t = measure.params if measure.params is not None else np.full(measure.n, np.nan)
        df = pd.DataFrame({
            "t": t,
            "x": measure.nodes[:, 0],
            "y": measure.nodes[:, 1],
            "weight": measure.weights,
        }, columns=MEASURE_COLUMNS)
        return self.save_dataframe(df, filename)

    def load_measure(self, filepath: PathLike, angular: bool = False) -> DiscreteMeasure:
        """Read a measure CSV.

        Raises:
            ExportError: Missing file, missing columns or invalid weights
        """
        df = self.load_dataframe(filepath, MEASURE_COLUMNS)
        t = df["t"].to_numpy(dtype=float)
        try:
            return DiscreteMeasure(
                nodes=df[["x", "y"]].to_numpy(dtype=float),
                weights=df["weight"].to_numpy(dtype=float),
                params=None if np.all(np.isnan(t)) else t,
                angular=angular,
            )
        except RevolveError as e:
            raise ExportError(f"Malformed measure file {filepath}: {e}")

    def save_report(self, report: Any, filename: PathLike) -> str:
        """Write any report object with to_dict(), or a plain dict/list, as JSON."""
        payload = report.to_dict() if hasattr(report, "to_dict") else report
        return self.save_json(payload, filename)

    def save_manifest(self, manifest: RunManifest, filename: PathLike = "manifest.json") -> str:
        return self.save_json(manifest.to_dict(), filename)

    def save_curve(self, curve: GeneratorCurve, filename: PathLike) -> str:
        return self.save_json(curve.to_spec(), filename)

    def load_curve(self, filepath: PathLike) -> GeneratorCurve:
        """Load a curve-spec JSON document.

        Raises:
            ExportError: Missing or malformed file
            GeometryError: Invalid curve
        """
        return curve_from_spec(self.load_json(filepath))
