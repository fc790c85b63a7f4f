"""
CSV tables, trajectory CSVs and JSON run manifests.

Floats are written with ``repr`` so a value read back is the value written,
and manifests use sorted keys; identical runs produce identical bytes.
"""
import csv
import io
import json
from pathlib import Path
from typing import Any, Dict, Iterable, List, Sequence, Union

import numpy as np

from ..errors import ErrorCode, LatentStartError
from ..utils import format_table

PathLike = Union[str, Path]


def _cell(value: Any) -> str:
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    if isinstance(value, (np.integer,)):
        return str(int(value))
    if isinstance(value, Path):
        return value.as_posix()
    return str(value)


class ResultTable:
    """Named columns plus rows, as produced by sweeps and ablations."""

    def __init__(self, columns: Sequence[str], rows: Iterable[Sequence[Any]] = ()):
        self.columns = list(columns)
        self.rows: List[List[Any]] = []
        for row in rows:
            self.add_row(row)

    def add_row(self, row: Sequence[Any]) -> None:
        if len(row) != len(self.columns):
            raise LatentStartError(
                f"row has {len(row)} cells, table has {len(self.columns)} columns",
                code=ErrorCode.INTERNAL_ERROR,
            )
        self.rows.append(list(row))

    def column(self, name: str) -> List[Any]:
        index = self.columns.index(name)
        return [row[index] for row in self.rows]

    def records(self) -> List[Dict[str, Any]]:
        return [dict(zip(self.columns, row)) for row in self.rows]

    def to_csv(self) -> str:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(self.columns)
        for row in self.rows:
            writer.writerow([_cell(v) for v in row])
        return buffer.getvalue()

    def write_csv(self, path: PathLike) -> Path:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(self.to_csv(), encoding="utf-8")
        return path

    def to_text(self, precision: int = 6) -> str:
        """Fixed-width rendering for terminal output."""
        def short(value):
            if isinstance(value, (float, np.floating)):
                return f"{float(value):.{precision}g}"
            return value
        return format_table(self.columns, [[short(v) for v in row] for row in self.rows])

    def __len__(self) -> int:
        return len(self.rows)


def trajectory_table(record) -> ResultTable:
    """One row per trajectory entry: step index, training timestep, latent L2 norm."""
    return ResultTable(["step", "timestep", "l2_norm"], record.rows())


def _jsonable(value: Any) -> Any:
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        return float(value)
    if isinstance(value, Path):
        return value.as_posix()
    if hasattr(value, "value") and isinstance(getattr(value, "value"), str):
        return value.value
    return value


def dump_manifest(manifest: Dict[str, Any]) -> str:
    return json.dumps(_jsonable(manifest), indent=2, sort_keys=True) + "\n"


def write_manifest(path: PathLike, manifest: Dict[str, Any]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dump_manifest(manifest), encoding="utf-8")
    return path
