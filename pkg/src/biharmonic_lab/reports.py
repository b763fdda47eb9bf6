"""Frozen CSV/JSON report formats.

Reports are the public contract of the tool, so the column order and field
names are pinned by a versioned schema string embedded in every output.
Floats are written with shortest round-trip representation, which makes
repeated runs byte-identical.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

from .errors import ConsistencyError

SCHEMA = "biharmonic-lab/1"

GRID_COLUMNS = ("s_or_r", "residual_name", "value", "pass")


@dataclass(frozen=True)
class GridRow:
    """One residual sample of a grid sweep."""

    s_or_r: float
    residual_name: str
    value: float
    passed: bool


def write_grid_csv(path: str | Path, rows: Iterable[GridRow]) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(f"# schema={SCHEMA}\n")
        writer = csv.writer(fh)
        writer.writerow(GRID_COLUMNS)
        for row in rows:
            writer.writerow(
                [repr(float(row.s_or_r)), row.residual_name, repr(float(row.value)),
                 "true" if row.passed else "false"]
            )


def read_grid_csv(path: str | Path) -> list[GridRow]:
    rows: list[GridRow] = []
    with open(path, "r", encoding="utf-8", newline="") as fh:
        header_comment = fh.readline().strip()
        if not header_comment.startswith("# schema="):
            raise ConsistencyError(f"{path}: missing schema line")
        schema = header_comment.split("=", 1)[1]
        if schema != SCHEMA:
            raise ConsistencyError(f"{path}: schema {schema!r} != {SCHEMA!r}")
        reader = csv.reader(fh)
        columns = tuple(next(reader))
        if columns != GRID_COLUMNS:
            raise ConsistencyError(f"{path}: columns {columns} != {GRID_COLUMNS}")
        for record in reader:
            rows.append(
                GridRow(
                    s_or_r=float(record[0]),
                    residual_name=record[1],
                    value=float(record[2]),
                    passed=record[3] == "true",
                )
            )
    return rows


def _coerce(obj):
    """JSON fallback for numpy scalars and arrays."""
    import numpy as np

    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.floating):
        return float(obj)
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    raise TypeError(f"not JSON serializable: {type(obj)}")


def write_json(path: str | Path, payload: dict) -> None:
    """Write a schema-stamped JSON document with deterministic layout."""
    document = {"schema": SCHEMA, **payload}
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(document, fh, indent=2, sort_keys=True, default=_coerce)
        fh.write("\n")


def read_json(path: str | Path) -> dict:
    with open(path, "r", encoding="utf-8") as fh:
        document = json.load(fh)
    if document.get("schema") != SCHEMA:
        raise ConsistencyError(f"{path}: schema {document.get('schema')!r} != {SCHEMA!r}")
    return document


def summary_payload(suite: str, max_abs_residual: float, tolerance: float) -> dict:
    return {
        "suite": suite,
        "max_abs_residual": max_abs_residual,
        "tolerance": tolerance,
        "pass": max_abs_residual <= tolerance,
    }


def write_trajectory_csv(
    path: str | Path,
    parameters: Sequence[float],
    states: Sequence[Sequence[float]],
    state_names: Sequence[str],
    monitors: dict[str, Sequence[float]] | None = None,
) -> None:
    monitors = monitors or {}
    monitor_names = sorted(monitors)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(f"# schema={SCHEMA}\n")
        writer = csv.writer(fh)
        writer.writerow(["parameter", *state_names, *monitor_names])
        for i, t in enumerate(parameters):
            row = [repr(float(t))]
            row.extend(repr(float(v)) for v in states[i])
            row.extend(repr(float(monitors[name][i])) for name in monitor_names)
            writer.writerow(row)
