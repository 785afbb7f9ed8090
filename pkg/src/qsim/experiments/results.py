"""Result containers and file export.

A ResultSet bundles everything one run produces: event traces, named tables
(CSV on export), named grids (JSON with axes, row-major values), and a
metadata record. Export writes one file per member plus metadata.json.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from ..errors import ShapeMismatchError
from ..fock.phase_space import WignerGrid

CSV_SIGNIFICANT_DIGITS = 17


@dataclass
class Table:
    columns: list[str]
    rows: list[list]

    def __post_init__(self):
        for i, row in enumerate(self.rows):
            if len(row) != len(self.columns):
                raise ShapeMismatchError(
                    f"table row {i} has {len(row)} cells for {len(self.columns)} columns"
                )


def grid_payload(grid: WignerGrid) -> dict:
    """Row-major JSON form: values[i * len(p) + j] = W(x_i, p_j)."""
    return {
        "x_axis": [float(x) for x in grid.x_axis],
        "p_axis": [float(p) for p in grid.p_axis],
        "values": [float(v) for v in np.asarray(grid.values).reshape(-1)],
    }


@dataclass
class ResultSet:
    run_id: str
    traces: dict[str, str] = field(default_factory=dict)
    tables: dict[str, Table] = field(default_factory=dict)
    grids: dict[str, dict] = field(default_factory=dict)
    metadata: dict = field(default_factory=dict)

    def add_grid(self, name: str, grid: WignerGrid | dict) -> None:
        payload = grid if isinstance(grid, dict) else grid_payload(grid)
        n = len(payload["x_axis"]) * len(payload["p_axis"])
        if len(payload["values"]) != n:
            raise ShapeMismatchError(
                f"grid {name!r} has {len(payload['values'])} values for {n} axis points"
            )
        self.grids[name] = payload

    def to_json_dict(self) -> dict:
        return {
            "run_id": self.run_id,
            "traces": self.traces,
            "tables": {
                name: {"columns": t.columns, "rows": [[_jsonify(c) for c in r] for r in t.rows]}
                for name, t in self.tables.items()
            },
            "grids": self.grids,
            "metadata": self.metadata,
        }


def _jsonify(cell):
    if isinstance(cell, (np.floating, np.integer)):
        return cell.item()
    return cell


def _format_cell(cell) -> str:
    if isinstance(cell, (float, np.floating)):
        return format(float(cell), f".{CSV_SIGNIFICANT_DIGITS}g")
    if isinstance(cell, (int, np.integer)):
        return str(int(cell))
    if cell is None:
        return ""
    return str(cell)


def export_results(rs: ResultSet, out_dir) -> list[Path]:
    """Write metadata.json, one CSV per table, one JSON per grid, one JSONL
    per trace; returns the written paths."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written: list[Path] = []

    meta_path = out / "metadata.json"
    meta_path.write_text(
        json.dumps({"run_id": rs.run_id, **rs.metadata}, indent=2, sort_keys=True) + "\n"
    )
    written.append(meta_path)

    for name, table in rs.tables.items():
        path = out / f"{name}.csv"
        with path.open("w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(table.columns)
            for row in table.rows:
                writer.writerow([_format_cell(c) for c in row])
        written.append(path)

    for name, payload in rs.grids.items():
        path = out / f"{name}.json"
        path.write_text(json.dumps(payload) + "\n")
        written.append(path)

    for name, jsonl in rs.traces.items():
        path = out / f"{name}.jsonl"
        path.write_text(jsonl)
        written.append(path)

    return written
