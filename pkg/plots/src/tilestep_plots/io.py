"""Readers for the tilestep file formats.

Only the documented shapes are parsed here: curve CSVs with a plain header
row, result tables with a ``#``-prefixed provenance preamble, the JSONL
circuit dataset with its leading header line, and the analysis JSON bundle.
Every reader checks the columns it needs up front and raises PlotDataError
naming the first missing one, so a schema drift fails loudly instead of
producing an empty figure.
"""

from __future__ import annotations

import csv
import json
from pathlib import Path


class PlotDataError(ValueError):
    """An input file is missing, empty, or not in the documented shape."""


def _require_columns(path: Path, present: list[str], required: list[str]) -> None:
    for name in required:
        if name not in present:
            raise PlotDataError(f"{path}: missing column '{name}'")


def _require_rows(path: Path, rows: list) -> None:
    if not rows:
        raise PlotDataError(f"{path}: no data rows")


def read_curve_csv(path: str | Path, required: list[str]) -> list[dict[str, float]]:
    """Read a plain-header curve CSV (block or cost curves) as float rows."""
    path = Path(path)
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        _require_columns(path, reader.fieldnames or [], required)
        try:
            rows = [
                {k: float(v) for k, v in row.items() if k is not None}
                for row in reader
            ]
        except (TypeError, ValueError) as exc:
            raise PlotDataError(f"{path}: non-numeric cell ({exc})") from exc
    _require_rows(path, rows)
    return rows


def read_table_csv(path: str | Path, required: list[str]) -> list[dict[str, str]]:
    """Read a result table CSV, skipping the ``#`` provenance preamble."""
    path = Path(path)
    with open(path, newline="") as fh:
        data_lines = [line for line in fh if not line.startswith("#")]
    reader = csv.DictReader(data_lines)
    _require_columns(path, reader.fieldnames or [], required)
    rows = list(reader)
    _require_rows(path, rows)
    return rows


def read_circuits(path: str | Path, required: list[str]) -> list[dict]:
    """Read the circuit dataset JSONL, skipping the leading header line."""
    path = Path(path)
    records: list[dict] = []
    with open(path) as fh:
        for index, line in enumerate(fh):
            line = line.strip()
            if not line:
                continue
            obj = json.loads(line)
            if index == 0 and "header" in obj:
                continue
            records.append(obj)
    _require_rows(path, records)
    for name in required:
        if name not in records[0]:
            raise PlotDataError(f"{path}: missing column '{name}'")
    return records


def read_analysis(path: str | Path) -> dict:
    """Read the analysis JSON bundle."""
    path = Path(path)
    with open(path) as fh:
        payload = json.load(fh)
    if not isinstance(payload, dict):
        raise PlotDataError(f"{path}: expected a JSON object")
    return payload


def analysis_section(path: str | Path, payload: dict, *keys: str) -> dict:
    """Drill into nested analysis members, naming the first absent one."""
    node = payload
    for key in keys:
        if not isinstance(node, dict) or key not in node:
            raise PlotDataError(f"{path}: missing column '{key}'")
        node = node[key]
    return node
