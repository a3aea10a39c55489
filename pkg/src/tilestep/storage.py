"""File formats: circuits.jsonl, results.csv, pareto.csv, analysis.json.

Every artifact starts with a small provenance header (tool name, version,
config hash, master seed) and contains no timestamps, so runs with equal
configs produce byte-identical files. JSON is serialized with sorted keys
and fixed separators for the same reason.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
import os
from dataclasses import asdict, dataclass
from typing import Iterable, TextIO

from . import __version__
from .circuits import CircuitClass, CircuitSpec, decode_grid, encode_grid
from .errors import ValidationError
from .optimize import Algorithm, Objective

TOOL_NAME = "tilestep"


@dataclass(frozen=True)
class RunConfig:
    """Everything that determines a run's outputs.

    The config hash covers every field, so any change to the run setup shows
    up in the artifact headers.
    """

    master_seed: int
    p_error: float = 1e-4
    bf_cap: int = 5
    greedy_cap: int = 2
    code_distance: int = 3
    qubit_values: tuple[int, ...] = tuple(range(10, 101, 10))
    column_count: int = 25
    tgate_count: int = 25
    column_max_factor: int = 100
    algorithms: tuple[str, ...] = ("random", "bf", "dp", "greedy")
    objectives: tuple[str, ...] = ("min-tiles", "min-steps", "balanced")
    consume_mode: str = "max"
    with_grids: bool = False

    def config_hash(self) -> str:
        payload = json.dumps(asdict(self), sort_keys=True, default=list)
        return hashlib.sha256(payload.encode()).hexdigest()[:16]


@dataclass(frozen=True)
class ResultRow:
    """One line of results.csv: a chosen layout for (circuit, algorithm, objective)."""

    circuit_id: str
    algorithm: Algorithm
    objective: Objective
    data_block: str
    protocols: str
    total_steps: int
    idle_steps: int
    total_tiles: int


RESULTS_COLUMNS = (
    "circuit_id",
    "algorithm",
    "objective",
    "data_block",
    "protocols",
    "total_steps",
    "idle_steps",
    "total_tiles",
)

PARETO_COLUMNS = (
    "circuit_id",
    "algorithm",
    "objective",
    "total_tiles",
    "total_steps",
    "on_front",
)


def _json_dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def header_dict(config: RunConfig) -> dict:
    return {
        "tool": TOOL_NAME,
        "version": __version__,
        "config_hash": config.config_hash(),
        "master_seed": config.master_seed,
    }


def _write_preamble(stream: TextIO, header: dict) -> None:
    stream.write(f"# tool={header['tool']} version={header['version']}\n")
    stream.write(f"# config_hash={header['config_hash']}\n")
    stream.write(f"# master_seed={header['master_seed']}\n")


# ---------------------------------------------------------------------------
# circuits.jsonl
# ---------------------------------------------------------------------------

def write_circuits_jsonl(
    path: str,
    circuits: list[CircuitSpec],
    header: dict,
    classes: list[CircuitClass] | None = None,
) -> None:
    """Write the dataset: one header line, then one object per circuit."""
    if classes is not None and len(classes) != len(circuits):
        raise ValidationError("classes and circuits must have equal length")
    with open(path, "w", encoding="utf-8", newline="\n") as stream:
        stream.write(_json_dumps({"header": header}) + "\n")
        for i, circuit in enumerate(circuits):
            record = {
                "id": circuit.id,
                "qubits": circuit.qubits,
                "columns": circuit.columns,
                "t_gates": circuit.t_gates,
                "seed": circuit.seed,
            }
            if classes is not None:
                record["class"] = classes[i].label
            if circuit.grid is not None:
                record["grid_rle"] = encode_grid(circuit.grid)
            stream.write(_json_dumps(record) + "\n")


def read_circuits_jsonl(path: str) -> tuple[dict, list[CircuitSpec], dict[str, str]]:
    """Read a dataset back.

    Returns:
        (header, circuits, labels) where labels maps circuit id to its class
        label for every record that carried one. Grids are decoded when the
        record includes them.
    """
    circuits: list[CircuitSpec] = []
    labels: dict[str, str] = {}
    header: dict = {}
    with open(path, "r", encoding="utf-8") as stream:
        first = stream.readline()
        if not first:
            raise ValidationError(f"{path} is empty")
        head_obj = json.loads(first)
        if "header" not in head_obj:
            raise ValidationError(f"{path} does not start with a header line")
        header = head_obj["header"]
        for line in stream:
            line = line.strip()
            if not line:
                continue
            rec = json.loads(line)
            grid = None
            if "grid_rle" in rec:
                grid = decode_grid(rec["grid_rle"], rec["qubits"], rec["columns"])
            circuits.append(
                CircuitSpec(
                    id=rec["id"],
                    qubits=rec["qubits"],
                    columns=rec["columns"],
                    t_gates=rec["t_gates"],
                    seed=rec["seed"],
                    grid=grid,
                )
            )
            if "class" in rec:
                labels[rec["id"]] = rec["class"]
    return header, circuits, labels


# ---------------------------------------------------------------------------
# results.csv
# ---------------------------------------------------------------------------

def write_results_csv(path: str, rows: Iterable[ResultRow], header: dict) -> None:
    with open(path, "w", encoding="utf-8", newline="") as stream:
        _write_preamble(stream, header)
        writer = csv.writer(stream, lineterminator="\n")
        writer.writerow(RESULTS_COLUMNS)
        for row in rows:
            writer.writerow(
                (
                    row.circuit_id,
                    row.algorithm.value,
                    row.objective.value,
                    row.data_block,
                    row.protocols,
                    row.total_steps,
                    row.idle_steps,
                    row.total_tiles,
                )
            )


def read_results_csv(path: str) -> tuple[dict, list[ResultRow]]:
    header: dict = {}
    rows: list[ResultRow] = []
    with open(path, "r", encoding="utf-8", newline="") as stream:
        data_lines: list[str] = []
        for line in stream:
            if line.startswith("#"):
                for token in line[1:].strip().split():
                    if "=" in token:
                        key, value = token.split("=", 1)
                        header[key] = value
                continue
            data_lines.append(line)
    reader = csv.DictReader(io.StringIO("".join(data_lines)))
    for rec in reader:
        rows.append(
            ResultRow(
                circuit_id=rec["circuit_id"],
                algorithm=Algorithm(rec["algorithm"]),
                objective=Objective(rec["objective"]),
                data_block=rec["data_block"],
                protocols=rec["protocols"],
                total_steps=int(rec["total_steps"]),
                idle_steps=int(rec["idle_steps"]),
                total_tiles=int(rec["total_tiles"]),
            )
        )
    return header, rows


def append_results_csv(path: str, rows: Iterable[ResultRow]) -> None:
    """Append rows to an existing results file (resume support)."""
    with open(path, "a", encoding="utf-8", newline="") as stream:
        writer = csv.writer(stream, lineterminator="\n")
        for row in rows:
            writer.writerow(
                (
                    row.circuit_id,
                    row.algorithm.value,
                    row.objective.value,
                    row.data_block,
                    row.protocols,
                    row.total_steps,
                    row.idle_steps,
                    row.total_tiles,
                )
            )


# ---------------------------------------------------------------------------
# pareto.csv and analysis.json
# ---------------------------------------------------------------------------

def write_pareto_csv(
    path: str,
    rows: Iterable[tuple[str, str, str, int, int, bool]],
    header: dict,
) -> None:
    """Write candidate points with front membership flags."""
    with open(path, "w", encoding="utf-8", newline="") as stream:
        _write_preamble(stream, header)
        writer = csv.writer(stream, lineterminator="\n")
        writer.writerow(PARETO_COLUMNS)
        for circuit_id, algorithm, objective, tiles, steps, on_front in rows:
            writer.writerow(
                (circuit_id, algorithm, objective, tiles, steps, int(on_front))
            )


def write_analysis_json(path: str, analysis: dict, header: dict) -> None:
    payload = {"header": header, **analysis}
    with open(path, "w", encoding="utf-8", newline="\n") as stream:
        stream.write(json.dumps(payload, sort_keys=True, indent=2) + "\n")


def write_table_csv(path: str, columns: tuple[str, ...], rows: Iterable[tuple]) -> None:
    """Plain CSV with a header row; used by the curve emitters."""
    os.makedirs(os.path.dirname(path) or ".", exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as stream:
        writer = csv.writer(stream, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow(row)
