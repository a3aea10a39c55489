"""Tests for dataset and results file round-trips."""

import json

import numpy as np
import pytest

from tilestep.circuits import CircuitSpec, SweepConfig, classify_dataset, generate_circuits
from tilestep.errors import ValidationError
from tilestep.optimize import Algorithm, Objective
from tilestep.storage import (
    PARETO_COLUMNS,
    RESULTS_COLUMNS,
    ResultRow,
    RunConfig,
    append_results_csv,
    header_dict,
    read_circuits_jsonl,
    read_results_csv,
    write_analysis_json,
    write_circuits_jsonl,
    write_pareto_csv,
    write_results_csv,
    write_table_csv,
)


def _header():
    return header_dict(RunConfig(master_seed=42))


def _rows():
    return [
        ResultRow("c1", Algorithm.BRUTE_FORCE, Objective.MIN_TILES, "compact", "15-to-1 x1", 11, 2, 29),
        ResultRow("c1", Algorithm.GREEDY, Objective.MIN_STEPS, "fast", "20-to-4 x2", 17, 16, 57),
    ]


class TestRunConfig:
    def test_hash_is_stable(self):
        assert RunConfig(master_seed=1).config_hash() == RunConfig(master_seed=1).config_hash()

    def test_hash_covers_every_field(self):
        base = RunConfig(master_seed=1)
        assert base.config_hash() != RunConfig(master_seed=2).config_hash()
        assert base.config_hash() != RunConfig(master_seed=1, bf_cap=4).config_hash()
        assert base.config_hash() != RunConfig(master_seed=1, consume_mode="uniform").config_hash()

    def test_header_fields(self):
        header = _header()
        assert header["tool"] == "tilestep"
        assert header["master_seed"] == 42
        assert len(header["config_hash"]) == 16


class TestCircuitsJsonl:
    def test_round_trip(self, tmp_path):
        path = str(tmp_path / "circuits.jsonl")
        circuits = generate_circuits(SweepConfig(qubit_values=(10, 20), column_count=3, tgate_count=3))
        classes = classify_dataset(circuits)
        write_circuits_jsonl(path, circuits, _header(), classes)
        header, loaded, labels = read_circuits_jsonl(path)
        assert header == {k: v for k, v in _header().items()}
        assert [(c.id, c.qubits, c.columns, c.t_gates, c.seed) for c in loaded] == [
            (c.id, c.qubits, c.columns, c.t_gates, c.seed) for c in circuits
        ]
        assert labels == {c.id: cl.label for c, cl in zip(circuits, classes)}

    def test_grid_round_trip(self, tmp_path):
        path = str(tmp_path / "circuits.jsonl")
        circuits = generate_circuits(
            SweepConfig(qubit_values=(10,), column_count=2, tgate_count=2), with_grids=True
        )
        write_circuits_jsonl(path, circuits, _header())
        _, loaded, _ = read_circuits_jsonl(path)
        for orig, back in zip(circuits, loaded):
            assert np.array_equal(orig.grid, back.grid)

    def test_byte_identical_rewrites(self, tmp_path):
        a, b = str(tmp_path / "a.jsonl"), str(tmp_path / "b.jsonl")
        circuits = generate_circuits(SweepConfig(qubit_values=(30,), column_count=4, tgate_count=4))
        classes = classify_dataset(circuits)
        write_circuits_jsonl(a, circuits, _header(), classes)
        write_circuits_jsonl(b, circuits, _header(), classes)
        assert open(a, "rb").read() == open(b, "rb").read()

    def test_header_line_required(self, tmp_path):
        path = tmp_path / "bad.jsonl"
        path.write_text('{"id":"x","qubits":1,"columns":1,"t_gates":1,"seed":0}\n')
        with pytest.raises(ValidationError):
            read_circuits_jsonl(str(path))

    def test_empty_file_rejected(self, tmp_path):
        path = tmp_path / "empty.jsonl"
        path.write_text("")
        with pytest.raises(ValidationError):
            read_circuits_jsonl(str(path))

    def test_mismatched_classes_rejected(self, tmp_path):
        circuits = generate_circuits(SweepConfig(qubit_values=(10,), column_count=2, tgate_count=2))
        with pytest.raises(ValidationError):
            write_circuits_jsonl(str(tmp_path / "x.jsonl"), circuits, _header(), [])


class TestResultsCsv:
    def test_round_trip(self, tmp_path):
        path = str(tmp_path / "results.csv")
        write_results_csv(path, _rows(), _header())
        header, loaded = read_results_csv(path)
        assert loaded == _rows()
        assert header["tool"] == "tilestep"
        assert header["config_hash"] == _header()["config_hash"]
        assert header["master_seed"] == "42"

    def test_column_order(self, tmp_path):
        path = tmp_path / "results.csv"
        write_results_csv(str(path), _rows(), _header())
        lines = path.read_text().splitlines()
        assert lines[0].startswith("# tool=")
        assert lines[3] == ",".join(RESULTS_COLUMNS)

    def test_append_then_read(self, tmp_path):
        path = str(tmp_path / "results.csv")
        rows = _rows()
        write_results_csv(path, rows[:1], _header())
        append_results_csv(path, rows[1:])
        _, loaded = read_results_csv(path)
        assert loaded == rows

    def test_byte_identical_rewrites(self, tmp_path):
        a, b = str(tmp_path / "a.csv"), str(tmp_path / "b.csv")
        write_results_csv(a, _rows(), _header())
        write_results_csv(b, _rows(), _header())
        assert open(a, "rb").read() == open(b, "rb").read()


class TestParetoCsv:
    def test_layout(self, tmp_path):
        path = tmp_path / "pareto.csv"
        write_pareto_csv(
            str(path),
            [("c1", "bf", "min-tiles", 29, 11, True), ("c1", "random", "min-tiles", 31, 19, False)],
            _header(),
        )
        lines = path.read_text().splitlines()
        assert lines[3] == ",".join(PARETO_COLUMNS)
        assert lines[4] == "c1,bf,min-tiles,29,11,1"
        assert lines[5] == "c1,random,min-tiles,31,19,0"


class TestAnalysisJson:
    def test_header_embedded_and_parseable(self, tmp_path):
        path = tmp_path / "analysis.json"
        write_analysis_json(str(path), {"pct_increase": {}, "pareto": {}}, _header())
        payload = json.loads(path.read_text())
        assert payload["header"]["tool"] == "tilestep"
        assert "pct_increase" in payload

    def test_deterministic_bytes(self, tmp_path):
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        analysis = {"pareto": {"fronts": [1, 2]}, "ratio_stats": {"skipped": 0}}
        write_analysis_json(str(a), analysis, _header())
        write_analysis_json(str(b), analysis, _header())
        assert a.read_bytes() == b.read_bytes()


class TestTableCsv:
    def test_plain_table(self, tmp_path):
        path = tmp_path / "sub" / "curve.csv"
        write_table_csv(str(path), ("x", "y"), [(1, 2), (3, 4)])
        assert path.read_text() == "x,y\n1,2\n3,4\n"
