"""Command-line driver.

Subcommands: generate (build the circuit dataset), optimize (run strategies
over it), analyze (error tables, Pareto fronts, ratios), estimate (physical
resources, search costs, curve CSVs), recommend (strategy lookup).

Exit codes: 0 success, 1 validation error, 2 I/O error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from . import __version__
from .analyze import Constraint, RecommendGoal, build_analysis, recommend, search_cost
from .blocks import DataBlockKind, physical_resources
from .circuits import (
    DEFAULT_MASTER_SEED,
    CircuitSpec,
    SweepConfig,
    classify_dataset,
    generate_circuits,
    geometric_values,
)
from .errors import ValidationError
from .optimize import (
    Algorithm,
    DEFAULT_BF_CAP,
    DEFAULT_GREEDY_CAP,
    Objective,
    ObjectiveSelection,
    brute_force,
    dp_optimize,
    greedy_optimize,
    random_optimize,
    select_for,
)
from .rng import derive_seed
from .sim import trace as sim_trace
from .storage import (
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

ALGORITHM_NAMES = tuple(a.value for a in Algorithm)
OBJECTIVE_NAMES = tuple(o.value for o in Objective)


class _Parser(argparse.ArgumentParser):
    """argparse reports usage errors via exit(2); route them to exit code 1."""

    def error(self, message):
        raise ValidationError(message)


def _parse_int_list(text: str, flag: str) -> tuple[int, ...]:
    try:
        return tuple(int(part) for part in text.split(",") if part.strip())
    except ValueError as exc:
        raise ValidationError(f"{flag} expects comma-separated integers: {text}") from exc


def _parse_names(text: str, valid: tuple[str, ...], flag: str) -> tuple[str, ...]:
    names = tuple(part.strip() for part in text.split(",") if part.strip())
    if not names:
        raise ValidationError(f"{flag} must name at least one entry")
    for name in names:
        if name not in valid:
            raise ValidationError(
                f"unknown name {name!r} for {flag}; valid: {', '.join(valid)}"
            )
    return names


def build_parser() -> _Parser:
    parser = _Parser(prog="tilestep", description=__doc__)
    parser.add_argument("--version", action="version", version=f"tilestep {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", help="generate the circuit dataset")
    gen.add_argument("--out", default="circuits.jsonl", help="output JSONL path")
    gen.add_argument("--seed", type=int, default=DEFAULT_MASTER_SEED)
    gen.add_argument(
        "--qubit-values",
        default="10,20,30,40,50,60,70,80,90,100",
        help="comma-separated qubit counts",
    )
    gen.add_argument("--column-count", type=int, default=25)
    gen.add_argument("--tgate-count", type=int, default=25)
    gen.add_argument("--column-max-factor", type=int, default=100)
    gen.add_argument(
        "--grids",
        action="store_true",
        help="materialize and store every circuit's Pauli grid (large)",
    )

    opt = sub.add_parser("optimize", help="run strategies over a dataset")
    opt.add_argument("--circuits", required=True, help="circuits.jsonl from generate")
    opt.add_argument("--out", default="results.csv")
    opt.add_argument("--algorithms", default=",".join(ALGORITHM_NAMES))
    opt.add_argument("--objectives", default=",".join(OBJECTIVE_NAMES))
    opt.add_argument("--p-error", type=float, default=1e-4)
    opt.add_argument("--bf-cap", type=int, default=DEFAULT_BF_CAP)
    opt.add_argument("--greedy-cap", type=int, default=DEFAULT_GREEDY_CAP)
    opt.add_argument("--workers", type=int, default=os.cpu_count() or 1)
    opt.add_argument(
        "--consume-mode",
        choices=("max", "uniform"),
        default="max",
        help="per-column consumption time: worst case or uniform in [1, s_b]",
    )
    opt.add_argument(
        "--trace",
        action="store_true",
        help="write per-column timelines for every chosen layout",
    )
    opt.add_argument(
        "--fresh",
        action="store_true",
        help="overwrite the output instead of resuming into it",
    )

    ana = sub.add_parser("analyze", help="aggregate a results table")
    ana.add_argument("--results", required=True)
    ana.add_argument("--circuits", help="optional dataset for per-axis breakdowns")
    ana.add_argument("--out-json", default="analysis.json")
    ana.add_argument("--out-pareto", default="pareto.csv")

    est = sub.add_parser("estimate", help="physical resources and search costs")
    est.add_argument("--tiles", type=int)
    est.add_argument("--steps", type=int)
    est.add_argument("--distance", type=int, default=3)
    est.add_argument("--search-cost", choices=ALGORITHM_NAMES)
    est.add_argument("--columns", type=int)
    est.add_argument("--max-steps", type=int)
    est.add_argument("--cap", type=int, default=DEFAULT_BF_CAP)
    est.add_argument("--block-tiles-csv", help="write per-kind tile curves")
    est.add_argument("--max-qubits", type=int, default=100)
    est.add_argument("--block-steps-csv", help="write per-kind worst-case step curves")
    est.add_argument("--max-columns", type=int, default=100)
    est.add_argument("--search-cost-csv", help="write per-strategy cost curves")
    est.add_argument("--curve-max-columns", type=int, default=10_000_000)

    rec = sub.add_parser("recommend", help="strategy lookup for a goal")
    rec.add_argument(
        "--goal", required=True, choices=tuple(g.value for g in RecommendGoal)
    )
    rec.add_argument(
        "--constraints",
        default="",
        help="comma-separated from: time-limited, memory-limited",
    )
    rec.add_argument("--json", action="store_true", dest="as_json")
    return parser


# ---------------------------------------------------------------------------
# generate
# ---------------------------------------------------------------------------

def cmd_generate(args) -> int:
    cfg = SweepConfig(
        qubit_values=_parse_int_list(args.qubit_values, "--qubit-values"),
        column_count=args.column_count,
        tgate_count=args.tgate_count,
        column_max_factor=args.column_max_factor,
        master_seed=args.seed,
    )
    run = RunConfig(
        master_seed=args.seed,
        qubit_values=cfg.qubit_values,
        column_count=cfg.column_count,
        tgate_count=cfg.tgate_count,
        column_max_factor=cfg.column_max_factor,
        with_grids=args.grids,
    )
    circuits = generate_circuits(cfg, with_grids=args.grids)
    classes = classify_dataset(circuits)
    write_circuits_jsonl(args.out, circuits, header_dict(run), classes)
    print(f"wrote {len(circuits)} circuits to {args.out}")
    return 0


# ---------------------------------------------------------------------------
# optimize
# ---------------------------------------------------------------------------

def _consume_times(mode: str, master_seed: int, circuit: CircuitSpec):
    """Per-block consumption durations for one circuit, or None for worst case."""
    if mode == "max":
        return None
    out = {}
    for idx, block in enumerate(DataBlockKind):
        rng = np.random.default_rng(derive_seed(master_seed, circuit.seed, idx))
        out[block] = rng.integers(
            1, block.max_consume_steps + 1, size=circuit.columns, dtype=np.int64
        )
    return out


def _row_from(circuit_id: str, algorithm: Algorithm, sel: ObjectiveSelection) -> ResultRow:
    return ResultRow(
        circuit_id=circuit_id,
        algorithm=algorithm,
        objective=sel.objective,
        data_block=sel.entry.config.block.value,
        protocols=sel.entry.config.describe(),
        total_steps=sel.entry.outcome.total_steps,
        idle_steps=sel.entry.outcome.idle_steps,
        total_tiles=sel.entry.outcome.total_tiles,
    )


def _optimize_one(task: tuple) -> list[ResultRow]:
    (
        circuit_id,
        qubits,
        columns,
        t_gates,
        seed,
        algorithms,
        objectives,
        p_error,
        bf_cap,
        greedy_cap,
        consume_mode,
        master_seed,
    ) = task
    circuit = CircuitSpec(
        id=circuit_id, qubits=qubits, columns=columns, t_gates=t_gates, seed=seed
    )
    consume = _consume_times(consume_mode, master_seed, circuit)
    rows: list[ResultRow] = []
    for alg_name in algorithms:
        algorithm = Algorithm(alg_name)
        if algorithm is Algorithm.RANDOM:
            for obj_name in objectives:
                sel = random_optimize(circuit, Objective(obj_name), consume)
                rows.append(_row_from(circuit_id, algorithm, sel))
            continue
        if algorithm is Algorithm.BRUTE_FORCE:
            results = brute_force(circuit, bf_cap, consume)
        elif algorithm is Algorithm.DP:
            results = dp_optimize(circuit, bf_cap, consume=consume)
        else:
            results = greedy_optimize(circuit, greedy_cap, p_error, consume)
        for obj_name in objectives:
            sel = select_for(results, Objective(obj_name))
            rows.append(_row_from(circuit_id, algorithm, sel))
    return rows


def _write_traces(
    out_dir: str, rows: list[ResultRow], circuits: dict[str, CircuitSpec],
    consume_mode: str, master_seed: int,
) -> None:
    trace_dir = os.path.join(out_dir or ".", "trace")
    os.makedirs(trace_dir, exist_ok=True)
    from .sim import LayoutConfig
    from .blocks import ProtocolId

    for row in rows:
        circuit = circuits[row.circuit_id]
        protocols = []
        for part in row.protocols.split(";"):
            name, count = part.rsplit(" x", 1)
            protocols.extend([ProtocolId(name)] * int(count))
        cfg = LayoutConfig(DataBlockKind(row.data_block), tuple(protocols))
        consume = _consume_times(consume_mode, master_seed, circuit)
        durations = None if consume is None else consume[cfg.block]
        rows_out = sim_trace(circuit.qubits, circuit.columns, cfg, durations)
        path = os.path.join(
            trace_dir,
            f"{row.circuit_id}__{row.algorithm.value}__{row.objective.value}.csv",
        )
        write_table_csv(
            path,
            (
                "column_index",
                "start_step",
                "availability_step",
                "completion_step",
                "stalled_steps",
            ),
            (
                (r.column_index, r.start_step, r.availability_step,
                 r.completion_step, r.stalled_steps)
                for r in rows_out
            ),
        )


def cmd_optimize(args) -> int:
    algorithms = _parse_names(args.algorithms, ALGORITHM_NAMES, "--algorithms")
    objectives = _parse_names(args.objectives, OBJECTIVE_NAMES, "--objectives")
    if args.bf_cap < 1 or args.greedy_cap < 1:
        raise ValidationError("caps must be >= 1")
    if not 0.0 <= args.p_error < 1.0:
        raise ValidationError(f"p_error must be in [0, 1), got {args.p_error}")
    if args.workers < 1:
        raise ValidationError(f"workers must be >= 1, got {args.workers}")

    circuits_header, circuits, _ = read_circuits_jsonl(args.circuits)
    master_seed = int(circuits_header.get("master_seed", DEFAULT_MASTER_SEED))
    run = RunConfig(
        master_seed=master_seed,
        p_error=args.p_error,
        bf_cap=args.bf_cap,
        greedy_cap=args.greedy_cap,
        algorithms=algorithms,
        objectives=objectives,
        consume_mode=args.consume_mode,
    )
    header = header_dict(run)

    done: set[tuple[str, str, str]] = set()
    if os.path.exists(args.out) and not args.fresh:
        existing_header, existing_rows = read_results_csv(args.out)
        if existing_header.get("config_hash") not in (None, header["config_hash"]):
            raise ValidationError(
                f"{args.out} was produced with config {existing_header.get('config_hash')}; "
                f"this run is {header['config_hash']} (use --fresh to overwrite)"
            )
        done = {
            (r.circuit_id, r.algorithm.value, r.objective.value)
            for r in existing_rows
        }

    expected_per_circuit = len(algorithms) * len(objectives)
    pending = [
        c
        for c in circuits
        if sum(
            1
            for a in algorithms
            for o in objectives
            if (c.id, a, o) in done
        )
        < expected_per_circuit
    ]

    tasks = [
        (
            c.id,
            c.qubits,
            c.columns,
            c.t_gates,
            c.seed,
            algorithms,
            objectives,
            args.p_error,
            args.bf_cap,
            args.greedy_cap,
            args.consume_mode,
            master_seed,
        )
        for c in pending
    ]
    if args.workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=args.workers) as pool:
            per_circuit = list(pool.map(_optimize_one, tasks, chunksize=8))
    else:
        per_circuit = [_optimize_one(t) for t in tasks]

    new_rows = [
        row
        for rows in per_circuit
        for row in rows
        if (row.circuit_id, row.algorithm.value, row.objective.value) not in done
    ]
    if done and not args.fresh:
        append_results_csv(args.out, new_rows)
        total = len(done) + len(new_rows)
    else:
        write_results_csv(args.out, new_rows, header)
        total = len(new_rows)
    if args.trace:
        by_id = {c.id: c for c in circuits}
        _, all_rows = read_results_csv(args.out)
        _write_traces(
            os.path.dirname(args.out), all_rows, by_id, args.consume_mode, master_seed
        )
    print(
        f"wrote {len(new_rows)} new rows ({total} total) to {args.out} "
        f"for {len(circuits)} circuits"
    )
    return 0


# ---------------------------------------------------------------------------
# analyze
# ---------------------------------------------------------------------------

def cmd_analyze(args) -> int:
    results_header, rows = read_results_csv(args.results)
    if not rows:
        raise ValidationError(f"{args.results} holds no result rows")
    if not any(r.algorithm is Algorithm.BRUTE_FORCE for r in rows):
        print(
            "warning: no brute-force rows; percentage-increase entries are absent",
            file=sys.stderr,
        )
    params = None
    labels = None
    if args.circuits:
        _, circuits, label_map = read_circuits_jsonl(args.circuits)
        params = {c.id: (c.qubits, c.columns, c.t_gates) for c in circuits}
        labels = label_map or None
    analysis, fronts = build_analysis(rows, params, labels)

    header = {
        "tool": results_header.get("tool", "tilestep"),
        "version": results_header.get("version", __version__),
        "config_hash": results_header.get("config_hash", "unknown"),
        "master_seed": results_header.get("master_seed", "unknown"),
    }
    front_keys = {
        (f.circuit_id, p.algorithm.value, p.objective.value,
         p.total_tiles, p.total_steps)
        for f in fronts
        for p in f.points
    }
    pareto_rows = [
        (
            r.circuit_id,
            r.algorithm.value,
            r.objective.value,
            r.total_tiles,
            r.total_steps,
            (r.circuit_id, r.algorithm.value, r.objective.value,
             r.total_tiles, r.total_steps) in front_keys,
        )
        for r in rows
    ]
    write_pareto_csv(args.out_pareto, pareto_rows, header)
    write_analysis_json(args.out_json, analysis, header)

    print("mean % increase over bf")
    print(f"{'objective':<12} {'algorithm':<10} {'mean':>9} {'count':>6}")
    for objective, per_alg in analysis["pct_increase"].items():
        for algorithm, entry in per_alg.items():
            print(
                f"{objective:<12} {algorithm:<10} "
                f"{entry['mean']:>9.2f} {entry['count']:>6}"
            )
    print(
        f"analyzed {len({r.circuit_id for r in rows})} circuits: "
        f"{args.out_json}, {args.out_pareto}"
    )
    return 0


# ---------------------------------------------------------------------------
# estimate
# ---------------------------------------------------------------------------

def cmd_estimate(args) -> int:
    did_anything = False
    output: dict = {}
    if args.tiles is not None or args.steps is not None:
        if args.tiles is None or args.steps is None:
            raise ValidationError("--tiles and --steps must be given together")
        est = physical_resources(args.tiles, args.steps, args.distance)
        output["physical"] = {
            "code_distance": est.code_distance,
            "physical_qubits": est.physical_qubits,
            "wall_clock_us": est.wall_clock_us,
        }
        did_anything = True
    if args.search_cost:
        if args.columns is None or args.max_steps is None:
            raise ValidationError(
                "--search-cost needs --columns and --max-steps"
            )
        est = search_cost(
            Algorithm(args.search_cost), args.columns, args.max_steps, args.cap
        )
        output["search_cost"] = {
            "algorithm": est.algorithm.value,
            "time_cost": est.time_cost,
            "space_cost": est.space_cost,
            "columns": est.columns,
            "max_steps": est.max_steps,
            "cap": est.cap,
        }
        did_anything = True
    if args.block_tiles_csv:
        if args.max_qubits < 1:
            raise ValidationError(f"--max-qubits must be >= 1, got {args.max_qubits}")
        from .blocks import data_block_tiles

        write_table_csv(
            args.block_tiles_csv,
            ("qubits", "compact", "intermediate", "fast"),
            (
                (
                    n,
                    data_block_tiles(DataBlockKind.COMPACT, n),
                    data_block_tiles(DataBlockKind.INTERMEDIATE, n),
                    data_block_tiles(DataBlockKind.FAST, n),
                )
                for n in range(1, args.max_qubits + 1)
            ),
        )
        did_anything = True
    if args.block_steps_csv:
        if args.max_columns < 1:
            raise ValidationError(f"--max-columns must be >= 1, got {args.max_columns}")
        write_table_csv(
            args.block_steps_csv,
            ("columns", "compact", "intermediate", "fast"),
            (
                (
                    c,
                    c * DataBlockKind.COMPACT.max_consume_steps,
                    c * DataBlockKind.INTERMEDIATE.max_consume_steps,
                    c * DataBlockKind.FAST.max_consume_steps,
                )
                for c in range(1, args.max_columns + 1)
            ),
        )
        did_anything = True
    if args.search_cost_csv:
        # Worst-case steps modeled as 11 per column: the production period
        # of the cheapest protocol when a single instance feeds the block.
        columns_grid = geometric_values(1, args.curve_max_columns, 29)
        seen = sorted(set(columns_grid))
        rows = []
        for c in seen:
            s_max = 11 * c
            per = {
                a: search_cost(a, c, s_max, args.cap) for a in Algorithm
            }
            rows.append(
                (
                    c,
                    s_max,
                    per[Algorithm.RANDOM].time_cost,
                    per[Algorithm.BRUTE_FORCE].time_cost,
                    per[Algorithm.DP].time_cost,
                    per[Algorithm.GREEDY].time_cost,
                    per[Algorithm.RANDOM].space_cost,
                    per[Algorithm.BRUTE_FORCE].space_cost,
                    per[Algorithm.DP].space_cost,
                    per[Algorithm.GREEDY].space_cost,
                )
            )
        write_table_csv(
            args.search_cost_csv,
            (
                "columns",
                "max_steps",
                "random_time",
                "bf_time",
                "dp_time",
                "greedy_time",
                "random_space",
                "bf_space",
                "dp_space",
                "greedy_space",
            ),
            rows,
        )
        did_anything = True
    if not did_anything:
        raise ValidationError(
            "estimate needs at least one of --tiles/--steps, --search-cost, "
            "--block-tiles-csv, --block-steps-csv, --search-cost-csv"
        )
    if output:
        print(json.dumps(output, sort_keys=True, indent=2))
    return 0


# ---------------------------------------------------------------------------
# recommend
# ---------------------------------------------------------------------------

def cmd_recommend(args) -> int:
    constraints = set()
    if args.constraints.strip():
        for name in _parse_names(
            args.constraints, tuple(c.value for c in Constraint), "--constraints"
        ):
            constraints.add(Constraint(name))
    ranked = recommend(RecommendGoal(args.goal), constraints)
    if args.as_json:
        print(
            json.dumps(
                [
                    {
                        "algorithm": r.algorithm.value,
                        "objective": r.objective.value,
                        "grade": r.grade,
                    }
                    for r in ranked
                ],
                indent=2,
            )
        )
        return 0
    if not ranked:
        print("no strategy fits the given constraints")
        return 0
    for i, r in enumerate(ranked, 1):
        print(f"{i}. {r.algorithm.value} with objective {r.objective.value} ({r.grade})")
    return 0


# ---------------------------------------------------------------------------

_COMMANDS = {
    "generate": cmd_generate,
    "optimize": cmd_optimize,
    "analyze": cmd_analyze,
    "estimate": cmd_estimate,
    "recommend": cmd_recommend,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return _COMMANDS[args.command](args)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
