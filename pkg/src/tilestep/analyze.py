"""Comparisons across strategies: error percentages, Pareto fronts,
step/tile ratios, search-cost estimates, and the strategy recommender.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .errors import ValidationError
from .optimize import Algorithm, Objective
from .storage import ResultRow

#: Fixed problem dimensions: data-block kinds and protocol count.
BLOCK_KINDS = 3
PROTOCOL_KINDS = 4


def pct_increase(value: float, baseline: float) -> float:
    """Percentage by which ``value`` exceeds ``baseline``; baseline must be > 0."""
    if baseline <= 0:
        raise ValidationError(f"baseline must be > 0, got {baseline}")
    return 100.0 * (value - baseline) / baseline


# ---------------------------------------------------------------------------
# Pareto fronts
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ParetoPoint:
    """One candidate in the (tiles, steps) plane, tagged with its origin."""

    algorithm: Algorithm
    objective: Objective
    total_tiles: int
    total_steps: int


@dataclass(frozen=True)
class ParetoFront:
    """Non-dominated points for one circuit.

    ``size`` counts distinct (tiles, steps) coordinates; duplicated
    coordinates from different strategies are all retained in ``points``.
    """

    circuit_id: str
    points: tuple[ParetoPoint, ...]
    size: int


def _dominates(a: ParetoPoint, b: ParetoPoint) -> bool:
    if a.total_tiles > b.total_tiles or a.total_steps > b.total_steps:
        return False
    return a.total_tiles < b.total_tiles or a.total_steps < b.total_steps


def pareto_front(circuit_id: str, points: list[ParetoPoint]) -> ParetoFront:
    """Filter to non-dominated points.

    A point survives unless some other point is at least as good on both
    axes and strictly better on one; exact coordinate ties survive together.
    Output is sorted by tiles, steps, then algorithm and objective order.
    """
    if not points:
        raise ValidationError("cannot take the front of an empty point set")
    kept = [
        p for p in points if not any(_dominates(q, p) for q in points)
    ]
    order = {a: i for i, a in enumerate(Algorithm)}
    obj_order = {o: i for i, o in enumerate(Objective)}
    kept.sort(
        key=lambda p: (
            p.total_tiles,
            p.total_steps,
            order[p.algorithm],
            obj_order[p.objective],
        )
    )
    coords = {(p.total_tiles, p.total_steps) for p in kept}
    return ParetoFront(circuit_id, tuple(kept), len(coords))


@dataclass(frozen=True)
class RatioStats:
    """DP-balanced versus greedy-balanced position, across circuits."""

    step_ratios: tuple[float, ...]
    tile_ratios: tuple[float, ...]
    skipped: int

    @property
    def mean_step_ratio(self) -> float:
        return sum(self.step_ratios) / len(self.step_ratios)

    @property
    def mean_tile_ratio(self) -> float:
        return sum(self.tile_ratios) / len(self.tile_ratios)


def dp_greedy_ratios(fronts: list[ParetoFront]) -> RatioStats:
    """Step and tile ratios of DP-balanced over greedy-balanced per front.

    Fronts missing either point (because it was dominated away or not run)
    are skipped and counted.
    """
    step_ratios: list[float] = []
    tile_ratios: list[float] = []
    skipped = 0
    for front in fronts:
        dp = _find(front, Algorithm.DP, Objective.BALANCED)
        greedy = _find(front, Algorithm.GREEDY, Objective.BALANCED)
        if dp is None or greedy is None:
            skipped += 1
            continue
        step_ratios.append(dp.total_steps / greedy.total_steps)
        tile_ratios.append(dp.total_tiles / greedy.total_tiles)
    return RatioStats(tuple(step_ratios), tuple(tile_ratios), skipped)


def _find(front: ParetoFront, algorithm: Algorithm, objective: Objective):
    for p in front.points:
        if p.algorithm is algorithm and p.objective is objective:
            return p
    return None


# ---------------------------------------------------------------------------
# Search-cost estimates
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SearchCostEstimate:
    """Order-of-magnitude time and space cost of one strategy's search.

    Unitless counts for comparing strategies against each other, not
    wall-clock predictions.
    """

    algorithm: Algorithm
    time_cost: int
    space_cost: int
    columns: int
    max_steps: int
    cap: int


def search_cost(
    algorithm: Algorithm, columns: int, max_steps: int, cap: int
) -> SearchCostEstimate:
    """Cost model per strategy.

    Brute force simulates every block and multiset: 3 * 4^L * C * S time,
    4^L + 3 space. The DP sweeps a C-by-S table with a constant branching
    factor: C * S * 4 time, C * S + 4 space. Greedy scores each protocol per
    slot then simulates once: L * 4 + S time, L + 4 space. Random is O(1).
    """
    if columns < 1:
        raise ValidationError(f"columns must be >= 1, got {columns}")
    if max_steps < 1:
        raise ValidationError(f"max_steps must be >= 1, got {max_steps}")
    if cap < 1:
        raise ValidationError(f"cap must be >= 1, got {cap}")
    if algorithm is Algorithm.RANDOM:
        time_cost, space_cost = 1, 1
    elif algorithm is Algorithm.BRUTE_FORCE:
        time_cost = BLOCK_KINDS * PROTOCOL_KINDS**cap * columns * max_steps
        space_cost = PROTOCOL_KINDS**cap + BLOCK_KINDS
    elif algorithm is Algorithm.DP:
        time_cost = columns * max_steps * PROTOCOL_KINDS
        space_cost = columns * max_steps + PROTOCOL_KINDS
    else:
        time_cost = cap * PROTOCOL_KINDS + max_steps
        space_cost = cap + PROTOCOL_KINDS
    return SearchCostEstimate(algorithm, time_cost, space_cost, columns, max_steps, cap)


# ---------------------------------------------------------------------------
# Recommendation engine
# ---------------------------------------------------------------------------

class RecommendGoal(enum.Enum):
    MIN_STEPS = "min-steps"
    MIN_TILES = "min-tiles"
    BALANCE_STEP_LEANING = "balance-step-leaning"
    BALANCE_TILE_LEANING = "balance-tile-leaning"


class Constraint(enum.Enum):
    TIME_LIMITED = "time-limited"
    MEMORY_LIMITED = "memory-limited"


@dataclass(frozen=True)
class Recommendation:
    algorithm: Algorithm
    objective: Objective
    grade: str


#: Ranked suggestions per goal; grades describe how close the strategy's
#: answer lands to the true optimum for that goal.
_RECOMMENDATIONS: dict[RecommendGoal, tuple[Recommendation, ...]] = {
    RecommendGoal.MIN_STEPS: (
        Recommendation(Algorithm.BRUTE_FORCE, Objective.MIN_STEPS, "true"),
        Recommendation(Algorithm.GREEDY, Objective.MIN_STEPS, "nearly exact"),
    ),
    RecommendGoal.MIN_TILES: (
        Recommendation(Algorithm.BRUTE_FORCE, Objective.MIN_TILES, "true"),
        Recommendation(Algorithm.DP, Objective.MIN_TILES, "true"),
        Recommendation(Algorithm.RANDOM, Objective.MIN_TILES, "close estimate"),
    ),
    RecommendGoal.BALANCE_STEP_LEANING: (
        Recommendation(Algorithm.GREEDY, Objective.BALANCED, "true"),
    ),
    RecommendGoal.BALANCE_TILE_LEANING: (
        Recommendation(Algorithm.DP, Objective.BALANCED, "true"),
    ),
}


def recommend(
    goal: RecommendGoal, constraints: frozenset[Constraint] | set[Constraint] = frozenset()
) -> list[Recommendation]:
    """Ranked strategy suggestions for a goal under resource constraints.

    Time-limited drops brute force; memory-limited drops the DP. The list
    may come back empty when constraints remove every candidate.
    """
    ranked = list(_RECOMMENDATIONS[goal])
    if Constraint.TIME_LIMITED in constraints:
        ranked = [r for r in ranked if r.algorithm is not Algorithm.BRUTE_FORCE]
    if Constraint.MEMORY_LIMITED in constraints:
        ranked = [r for r in ranked if r.algorithm is not Algorithm.DP]
    return ranked


# ---------------------------------------------------------------------------
# Run-level aggregation
# ---------------------------------------------------------------------------

_PCT_METRIC = {
    Objective.MIN_TILES: lambda row: row.total_tiles,
    Objective.MIN_STEPS: lambda row: row.total_steps,
}


def _mean(values: list[float]) -> float:
    return sum(values) / len(values)


def build_analysis(
    rows: list[ResultRow],
    params: dict[str, tuple[int, int, int]] | None = None,
    labels: dict[str, str] | None = None,
) -> tuple[dict, list[ParetoFront]]:
    """Aggregate a results table into the analysis bundle.

    Args:
        rows: Every (circuit, algorithm, objective) result.
        params: Optional circuit id -> (qubits, columns, t_gates), enabling
            per-axis error breakdowns.
        labels: Optional circuit id -> class label, enabling per-class
            ratio breakdowns.

    Returns:
        (analysis dict ready for JSON, per-circuit Pareto fronts).
    """
    if not rows:
        raise ValidationError("no result rows to analyze")
    by_circuit: dict[str, dict[tuple[Algorithm, Objective], ResultRow]] = {}
    circuit_order: list[str] = []
    for row in rows:
        slot = by_circuit.setdefault(row.circuit_id, {})
        if not slot:
            circuit_order.append(row.circuit_id)
        slot[(row.algorithm, row.objective)] = row

    # Percentage increase over brute force, per algorithm and objective.
    pct_table: dict[str, dict[str, dict]] = {}
    for objective, metric in _PCT_METRIC.items():
        per_alg: dict[str, dict] = {}
        for algorithm in Algorithm:
            samples: list[tuple[str, float]] = []
            for circuit_id in circuit_order:
                slot = by_circuit[circuit_id]
                base = slot.get((Algorithm.BRUTE_FORCE, objective))
                cand = slot.get((algorithm, objective))
                if base is None or cand is None:
                    continue
                samples.append(
                    (circuit_id, pct_increase(metric(cand), metric(base)))
                )
            if not samples:
                continue
            entry: dict = {
                "mean": _mean([v for _, v in samples]),
                "count": len(samples),
            }
            if params:
                for axis, idx in (("qubits", 0), ("columns", 1), ("t_gates", 2)):
                    groups: dict[int, list[float]] = {}
                    for circuit_id, value in samples:
                        if circuit_id in params:
                            groups.setdefault(params[circuit_id][idx], []).append(value)
                    entry[f"by_{axis}"] = {
                        str(k): _mean(v) for k, v in sorted(groups.items())
                    }
            per_alg[algorithm.value] = entry
        pct_table[objective.value] = per_alg

    # Pareto fronts over every circuit's full candidate list.
    fronts: list[ParetoFront] = []
    for circuit_id in circuit_order:
        points = [
            ParetoPoint(alg, obj, row.total_tiles, row.total_steps)
            for (alg, obj), row in by_circuit[circuit_id].items()
        ]
        fronts.append(pareto_front(circuit_id, points))
    single = sum(1 for f in fronts if f.size == 1)

    ratios = dp_greedy_ratios(fronts)
    ratio_block: dict = {"skipped": ratios.skipped, "count": len(ratios.step_ratios)}
    if ratios.step_ratios:
        ratio_block["mean_step_ratio"] = ratios.mean_step_ratio
        ratio_block["mean_tile_ratio"] = ratios.mean_tile_ratio
        ratio_block["frac_step_ratio_ge_1"] = _mean(
            [1.0 if r >= 1.0 else 0.0 for r in ratios.step_ratios]
        )
        ratio_block["frac_tile_ratio_le_1"] = _mean(
            [1.0 if r <= 1.0 else 0.0 for r in ratios.tile_ratios]
        )
    if labels:
        per_group: dict[str, dict] = {}
        grouped: dict[str, list[tuple[float, float]]] = {}
        ratio_iter = iter(zip(ratios.step_ratios, ratios.tile_ratios))
        for front in fronts:
            dp = _find(front, Algorithm.DP, Objective.BALANCED)
            greedy = _find(front, Algorithm.GREEDY, Objective.BALANCED)
            if dp is None or greedy is None:
                continue
            pair = next(ratio_iter)
            label = labels.get(front.circuit_id)
            if label is None or len(label) != 3:
                continue
            for prefix, ch in zip(("depth", "density", "size"), label):
                grouped.setdefault(f"{prefix}:{ch}", []).append(pair)
        for key, pairs in sorted(grouped.items()):
            per_group[key] = {
                "mean_step_ratio": _mean([s for s, _ in pairs]),
                "mean_tile_ratio": _mean([t for _, t in pairs]),
                "count": len(pairs),
            }
        ratio_block["per_group"] = per_group

    analysis = {
        "pct_increase": pct_table,
        "pareto": {
            "single_front_fraction": single / len(fronts),
            "fronts": [
                {
                    "circuit_id": f.circuit_id,
                    "size": f.size,
                    "points": [
                        [p.algorithm.value, p.objective.value, p.total_tiles, p.total_steps]
                        for p in f.points
                    ],
                }
                for f in fronts
            ],
        },
        "ratio_stats": ratio_block,
        "recommendations": {
            goal.value: [
                [r.algorithm.value, r.objective.value, r.grade]
                for r in recommend(goal)
            ]
            for goal in RecommendGoal
        },
    }
    return analysis, fronts
