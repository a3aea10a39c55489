"""Search strategies over (data block, protocol multiset) layouts.

Four strategies with very different search costs:

* random: a fixed objective-to-layout mapping, no search at all.
* brute force: every block paired with every protocol multiset up to the cap.
* dp: per-block incremental table over columns, pruned by completion time.
* greedy: a single scalar protocol metric, applied repeatedly.

All strategies emit a ResultSet of simulated candidate layouts; objective
selection is a separate step shared by all of them.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass

from .blocks import (
    DataBlockKind,
    PROTOCOL_ORDER,
    ProtocolId,
    ProtocolSpec,
    all_protocols,
    protocol_outputs,
    protocol_steps,
    protocol_tiles,
)
from .circuits import CircuitSpec
from .errors import ConfigurationError, ResourceLimitError, ValidationError
from .sim import LayoutConfig, SimOutcome, availability_times, simulate

DEFAULT_BF_CAP = 5
DEFAULT_GREEDY_CAP = 2
DEFAULT_MAX_DP_STATES = 100_000


class Algorithm(enum.Enum):
    RANDOM = "random"
    BRUTE_FORCE = "bf"
    DP = "dp"
    GREEDY = "greedy"


class Objective(enum.Enum):
    MIN_TILES = "min-tiles"
    MIN_STEPS = "min-steps"
    BALANCED = "balanced"


@dataclass(frozen=True)
class ResultEntry:
    """One simulated candidate layout."""

    config: LayoutConfig
    outcome: SimOutcome


@dataclass(frozen=True)
class ResultSet:
    """All candidates one strategy produced for one circuit."""

    algorithm: Algorithm
    circuit_id: str
    cap: int
    entries: tuple[ResultEntry, ...]


@dataclass(frozen=True)
class ObjectiveSelection:
    """A ResultSet entry chosen for one objective.

    midpoint is only set for the balanced objective: the (tiles, steps)
    point halfway between the min-tiles and min-steps entries.
    """

    objective: Objective
    entry: ResultEntry
    midpoint: tuple[float, float] | None = None


def _block_index(block: DataBlockKind) -> int:
    return list(DataBlockKind).index(block)


def _entry_key(entry: ResultEntry) -> tuple[int, tuple[int, ...]]:
    return (_block_index(entry.config.block), entry.config.counts())


# ---------------------------------------------------------------------------
# Random
# ---------------------------------------------------------------------------

#: Fixed layout per objective; no simulation feedback involved.
RANDOM_CHOICES: dict[Objective, LayoutConfig] = {
    Objective.MIN_TILES: LayoutConfig(DataBlockKind.COMPACT, (ProtocolId.P15TO1,)),
    Objective.BALANCED: LayoutConfig(DataBlockKind.INTERMEDIATE, (ProtocolId.P116TO12,)),
    Objective.MIN_STEPS: LayoutConfig(DataBlockKind.FAST, (ProtocolId.P20TO4,)),
}


def random_config(objective: Objective) -> LayoutConfig:
    """The fixed layout the random strategy assigns to an objective."""
    return RANDOM_CHOICES[objective]


def _consume_for(consume, block: DataBlockKind):
    """Per-block consumption durations; ``consume`` maps block kind to array."""
    return None if consume is None else consume[block]


def random_optimize(
    circuit: CircuitSpec, objective: Objective, consume=None
) -> ObjectiveSelection:
    """Simulate the fixed layout for one objective."""
    cfg = random_config(objective)
    outcome = simulate(
        circuit.qubits, circuit.columns, cfg, _consume_for(consume, cfg.block)
    )
    return ObjectiveSelection(objective=objective, entry=ResultEntry(cfg, outcome))


# ---------------------------------------------------------------------------
# Brute force
# ---------------------------------------------------------------------------

def multisets_up_to(cap: int) -> list[tuple[ProtocolId, ...]]:
    """Every protocol multiset of size 1..cap, in enumeration order."""
    if cap < 1:
        raise ValidationError(f"cap must be >= 1, got {cap}")
    out: list[tuple[ProtocolId, ...]] = []
    for size in range(1, cap + 1):
        out.extend(itertools.combinations_with_replacement(PROTOCOL_ORDER, size))
    return out


def brute_force(
    circuit: CircuitSpec, cap: int = DEFAULT_BF_CAP, consume=None
) -> ResultSet:
    """Simulate every layout: each block crossed with every multiset.

    Entry order is deterministic: blocks in declaration order, multisets by
    size then lexicographically.
    """
    multisets = multisets_up_to(cap)
    entries = []
    for block in DataBlockKind:
        durations = _consume_for(consume, block)
        for protocols in multisets:
            cfg = LayoutConfig(block, protocols)
            entries.append(
                ResultEntry(
                    cfg, simulate(circuit.qubits, circuit.columns, cfg, durations)
                )
            )
    return ResultSet(Algorithm.BRUTE_FORCE, circuit.id, cap, tuple(entries))


# ---------------------------------------------------------------------------
# DP
# ---------------------------------------------------------------------------

def _dp_frontier(
    circuit: CircuitSpec,
    block: DataBlockKind,
    cap: int,
    max_states: int,
    durations=None,
) -> list[tuple[int, ...]]:
    """Surviving protocol multisets after the per-column table sweep.

    The table advances one circuit column at a time. A state is the protocol
    multiset committed so far plus the completion time s of the latest
    column; its cost is tiles added plus elapsed steps, which for a fixed
    multiset is minimized by minimizing s. Transitions either reuse the
    multiset or add one more instance (while under the cap). Two prunes keep
    the table narrow without losing optima:

    * same multiset, same column: keep the smallest s (cost is tiles + s,
      so the smaller s is better in both coordinates);
    * same completion time, same column: keep the lowest-cost state, ties
      to the one with more unconsumed states banked, then to the
      lexicographically smaller count vector.
    """
    columns = circuit.columns
    s_b = block.max_consume_steps
    avail_cache: dict[tuple[int, ...], object] = {}

    def avail(counts: tuple[int, ...]):
        arr = avail_cache.get(counts)
        if arr is None:
            protocols = tuple(
                p for p, n in zip(PROTOCOL_ORDER, counts) for _ in range(n)
            )
            arr = availability_times(protocols, columns)
            avail_cache[counts] = arr
        return arr

    def tiles_of(counts: tuple[int, ...]) -> int:
        return sum(n * protocol_tiles(p) for p, n in zip(PROTOCOL_ORDER, counts))

    def banked(counts: tuple[int, ...], step: int, consumed: int) -> int:
        made = sum(
            n * protocol_outputs(p) * (step // protocol_steps(p))
            for p, n in zip(PROTOCOL_ORDER, counts)
        )
        return made - consumed

    empty = (0, 0, 0, 0)
    states: dict[tuple[int, ...], int] = {empty: 0}
    for col in range(1, columns + 1):
        consume = s_b if durations is None else int(durations[col - 1])
        best_s: dict[tuple[int, ...], int] = {}
        for counts, s_prev in states.items():
            size = sum(counts)
            children = []
            if size:
                children.append(counts)
            if size < cap:
                for j in range(len(PROTOCOL_ORDER)):
                    grown = list(counts)
                    grown[j] += 1
                    children.append(tuple(grown))
            for child in children:
                s_new = max(s_prev + consume, int(avail(child)[col - 1]))
                held = best_s.get(child)
                if held is None or s_new < held:
                    best_s[child] = s_new
        # One winner per completion time: lowest cost, then most banked,
        # then smallest count vector.
        slots: dict[int, tuple[int, int, tuple[int, ...]]] = {}
        for counts, s_new in best_s.items():
            key = (tiles_of(counts) + s_new, -banked(counts, s_new, col), counts)
            held = slots.get(s_new)
            if held is None or key < held:
                slots[s_new] = key
        states = {key[2]: s for s, key in slots.items()}
        if len(states) > max_states:
            raise ResourceLimitError(
                f"state table exceeded max_states={max_states} at column {col}"
            )
    return sorted(states.keys())


def dp_optimize(
    circuit: CircuitSpec,
    cap: int = DEFAULT_BF_CAP,
    max_states: int = DEFAULT_MAX_DP_STATES,
    consume=None,
) -> ResultSet:
    """Tabular search per block; surviving multisets are re-simulated.

    The cap matches the brute-force cap by default so the DP explores a
    subset of the same layout space.
    """
    if cap < 1:
        raise ValidationError(f"cap must be >= 1, got {cap}")
    if circuit.columns < 1:
        raise ValidationError("dp search needs at least one column")
    entries = []
    for block in DataBlockKind:
        durations = _consume_for(consume, block)
        for counts in _dp_frontier(circuit, block, cap, max_states, durations):
            protocols = tuple(
                p for p, n in zip(PROTOCOL_ORDER, counts) for _ in range(n)
            )
            cfg = LayoutConfig(block, protocols)
            entries.append(
                ResultEntry(
                    cfg, simulate(circuit.qubits, circuit.columns, cfg, durations)
                )
            )
    return ResultSet(Algorithm.DP, circuit.id, cap, tuple(entries))


# ---------------------------------------------------------------------------
# Greedy
# ---------------------------------------------------------------------------

def greedy_metric(protocol: ProtocolSpec) -> float:
    """Scalar desirability of a protocol: tiles per output plus round steps.

    Lower is better; the metric prices one instance's floor space across its
    outputs and adds its latency.
    """
    return protocol.tiles / protocol.k_outputs + protocol.steps


def greedy_selection(cap: int, p_error: float = 1e-4) -> tuple[ProtocolId, ...]:
    """Pick ``cap`` instances by repeated metric argmin, ties by order."""
    if cap < 1:
        raise ValidationError(f"cap must be >= 1, got {cap}")
    specs = all_protocols(p_error)
    chosen: list[ProtocolId] = []
    for _ in range(cap):
        best = min(specs, key=lambda s: (greedy_metric(s), PROTOCOL_ORDER.index(s.id)))
        chosen.append(best.id)
    return tuple(chosen)


def greedy_optimize(
    circuit: CircuitSpec,
    cap: int = DEFAULT_GREEDY_CAP,
    p_error: float = 1e-4,
    consume=None,
) -> ResultSet:
    """One candidate per block, all sharing the metric-chosen multiset."""
    protocols = greedy_selection(cap, p_error)
    entries = []
    for block in DataBlockKind:
        cfg = LayoutConfig(block, protocols)
        entries.append(
            ResultEntry(
                cfg,
                simulate(
                    circuit.qubits,
                    circuit.columns,
                    cfg,
                    _consume_for(consume, block),
                ),
            )
        )
    return ResultSet(Algorithm.GREEDY, circuit.id, cap, tuple(entries))


# ---------------------------------------------------------------------------
# Objective selection
# ---------------------------------------------------------------------------

def _require_entries(results: ResultSet) -> None:
    if not results.entries:
        raise ConfigurationError("result set has no entries to select from")


def select_min_tiles(results: ResultSet) -> ObjectiveSelection:
    """Fewest tiles; ties by steps, then block order, then count vector."""
    _require_entries(results)
    entry = min(
        results.entries,
        key=lambda e: (e.outcome.total_tiles, e.outcome.total_steps, *_entry_key(e)),
    )
    return ObjectiveSelection(Objective.MIN_TILES, entry)


def select_min_steps(results: ResultSet) -> ObjectiveSelection:
    """Fewest steps; ties by tiles, then block order, then count vector."""
    _require_entries(results)
    entry = min(
        results.entries,
        key=lambda e: (e.outcome.total_steps, e.outcome.total_tiles, *_entry_key(e)),
    )
    return ObjectiveSelection(Objective.MIN_STEPS, entry)


def select_balanced(results: ResultSet) -> ObjectiveSelection:
    """Entry closest to the midpoint of the two extreme selections.

    Distance is Euclidean in the (tiles, steps) plane; ties by tiles, steps,
    block order, count vector. Comparisons use 4x the squared distance so
    they stay in exact integers.
    """
    _require_entries(results)
    low_tiles = select_min_tiles(results).entry.outcome
    low_steps = select_min_steps(results).entry.outcome
    tile_sum = low_tiles.total_tiles + low_steps.total_tiles
    step_sum = low_tiles.total_steps + low_steps.total_steps

    def key(e: ResultEntry):
        dist = (2 * e.outcome.total_tiles - tile_sum) ** 2
        dist += (2 * e.outcome.total_steps - step_sum) ** 2
        return (dist, e.outcome.total_tiles, e.outcome.total_steps, *_entry_key(e))

    entry = min(results.entries, key=key)
    return ObjectiveSelection(
        Objective.BALANCED, entry, midpoint=(tile_sum / 2, step_sum / 2)
    )


def select_for(results: ResultSet, objective: Objective) -> ObjectiveSelection:
    """Apply the named objective to a result set."""
    if not results.entries:
        raise ConfigurationError("result set has no entries to select from")
    if objective is Objective.MIN_TILES:
        return select_min_tiles(results)
    if objective is Objective.MIN_STEPS:
        return select_min_steps(results)
    return select_balanced(results)
