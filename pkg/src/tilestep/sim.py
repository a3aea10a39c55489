"""Pipeline simulator for a data block fed by distillation protocols.

Timing model: protocol instances run continuously and in parallel. Instance p
with round length S_p delivers k_p magic states at steps S_p, 2*S_p, ...;
the merged deliveries, earliest first, give availability times a_1 <= a_2
<= ... The data block consumes one state per circuit column in order, taking
s_b steps per consumption, and a column cannot finish before its state is
available:

    t_0 = 0,   t_j = max(t_{j-1} + s_b, a_j)

Total steps is t_C; idle steps is t_C - C * s_b, the time the block spent
waiting on distillation. Tile counts are additive: data block plus every
protocol instance, whether or not it was the bottleneck.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass

import numpy as np

from .blocks import (
    DataBlockKind,
    ProtocolId,
    data_block_tiles,
    protocol_index,
    protocol_outputs,
    protocol_steps,
    protocol_tiles,
)
from .errors import ConfigurationError, ValidationError


@dataclass(frozen=True)
class LayoutConfig:
    """A data block paired with a multiset of protocol instances.

    Attributes:
        block: Data-block layout family.
        protocols: Protocol instances, stored sorted in canonical protocol
            order; repeats mean multiple parallel instances.
    """

    block: DataBlockKind
    protocols: tuple[ProtocolId, ...]

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "protocols", tuple(sorted(self.protocols, key=protocol_index))
        )

    def validate(self) -> None:
        if not self.protocols:
            raise ConfigurationError("layout needs at least one protocol instance")

    def counts(self) -> tuple[int, ...]:
        """Instance count per protocol, in canonical protocol order."""
        out = [0, 0, 0, 0]
        for p in self.protocols:
            out[protocol_index(p)] += 1
        return tuple(out)

    def describe(self) -> str:
        """Human-readable multiset, e.g. ``15-to-1 x1;20-to-4 x2``."""
        parts = []
        for p, n in zip(ProtocolId, self.counts()):
            if n:
                parts.append(f"{p.value} x{n}")
        return ";".join(parts)


@dataclass(frozen=True)
class SimOutcome:
    """Result of one pipeline simulation.

    Attributes:
        total_steps: Completion time of the last column, t_C.
        idle_steps: Steps the data block spent stalled on availability.
        total_tiles: Data-block tiles plus tiles of every protocol instance.
        consumed: Magic states consumed (one per column).
        produced: Magic states produced by total_steps, counting every
            protocol's full output whether consumed or not.
    """

    total_steps: int
    idle_steps: int
    total_tiles: int
    consumed: int
    produced: int


def layout_tiles(qubits: int, cfg: LayoutConfig) -> int:
    """Additive tile count of a layout for a circuit of the given width."""
    return data_block_tiles(cfg.block, qubits) + sum(
        protocol_tiles(p) for p in cfg.protocols
    )


def availability_times(protocols: tuple[ProtocolId, ...], count: int) -> np.ndarray:
    """First ``count`` merged delivery times, earliest first.

    Instance p delivers k_p states at each multiple of S_p, so only
    ceil(count / k_p) rounds per instance can matter.
    """
    streams = []
    for p in protocols:
        s, k = protocol_steps(p), protocol_outputs(p)
        rounds = -(-count // k)
        streams.append(np.repeat(np.arange(1, rounds + 1, dtype=np.int64) * s, k)[:count])
    merged = np.concatenate(streams)
    merged.sort(kind="stable")
    return merged[:count]


def production_availability(protocols: tuple[ProtocolId, ...], count: int) -> int:
    """Step at which the count-th magic state becomes available.

    Args:
        protocols: Non-empty protocol multiset.
        count: Which delivery to report, >= 1.
    """
    if not protocols:
        raise ConfigurationError("need at least one protocol instance")
    if count < 1:
        raise ValidationError(f"count must be >= 1, got {count}")
    return int(availability_times(protocols, count)[-1])


def _produced_by(protocols: tuple[ProtocolId, ...], step: int) -> int:
    return sum(
        protocol_outputs(p) * (step // protocol_steps(p)) for p in protocols
    )


def simulate(
    qubits: int,
    columns: int,
    cfg: LayoutConfig,
    consume_times: np.ndarray | None = None,
) -> SimOutcome:
    """Run the pipeline for ``columns`` consumptions.

    Args:
        qubits: Circuit width, >= 1 (sets the data-block tile count).
        columns: Consumptions to perform, >= 0.
        cfg: Layout under test.
        consume_times: Optional per-column consumption durations; defaults to
            the block's worst case for every column. Idle steps are measured
            against the actual durations used.

    The closed form used here is equivalent to the recurrence in the module
    docstring: with S_j the cumulative consume time through column j,
    t_C = S_C + max(0, max_j(a_j - S_j)).
    """
    if qubits < 1:
        raise ValidationError(f"qubits must be >= 1, got {qubits}")
    if columns < 0:
        raise ValidationError(f"columns must be >= 0, got {columns}")
    cfg.validate()
    tiles = layout_tiles(qubits, cfg)
    if columns == 0:
        return SimOutcome(0, 0, tiles, 0, 0)

    if consume_times is None:
        consume_times = np.full(columns, cfg.block.max_consume_steps, dtype=np.int64)
    elif len(consume_times) != columns:
        raise ValidationError(
            f"consume_times has {len(consume_times)} entries for {columns} columns"
        )
    avail = availability_times(cfg.protocols, columns)
    cumulative = np.cumsum(consume_times, dtype=np.int64)
    total = int(cumulative[-1] + max(0, int((avail - cumulative).max())))
    return SimOutcome(
        total_steps=total,
        idle_steps=total - int(cumulative[-1]),
        total_tiles=tiles,
        consumed=columns,
        produced=_produced_by(cfg.protocols, total),
    )


@dataclass(frozen=True)
class TraceRow:
    """Per-column timing detail for diagnostic output."""

    column_index: int
    start_step: int
    availability_step: int
    completion_step: int
    stalled_steps: int


def trace(
    qubits: int,
    columns: int,
    cfg: LayoutConfig,
    consume_times: np.ndarray | None = None,
) -> list[TraceRow]:
    """Column-by-column timeline of the same run :func:`simulate` performs."""
    if columns < 0:
        raise ValidationError(f"columns must be >= 0, got {columns}")
    cfg.validate()
    if columns == 0:
        return []
    if consume_times is None:
        consume_times = np.full(columns, cfg.block.max_consume_steps, dtype=np.int64)
    avail = availability_times(cfg.protocols, columns)
    cumulative = np.cumsum(consume_times, dtype=np.int64)
    slack = np.maximum.accumulate(np.maximum(avail - cumulative, 0))
    completion = cumulative + slack
    rows = []
    prev = 0
    for j in range(columns):
        done = int(completion[j])
        rows.append(
            TraceRow(
                column_index=j + 1,
                start_step=prev,
                availability_step=int(avail[j]),
                completion_step=done,
                stalled_steps=done - prev - int(consume_times[j]),
            )
        )
        prev = done
    return rows


def replay_simulate(qubits: int, columns: int, cfg: LayoutConfig) -> SimOutcome:
    """Event-queue reference implementation of :func:`simulate`.

    Walks production round by round with a heap and a FIFO bank of unconsumed
    states instead of the closed form. Kept for cross-checking; the default
    path is the vectorized one.
    """
    if qubits < 1:
        raise ValidationError(f"qubits must be >= 1, got {qubits}")
    if columns < 0:
        raise ValidationError(f"columns must be >= 0, got {columns}")
    cfg.validate()
    tiles = layout_tiles(qubits, cfg)
    if columns == 0:
        return SimOutcome(0, 0, tiles, 0, 0)
    s_b = cfg.block.max_consume_steps
    heap = [
        (protocol_steps(p), idx, protocol_steps(p), protocol_outputs(p))
        for idx, p in enumerate(cfg.protocols)
    ]
    heapq.heapify(heap)
    bank: list[int] = []
    completion = 0
    for _ in range(columns):
        while not bank:
            t, idx, s, k = heapq.heappop(heap)
            bank.extend([t] * k)
            heapq.heappush(heap, (t + s, idx, s, k))
        available_at = bank.pop(0)
        completion = max(completion + s_b, available_at)
    produced = 0
    for p in cfg.protocols:
        rounds = 0
        t = protocol_steps(p)
        while t <= completion:
            rounds += 1
            t += protocol_steps(p)
        produced += rounds * protocol_outputs(p)
    return SimOutcome(
        total_steps=completion,
        idle_steps=completion - columns * s_b,
        total_tiles=tiles,
        consumed=columns,
        produced=produced,
    )
