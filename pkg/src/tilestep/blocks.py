"""Data block layouts, distillation protocols, and physical-resource formulas.

Everything here is closed form. A tile is the unit of floor space: one
surface-code patch of 2*d^2 - 1 physical qubits (d^2 of them data qubits),
where d is the code distance. A step is the unit of time: d code cycles,
with one cycle fixed at 1 microsecond.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .errors import ValidationError

#: Code cycles take one microsecond each; a step is ``distance`` cycles.
CYCLE_MICROSECONDS = 1.0


class DataBlockKind(enum.Enum):
    """Layout family for the data block holding the computation's qubits.

    Ordered from densest to fastest: compact needs the fewest tiles but up to
    9 steps per consumed magic state, fast needs the most tiles but consumes
    in a single step.
    """

    COMPACT = "compact"
    INTERMEDIATE = "intermediate"
    FAST = "fast"

    @property
    def max_consume_steps(self) -> int:
        """Worst-case steps to consume one magic state with this layout."""
        return _CONSUME_STEPS[self]


_CONSUME_STEPS = {
    DataBlockKind.COMPACT: 9,
    DataBlockKind.INTERMEDIATE: 5,
    DataBlockKind.FAST: 1,
}


def data_block_tiles(kind: DataBlockKind, qubits: int) -> int:
    """Tiles occupied by a data block of the given kind.

    Args:
        kind: Layout family.
        qubits: Number of logical qubits held, >= 1.

    Returns:
        Tile count: floor(1.5n + 3) for compact, floor(2n + 4) for
        intermediate, floor(2n + sqrt(8n + 1)) for fast.
    """
    if qubits < 1:
        raise ValidationError(f"qubits must be >= 1, got {qubits}")
    if kind is DataBlockKind.COMPACT:
        return 3 * qubits // 2 + 3
    if kind is DataBlockKind.INTERMEDIATE:
        return 2 * qubits + 4
    # 2n is an integer, so the floor only acts on the square root.
    return 2 * qubits + math.isqrt(8 * qubits + 1)


class ProtocolId(enum.Enum):
    """Identifier for a distillation protocol, in canonical order."""

    P15TO1 = "15-to-1"
    P20TO4 = "20-to-4"
    P116TO12 = "116-to-12"
    P225TO1 = "225-to-1"


#: Base parameters per protocol: (input states, output states, tiles, steps).
_BASE_PARAMS: dict[ProtocolId, tuple[int, int, int, int]] = {
    ProtocolId.P15TO1: (15, 1, 11, 11),
    ProtocolId.P20TO4: (20, 4, 14, 17),
    ProtocolId.P116TO12: (116, 12, 44, 99),
    ProtocolId.P225TO1: (225, 1, 176, 15),
}

PROTOCOL_ORDER: tuple[ProtocolId, ...] = tuple(ProtocolId)


def protocol_index(protocol: ProtocolId) -> int:
    return PROTOCOL_ORDER.index(protocol)


def success_probability(n_inputs: int, p_error: float) -> float:
    """Probability that a distillation round with n inputs succeeds.

    Each input state fails independently with probability ``p_error``; a
    round succeeds only when every input is clean, so P = (1 - p)^n.
    """
    if n_inputs < 0:
        raise ValidationError(f"n_inputs must be >= 0, got {n_inputs}")
    if not 0.0 <= p_error < 1.0:
        raise ValidationError(f"p_error must be in [0, 1), got {p_error}")
    return (1.0 - p_error) ** n_inputs


@dataclass(frozen=True)
class ProtocolSpec:
    """A distillation protocol instantiated at a given physical error rate.

    Attributes:
        id: Protocol identifier.
        n_inputs: Raw magic states consumed per round.
        k_outputs: Distilled states produced per successful round.
        tiles: Floor space occupied while running.
        steps: Duration of one round.
        p_error: Physical error rate the derived columns assume.
        success_prob: Probability a round succeeds, (1 - p_error)^n_inputs.
        avg_steps_per_success: Expected steps per distilled state,
            steps / (k_outputs * success_prob).
    """

    id: ProtocolId
    n_inputs: int
    k_outputs: int
    tiles: int
    steps: int
    p_error: float
    success_prob: float
    avg_steps_per_success: float

    @property
    def name(self) -> str:
        return self.id.value


def make_protocol(protocol: ProtocolId, p_error: float = 1e-4) -> ProtocolSpec:
    """Build the full spec for one protocol at the given error rate."""
    n, k, tiles, steps = _BASE_PARAMS[protocol]
    success = success_probability(n, p_error)
    return ProtocolSpec(
        id=protocol,
        n_inputs=n,
        k_outputs=k,
        tiles=tiles,
        steps=steps,
        p_error=p_error,
        success_prob=success,
        avg_steps_per_success=steps / (k * success),
    )


def all_protocols(p_error: float = 1e-4) -> tuple[ProtocolSpec, ...]:
    """All four protocols, in canonical order, at the given error rate."""
    return tuple(make_protocol(p, p_error) for p in PROTOCOL_ORDER)


def protocol_tiles(protocol: ProtocolId) -> int:
    return _BASE_PARAMS[protocol][2]


def protocol_steps(protocol: ProtocolId) -> int:
    return _BASE_PARAMS[protocol][3]


def protocol_outputs(protocol: ProtocolId) -> int:
    return _BASE_PARAMS[protocol][1]


@dataclass(frozen=True)
class PhysicalEstimate:
    """Physical-qubit and wall-clock translation of a (tiles, steps) pair."""

    code_distance: int
    physical_qubits: int
    wall_clock_us: float


def physical_resources(tiles: int, steps: int, code_distance: int = 3) -> PhysicalEstimate:
    """Translate logical resources into physical qubits and wall-clock time.

    Args:
        tiles: Logical tile count, >= 0.
        steps: Logical step count, >= 0.
        code_distance: Surface-code distance d, >= 1. Each tile is
            2*d^2 - 1 physical qubits and each step lasts d cycles.
    """
    if tiles < 0:
        raise ValidationError(f"tiles must be >= 0, got {tiles}")
    if steps < 0:
        raise ValidationError(f"steps must be >= 0, got {steps}")
    if code_distance < 1:
        raise ValidationError(f"code_distance must be >= 1, got {code_distance}")
    qubits_per_tile = 2 * code_distance * code_distance - 1
    return PhysicalEstimate(
        code_distance=code_distance,
        physical_qubits=tiles * qubits_per_tile,
        wall_clock_us=steps * code_distance * CYCLE_MICROSECONDS,
    )
