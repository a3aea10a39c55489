"""Random circuit generation and dataset classification.

A circuit is a grid of Pauli rotations: ``qubits`` rows by ``columns``
columns, where each cell is I, X, Y, or Z and non-identity cells are the
T gates. Circuits are drawn over a parameter sweep (qubit count, column
count, T-gate count) and labeled with a three-layer class scheme so results
can be sliced by circuit shape.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ValidationError
from .rng import derive_seed

#: Cell encoding inside a circuit grid.
PAULI_CODES = ("I", "X", "Y", "Z")

DEFAULT_QUBIT_VALUES = tuple(range(10, 101, 10))
DEFAULT_MASTER_SEED = 123456789


@dataclass(frozen=True)
class SweepConfig:
    """Parameter grid for dataset generation.

    Attributes:
        qubit_values: Logical qubit counts to sweep, in order.
        column_count: Number of column values per qubit count, drawn
            geometrically from [1, column_max_factor * qubits].
        tgate_count: Number of T-gate counts per (qubits, columns) pair,
            drawn geometrically from [max(qubits, columns), qubits * columns].
        column_max_factor: Upper bound multiplier for the column range.
        master_seed: Root seed; every circuit derives its own seed from it.
    """

    qubit_values: tuple[int, ...] = DEFAULT_QUBIT_VALUES
    column_count: int = 25
    tgate_count: int = 25
    column_max_factor: int = 100
    master_seed: int = DEFAULT_MASTER_SEED

    def validate(self) -> None:
        if not self.qubit_values:
            raise ValidationError("qubit_values must be non-empty")
        if any(q < 1 for q in self.qubit_values):
            raise ValidationError("qubit_values must all be >= 1")
        if self.column_count < 1:
            raise ValidationError(f"column_count must be >= 1, got {self.column_count}")
        if self.tgate_count < 1:
            raise ValidationError(f"tgate_count must be >= 1, got {self.tgate_count}")
        if self.column_max_factor < 1:
            raise ValidationError(
                f"column_max_factor must be >= 1, got {self.column_max_factor}"
            )


def geometric_values(lo: int, hi: int, count: int) -> list[int]:
    """Geometrically spaced integers from lo to hi inclusive.

    Rounded values are bumped up to stay strictly increasing; once the upper
    bound is reached further values repeat it, so the result always has
    exactly ``count`` entries even when the integer range is smaller.
    """
    if lo < 1 or hi < lo:
        raise ValidationError(f"need 1 <= lo <= hi, got [{lo}, {hi}]")
    if count < 1:
        raise ValidationError(f"count must be >= 1, got {count}")
    if count == 1:
        return [lo]
    ratio = hi / lo
    values: list[int] = []
    prev = 0
    for i in range(count):
        v = round(lo * ratio ** (i / (count - 1)))
        v = min(max(v, prev + 1), hi)
        if v <= prev:
            v = hi
        values.append(v)
        prev = v
    return values


def sweep_parameters(cfg: SweepConfig) -> list[tuple[int, int, int]]:
    """All (qubits, columns, t_gates) triples of the sweep, in sweep order."""
    cfg.validate()
    triples: list[tuple[int, int, int]] = []
    for q in cfg.qubit_values:
        for c in geometric_values(1, cfg.column_max_factor * q, cfg.column_count):
            for t in geometric_values(max(q, c), q * c, cfg.tgate_count):
                triples.append((q, c, t))
    return triples


@dataclass(eq=False)
class CircuitSpec:
    """One circuit instance.

    The grid is optional: dataset-scale work only needs the (qubits, columns,
    t_gates, seed) tuple, and the grid can be rebuilt deterministically from
    it on demand.
    """

    id: str
    qubits: int
    columns: int
    t_gates: int
    seed: int
    grid: np.ndarray | None = field(default=None, repr=False)

    def key(self) -> tuple[int, int, int, int]:
        return (self.qubits, self.columns, self.t_gates, self.seed)


def _validate_shape(qubits: int, columns: int, t_gates: int) -> None:
    if qubits < 1:
        raise ValidationError(f"qubits must be >= 1, got {qubits}")
    if columns < 1:
        raise ValidationError(f"columns must be >= 1, got {columns}")
    lo = max(qubits, columns)
    if t_gates < lo:
        raise ValidationError(
            f"t_gates must be >= max(qubits, columns) = {lo}, got {t_gates}"
        )
    if t_gates > qubits * columns:
        raise ValidationError(
            f"t_gates must be <= qubits * columns = {qubits * columns}, got {t_gates}"
        )


def build_grid(qubits: int, columns: int, t_gates: int, seed: int) -> np.ndarray:
    """Sample a Pauli grid with every row and column holding >= 1 T gate.

    Coverage first: max(qubits, columns) distinct cells pair a permutation of
    the longer axis with a cycled permutation of the shorter one, touching
    every row and every column exactly once along the longer axis. The
    remaining T gates then fill uniformly chosen empty cells. Pauli types are
    uniform over X, Y, Z.
    """
    _validate_shape(qubits, columns, t_gates)
    rng = np.random.default_rng(seed)
    grid = np.zeros((qubits, columns), dtype=np.uint8)
    row_order = rng.permutation(qubits)
    col_order = rng.permutation(columns)
    cover = max(qubits, columns)
    if qubits >= columns:
        rows = row_order
        cols = col_order[np.arange(qubits) % columns]
    else:
        rows = row_order[np.arange(columns) % qubits]
        cols = col_order
    grid[rows, cols] = rng.integers(1, 4, size=cover, dtype=np.uint8)
    remaining = t_gates - cover
    if remaining:
        flat = grid.reshape(-1)
        empty = np.flatnonzero(flat == 0)
        picked = rng.choice(empty, size=remaining, replace=False)
        flat[picked] = rng.integers(1, 4, size=remaining, dtype=np.uint8)
    return grid


def build_circuit(
    qubits: int, columns: int, t_gates: int, seed: int, circuit_id: str | None = None
) -> CircuitSpec:
    """Build one circuit with its grid materialized."""
    grid = build_grid(qubits, columns, t_gates, seed)
    if circuit_id is None:
        circuit_id = f"q{qubits:03d}-c{columns:05d}-t{t_gates:07d}-k00"
    return CircuitSpec(
        id=circuit_id,
        qubits=qubits,
        columns=columns,
        t_gates=t_gates,
        seed=seed,
        grid=grid,
    )


def validate_grid(spec: CircuitSpec) -> None:
    """Check a materialized grid against the circuit's declared shape."""
    if spec.grid is None:
        raise ValidationError(f"circuit {spec.id} has no grid materialized")
    if spec.grid.shape != (spec.qubits, spec.columns):
        raise ValidationError(
            f"grid shape {spec.grid.shape} does not match "
            f"({spec.qubits}, {spec.columns})"
        )
    nonzero = spec.grid != 0
    count = int(nonzero.sum())
    if count != spec.t_gates:
        raise ValidationError(f"grid holds {count} T gates, declared {spec.t_gates}")
    if not nonzero.any(axis=1).all():
        raise ValidationError("grid has a row without a T gate")
    if not nonzero.any(axis=0).all():
        raise ValidationError("grid has a column without a T gate")


def generate_circuits(cfg: SweepConfig, with_grids: bool = False) -> list[CircuitSpec]:
    """Generate the full dataset for a sweep.

    Circuit ids encode (qubits, columns, t_gates) plus the index within the
    T-gate sweep, which keeps ids unique when a saturated T range repeats
    values. Each circuit's seed depends only on the master seed and its own
    parameters, never on sweep order.
    """
    cfg.validate()
    circuits: list[CircuitSpec] = []
    for q in cfg.qubit_values:
        for c in geometric_values(1, cfg.column_max_factor * q, cfg.column_count):
            t_values = geometric_values(max(q, c), q * c, cfg.tgate_count)
            for j, t in enumerate(t_values):
                seed = derive_seed(cfg.master_seed, q, c, t, j)
                circuit_id = f"q{q:03d}-c{c:05d}-t{t:07d}-k{j:02d}"
                grid = build_grid(q, c, t, seed) if with_grids else None
                circuits.append(
                    CircuitSpec(
                        id=circuit_id,
                        qubits=q,
                        columns=c,
                        t_gates=t,
                        seed=seed,
                        grid=grid,
                    )
                )
    return circuits


def encode_grid(grid: np.ndarray) -> list[list[int]]:
    """Run-length encode a grid's row-major cell stream as [code, run] pairs."""
    flat = grid.reshape(-1)
    if flat.size == 0:
        return []
    boundaries = np.flatnonzero(np.diff(flat)) + 1
    starts = np.concatenate(([0], boundaries))
    ends = np.concatenate((boundaries, [flat.size]))
    return [[int(flat[s]), int(e - s)] for s, e in zip(starts, ends)]


def decode_grid(runs: list[list[int]], qubits: int, columns: int) -> np.ndarray:
    """Inverse of :func:`encode_grid`."""
    total = sum(run for _, run in runs)
    if total != qubits * columns:
        raise ValidationError(
            f"run lengths cover {total} cells, grid needs {qubits * columns}"
        )
    flat = np.empty(total, dtype=np.uint8)
    pos = 0
    for code, run in runs:
        flat[pos : pos + run] = code
        pos += run
    return flat.reshape(qubits, columns)


# ---------------------------------------------------------------------------
# Classification
# ---------------------------------------------------------------------------

DEPTH_LEVELS = ("S", "M", "D")
DENSITY_LEVELS = ("L", "M", "H")
SIZE_LEVELS = ("S", "M", "L")


@dataclass(frozen=True)
class CircuitClass:
    """Three-layer class label for one circuit.

    Depth (S/M/D) splits the whole dataset by column count; density (L/M/H)
    splits each depth group by T gates per cell; size (S/M/L) splits each
    (depth, density) group by qubit count. The label concatenates the three.
    """

    depth: str
    density: str
    size: str
    label: str
    t_gate_density: float


def tertile_thresholds(values: list[float]) -> tuple[float, float]:
    """Nearest-rank cut points at one and two thirds of the sorted values."""
    if not values:
        raise ValidationError("cannot take tertiles of an empty group")
    ordered = sorted(values)
    n = len(ordered)
    first = ordered[-(-n // 3) - 1]
    second = ordered[-(-2 * n // 3) - 1]
    return first, second


def _levels(values: list[float]) -> list[int]:
    """Tertile level (0, 1, 2) per value; ties go to the lower level."""
    t1, t2 = tertile_thresholds(values)
    return [0 if v <= t1 else 1 if v <= t2 else 2 for v in values]


def classify_dataset(circuits: list[CircuitSpec]) -> list[CircuitClass]:
    """Assign every circuit its three-layer class label.

    Labels depend only on (qubits, columns, t_gates); ids and grids are
    ignored. Returned in input order.
    """
    if not circuits:
        raise ValidationError("cannot classify an empty dataset")
    n = len(circuits)
    depth_level = _levels([float(c.columns) for c in circuits])

    density = [c.t_gates / (c.qubits * c.columns) for c in circuits]
    density_level = [0] * n
    for d in range(3):
        group = [i for i in range(n) if depth_level[i] == d]
        if not group:
            continue
        levels = _levels([density[i] for i in group])
        for i, lv in zip(group, levels):
            density_level[i] = lv

    size_level = [0] * n
    for d in range(3):
        for h in range(3):
            group = [
                i for i in range(n) if depth_level[i] == d and density_level[i] == h
            ]
            if not group:
                continue
            levels = _levels([float(circuits[i].qubits) for i in group])
            for i, lv in zip(group, levels):
                size_level[i] = lv

    out: list[CircuitClass] = []
    for i in range(n):
        depth = DEPTH_LEVELS[depth_level[i]]
        dens = DENSITY_LEVELS[density_level[i]]
        size = SIZE_LEVELS[size_level[i]]
        out.append(
            CircuitClass(
                depth=depth,
                density=dens,
                size=size,
                label=depth + dens + size,
                t_gate_density=density[i],
            )
        )
    return out
