"""The six figure kinds and their shared rendering plumbing.

Each renderer validates and reads its inputs completely before any figure
exists, so a bad file never leaves a half-written image behind. Axis scales
follow one rule everywhere: a positive axis switches to log once its data
spans at least three decades, and the spec's log_x/log_y flags override the
choice in either direction. Output is deterministic for fixed inputs: the
Agg backend, a fixed SVG hash salt, and no embedded dates.
"""

from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Mapping

import matplotlib

matplotlib.use("Agg")
matplotlib.rcParams["svg.hashsalt"] = "tilestep-plots"

import matplotlib.pyplot as plt  # noqa: E402  (backend must be pinned first)
import numpy as np  # noqa: E402

from .io import (  # noqa: E402
    PlotDataError,
    analysis_section,
    read_analysis,
    read_circuits,
    read_curve_csv,
    read_table_csv,
)

BLOCK_NAMES = ("compact", "intermediate", "fast")
ALGORITHM_NAMES = ("random", "bf", "dp", "greedy")
FORMATS = ("png", "svg")

# Subcategory order within each class-label position, first char to last.
LAYER_ORDERS = (
    ("depth", "SMD"),
    ("density", "LMH"),
    ("size", "SML"),
)


class PlotKind(enum.Enum):
    BLOCK_TRADEOFF = "block-tradeoff"
    DATASET_SCATTER = "dataset-scatter"
    CLASS_BARS = "class-bars"
    COST_CURVES = "cost-curves"
    PARETO_SCATTER = "pareto-scatter"
    RATIO_BARS = "ratio-bars"


# Input roles each kind consumes, by flag name.
REQUIRED_INPUTS: dict[PlotKind, tuple[str, ...]] = {
    PlotKind.BLOCK_TRADEOFF: ("tiles", "steps"),
    PlotKind.DATASET_SCATTER: ("circuits",),
    PlotKind.CLASS_BARS: ("circuits",),
    PlotKind.COST_CURVES: ("costs",),
    PlotKind.PARETO_SCATTER: ("pareto",),
    PlotKind.RATIO_BARS: ("analysis",),
}


@dataclass(frozen=True)
class PlotSpec:
    """One figure request: what to draw, from which files, to where."""

    kind: PlotKind
    inputs: Mapping[str, Path | str]
    out: Path | str
    fmt: str = "png"
    log_x: bool | None = None
    log_y: bool | None = None

    def validate(self) -> None:
        if self.fmt not in FORMATS:
            raise PlotDataError(f"unsupported format '{self.fmt}'")
        for role in REQUIRED_INPUTS[self.kind]:
            if role not in self.inputs:
                raise PlotDataError(f"{self.kind.value}: missing input '{role}'")


@dataclass(frozen=True)
class RenderResult:
    """Where the image went plus drawn-element counts for verification."""

    path: Path
    counts: dict[str, int] = field(default_factory=dict)


def _scale(values, override: bool | None) -> str:
    """Log scale when forced, or when positive data spans >= 3 decades."""
    if override is not None:
        return "log" if override else "linear"
    positive = [v for v in values if v > 0]
    if not positive:
        return "linear"
    return "log" if max(positive) / min(positive) >= 1000 else "linear"


def _apply_scales(ax, xs, ys, spec: PlotSpec) -> None:
    ax.set_xscale(_scale(xs, spec.log_x))
    ax.set_yscale(_scale(ys, spec.log_y))


def _render_block_tradeoff(spec: PlotSpec):
    tiles = read_curve_csv(spec.inputs["tiles"], ["qubits", *BLOCK_NAMES])
    steps = read_curve_csv(spec.inputs["steps"], ["columns", *BLOCK_NAMES])
    fig, axes = plt.subplots(1, 2, figsize=(10, 4), constrained_layout=True)
    panels = (
        (axes[0], tiles, "qubits", "tiles"),
        (axes[1], steps, "columns", "steps to consume"),
    )
    for ax, rows, xname, yname in panels:
        xs = [row[xname] for row in rows]
        for name in BLOCK_NAMES:
            ax.plot(xs, [row[name] for row in rows], label=name)
        _apply_scales(ax, xs, [row[n] for row in rows for n in BLOCK_NAMES], spec)
        ax.set_xlabel(xname)
        ax.set_ylabel(yname)
        ax.legend()
    counts = {"curves": 2 * len(BLOCK_NAMES), "points": 3 * (len(tiles) + len(steps))}
    return fig, counts


def _render_dataset_scatter(spec: PlotSpec):
    records = read_circuits(spec.inputs["circuits"], ["qubits", "columns", "t_gates"])
    columns = np.array([r["columns"] for r in records], dtype=float)
    t_gates = np.array([r["t_gates"] for r in records], dtype=float)
    qubits = np.array([r["qubits"] for r in records], dtype=float)
    fig, ax = plt.subplots(figsize=(6.5, 4.5), constrained_layout=True)
    points = ax.scatter(
        columns, t_gates, c=qubits, s=14, cmap="viridis", alpha=0.8, linewidths=0
    )
    fig.colorbar(points, ax=ax, label="qubits")
    _apply_scales(ax, columns, t_gates, spec)
    ax.set_xlabel("columns")
    ax.set_ylabel("T gates")
    return fig, {"markers": len(records)}


def _render_class_bars(spec: PlotSpec):
    records = read_circuits(spec.inputs["circuits"], ["class"])
    labels = [r["class"] for r in records]
    for label in labels:
        if len(label) != len(LAYER_ORDERS):
            raise PlotDataError(
                f"{spec.inputs['circuits']}: malformed class label '{label}'"
            )
    per_class = Counter(labels)
    class_names = sorted(per_class)
    fig, (ax_classes, ax_layers) = plt.subplots(
        1,
        2,
        figsize=(11, 4),
        constrained_layout=True,
        gridspec_kw={"width_ratios": [2.4, 1.0]},
    )
    ax_classes.bar(
        range(len(class_names)), [per_class[name] for name in class_names], color="C0"
    )
    ax_classes.set_xticks(range(len(class_names)))
    ax_classes.set_xticklabels(class_names, rotation=90, fontsize=7)
    ax_classes.set_ylabel("circuits")

    segments = 0
    hatches = ("", "//", "xx")
    for position, (layer, order) in enumerate(LAYER_ORDERS):
        per_char = Counter(label[position] for label in labels)
        bottom = 0
        for rank, char in enumerate(order):
            height = per_char.get(char, 0)
            ax_layers.bar(
                position,
                height,
                bottom=bottom,
                color=f"C{rank}",
                hatch=hatches[rank],
                label=char if position == 0 else None,
            )
            bottom += height
            segments += 1
    ax_layers.set_xticks(range(len(LAYER_ORDERS)))
    ax_layers.set_xticklabels([layer for layer, _ in LAYER_ORDERS])
    ax_layers.set_ylabel("circuits")
    counts = {
        "bars": len(class_names),
        "segments": segments,
        "circuits": len(records),
    }
    return fig, counts


def _render_cost_curves(spec: PlotSpec):
    required = ["columns"]
    required += [f"{name}_time" for name in ALGORITHM_NAMES]
    required += [f"{name}_space" for name in ALGORITHM_NAMES]
    rows = read_curve_csv(spec.inputs["costs"], required)
    xs = [row["columns"] for row in rows]
    fig, axes = plt.subplots(1, 2, figsize=(10, 4), constrained_layout=True)
    panels = ((axes[0], "time", "time cost"), (axes[1], "space", "space cost"))
    for ax, suffix, yname in panels:
        ys_all = []
        for name in ALGORITHM_NAMES:
            ys = [row[f"{name}_{suffix}"] for row in rows]
            ys_all.extend(ys)
            ax.plot(xs, ys, label=name)
        _apply_scales(ax, xs, ys_all, spec)
        ax.set_xlabel("columns")
        ax.set_ylabel(yname)
        ax.legend()
    counts = {
        "curves": 2 * len(ALGORITHM_NAMES),
        "points": 2 * len(ALGORITHM_NAMES) * len(rows),
    }
    return fig, counts


def _render_pareto_scatter(spec: PlotSpec):
    rows = read_table_csv(
        spec.inputs["pareto"],
        ["circuit_id", "total_tiles", "total_steps", "on_front"],
    )
    tiles = np.array([int(row["total_tiles"]) for row in rows])
    steps = np.array([int(row["total_steps"]) for row in rows])
    on_front = np.array([row["on_front"] == "1" for row in rows])
    fig, ax = plt.subplots(figsize=(6.5, 4.5), constrained_layout=True)
    ax.scatter(tiles, steps, s=18, color="C0", alpha=0.55, linewidths=0, label="all")
    ax.scatter(
        tiles[on_front],
        steps[on_front],
        s=52,
        facecolors="none",
        edgecolors="C3",
        label="Pareto front",
    )
    _apply_scales(ax, tiles, steps, spec)
    ax.set_xlabel("tiles")
    ax.set_ylabel("steps")
    ax.legend()
    counts = {"markers": len(rows), "highlighted": int(on_front.sum())}
    return fig, counts


def _render_ratio_bars(spec: PlotSpec):
    path = spec.inputs["analysis"]
    payload = read_analysis(path)
    per_group = analysis_section(path, payload, "ratio_stats", "per_group")
    if not per_group:
        raise PlotDataError(f"{path}: no data rows")
    groups = sorted(per_group)
    for group in groups:
        for key in ("mean_step_ratio", "mean_tile_ratio"):
            if key not in per_group[group]:
                raise PlotDataError(f"{path}: missing column '{key}'")
    step_means = [per_group[g]["mean_step_ratio"] for g in groups]
    tile_means = [per_group[g]["mean_tile_ratio"] for g in groups]
    x = np.arange(len(groups))
    width = 0.38
    fig, ax = plt.subplots(figsize=(7.5, 4.2), constrained_layout=True)
    ax.bar(x - width / 2, step_means, width, color="C0", label="step ratio")
    ax.bar(x + width / 2, tile_means, width, color="C1", label="tile ratio")
    ax.axhline(1.0, color="0.4", linewidth=0.8, linestyle="--")
    ax.set_xticks(x)
    ax.set_xticklabels(groups, rotation=45, ha="right", fontsize=8)
    ax.set_ylabel("dp / greedy at the balanced point")
    ax.legend()
    counts = {"bars": 2 * len(groups), "groups": len(groups)}
    return fig, counts


_RENDERERS: dict[PlotKind, Callable] = {
    PlotKind.BLOCK_TRADEOFF: _render_block_tradeoff,
    PlotKind.DATASET_SCATTER: _render_dataset_scatter,
    PlotKind.CLASS_BARS: _render_class_bars,
    PlotKind.COST_CURVES: _render_cost_curves,
    PlotKind.PARETO_SCATTER: _render_pareto_scatter,
    PlotKind.RATIO_BARS: _render_ratio_bars,
}


def render(spec: PlotSpec) -> RenderResult:
    """Draw one figure and write it to spec.out.

    Inputs are read and validated before the figure is created, so nothing
    is written when they are rejected. SVG output omits the creation date
    to keep bytes reproducible.
    """
    spec.validate()
    fig, counts = _RENDERERS[spec.kind](spec)
    out = Path(spec.out)
    metadata = {"Date": None} if spec.fmt == "svg" else None
    try:
        fig.savefig(out, format=spec.fmt, metadata=metadata)
    finally:
        plt.close(fig)
    return RenderResult(path=out, counts=counts)
