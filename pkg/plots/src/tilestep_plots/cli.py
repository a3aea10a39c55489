"""Command line interface: one subcommand per figure kind.

Every subcommand takes the input files it needs, an optional --out path,
and --format {png,svg}. Exit codes match the producing tool: 0 on success,
1 for validation problems, 2 for I/O failures.
"""

from __future__ import annotations

import argparse
import sys

from . import __version__
from .io import PlotDataError
from .render import FORMATS, PlotKind, PlotSpec, render

_SCALE_CHOICES = ("auto", "log", "linear")

# (kind, help, ((flag, input role, flag help), ...))
_SUBCOMMANDS = (
    (
        PlotKind.BLOCK_TRADEOFF,
        "tiles-vs-qubits and steps-vs-columns curves per data block",
        (
            ("--tiles-csv", "tiles", "per-block tile curve CSV"),
            ("--steps-csv", "steps", "per-block consume-step curve CSV"),
        ),
    ),
    (
        PlotKind.DATASET_SCATTER,
        "circuit dataset in columns/T-gate space, colored by qubits",
        (("--circuits", "circuits", "circuits.jsonl from the generator"),),
    ),
    (
        PlotKind.CLASS_BARS,
        "per-class counts and the per-layer subcategory split",
        (("--circuits", "circuits", "circuits.jsonl with class labels"),),
    ),
    (
        PlotKind.COST_CURVES,
        "per-strategy time and space search-cost curves",
        (("--costs", "costs", "search-cost curve CSV"),),
    ),
    (
        PlotKind.PARETO_SCATTER,
        "steps vs tiles for every layout, Pareto points highlighted",
        (("--pareto", "pareto", "pareto.csv from analyze"),),
    ),
    (
        PlotKind.RATIO_BARS,
        "dp/greedy balanced-point ratios per circuit group",
        (("--analysis", "analysis", "analysis.json from analyze"),),
    ),
)


def _scale_flag(value: str) -> bool | None:
    return None if value == "auto" else value == "log"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tilestep-plots",
        description="Render figures from tilestep result files.",
    )
    parser.add_argument(
        "--version", action="version", version=f"tilestep-plots {__version__}"
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for kind, help_text, flags in _SUBCOMMANDS:
        cmd = sub.add_parser(kind.value, help=help_text)
        for flag, role, flag_help in flags:
            cmd.add_argument(flag, dest=f"input_{role}", required=True, help=flag_help)
        cmd.add_argument("--out", help="output image path (default: <kind>.<format>)")
        cmd.add_argument("--format", dest="fmt", choices=FORMATS, default="png")
        cmd.add_argument("--log-x", choices=_SCALE_CHOICES, default="auto")
        cmd.add_argument("--log-y", choices=_SCALE_CHOICES, default="auto")
        cmd.set_defaults(kind=kind, roles=tuple(role for _, role, _ in flags))
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    spec = PlotSpec(
        kind=args.kind,
        inputs={role: getattr(args, f"input_{role}") for role in args.roles},
        out=args.out or f"{args.kind.value}.{args.fmt}",
        fmt=args.fmt,
        log_x=_scale_flag(args.log_x),
        log_y=_scale_flag(args.log_y),
    )
    try:
        result = render(spec)
    except PlotDataError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 2
    details = ", ".join(f"{value} {name}" for name, value in result.counts.items())
    print(f"wrote {result.path} ({details})")
    return 0


if __name__ == "__main__":
    sys.exit(main())
