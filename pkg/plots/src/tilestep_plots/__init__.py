"""Figure rendering for tilestep result files.

This package reads the CSV/JSON artifacts the tilestep CLI emits and turns
them into the standard figures. It deliberately does not import tilestep:
the documented file formats are the whole interface, so either side can be
rebuilt or replaced without touching the other.
"""

__version__ = "0.1.0"

from .io import (
    PlotDataError,
    read_analysis,
    read_circuits,
    read_curve_csv,
    read_table_csv,
)
from .render import PlotKind, PlotSpec, RenderResult, render

__all__ = [
    "__version__",
    "PlotDataError",
    "PlotKind",
    "PlotSpec",
    "RenderResult",
    "read_analysis",
    "read_circuits",
    "read_curve_csv",
    "read_table_csv",
    "render",
]
