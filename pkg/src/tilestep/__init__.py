"""Floor-plan and magic-state factory optimizer for fault-tolerant architectures."""

__version__ = "0.1.0"

from .blocks import (
    DataBlockKind,
    PhysicalEstimate,
    ProtocolId,
    ProtocolSpec,
    all_protocols,
    data_block_tiles,
    make_protocol,
    physical_resources,
    success_probability,
)
from .circuits import (
    CircuitClass,
    CircuitSpec,
    SweepConfig,
    build_circuit,
    classify_dataset,
    generate_circuits,
    sweep_parameters,
)
from .errors import ConfigurationError, ResourceLimitError, ValidationError
from .optimize import (
    Algorithm,
    Objective,
    ObjectiveSelection,
    ResultEntry,
    ResultSet,
    brute_force,
    dp_optimize,
    greedy_metric,
    greedy_optimize,
    random_config,
    random_optimize,
    select_for,
)
from .analyze import (
    Constraint,
    ParetoFront,
    ParetoPoint,
    RecommendGoal,
    Recommendation,
    SearchCostEstimate,
    dp_greedy_ratios,
    pareto_front,
    pct_increase,
    recommend,
    search_cost,
)
from .sim import LayoutConfig, SimOutcome, production_availability, simulate

__all__ = [
    "__version__",
    "Algorithm",
    "CircuitClass",
    "CircuitSpec",
    "ConfigurationError",
    "Constraint",
    "DataBlockKind",
    "LayoutConfig",
    "Objective",
    "ObjectiveSelection",
    "ParetoFront",
    "ParetoPoint",
    "PhysicalEstimate",
    "ProtocolId",
    "ProtocolSpec",
    "RecommendGoal",
    "Recommendation",
    "ResourceLimitError",
    "ResultEntry",
    "ResultSet",
    "SearchCostEstimate",
    "SimOutcome",
    "SweepConfig",
    "ValidationError",
    "all_protocols",
    "brute_force",
    "build_circuit",
    "classify_dataset",
    "data_block_tiles",
    "dp_greedy_ratios",
    "dp_optimize",
    "generate_circuits",
    "greedy_metric",
    "greedy_optimize",
    "make_protocol",
    "pareto_front",
    "pct_increase",
    "physical_resources",
    "production_availability",
    "random_config",
    "random_optimize",
    "recommend",
    "search_cost",
    "select_for",
    "simulate",
    "success_probability",
    "sweep_parameters",
]
