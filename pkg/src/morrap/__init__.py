"""Redundancy allocation for series-parallel systems under fuzzy reliabilities.

The package models component reliabilities as triangular type-1 or interval
type-2 fuzzy numbers, reduces them to crisp values with a choice of four
type-reduction methods, and solves the resulting two-objective (reliability
up, cost down) redundancy allocation problem by exact enumeration under five
compromise scalarizations.
"""

from .errors import InfeasibleError, MorrapError, NumericalError, ValidationError
from .fuzzy import (
    DiscretizedFou,
    IntervalType2Number,
    TriangularNumber,
    discretize,
    format_it2_text,
    it2_add,
    it2_divide,
    it2_mul,
    it2_scale,
    membership_bounds,
    parse_it2_text,
)
from .generation import GenerationSpec, generate_it2, generate_t1
from .model import (
    DesignVector,
    Evaluation,
    ProblemInstance,
    SubsystemParams,
    check_feasible,
    component_cost,
    evaluate,
)
from .reduction import (
    CentroidInterval,
    defuzzify,
    geometric_centroid,
    km_centroid,
    nie_tan,
    t1_centroid,
    uncertainty_bounds,
)
from .scalarization import (
    DesirabilitySpec,
    NimbusSpec,
    PayoffTable,
    build_payoff,
    convergence_metric,
    desirability_score,
    fuzzy_maxmin,
    global_criterion_score,
    make_scalarization,
    nimbus_score,
    solve_scalarized,
    weighted_sum_score,
)
from .solver import (
    CompromiseSolution,
    ParetoFront,
    ParetoPoint,
    enumerate_feasible,
    optimize_scalarized,
    optimize_single,
    pareto_front,
    sweep_extremes,
)
from .config import ProblemConfig, SubsystemConfig, bundled_path, load_problem

__version__ = "0.1.0"

__all__ = [
    "MorrapError",
    "ValidationError",
    "InfeasibleError",
    "NumericalError",
    "TriangularNumber",
    "IntervalType2Number",
    "DiscretizedFou",
    "discretize",
    "membership_bounds",
    "it2_add",
    "it2_mul",
    "it2_scale",
    "it2_divide",
    "parse_it2_text",
    "format_it2_text",
    "CentroidInterval",
    "km_centroid",
    "uncertainty_bounds",
    "nie_tan",
    "geometric_centroid",
    "t1_centroid",
    "defuzzify",
    "GenerationSpec",
    "generate_t1",
    "generate_it2",
    "SubsystemParams",
    "ProblemInstance",
    "DesignVector",
    "Evaluation",
    "component_cost",
    "evaluate",
    "check_feasible",
    "CompromiseSolution",
    "ParetoPoint",
    "ParetoFront",
    "enumerate_feasible",
    "optimize_single",
    "sweep_extremes",
    "optimize_scalarized",
    "pareto_front",
    "PayoffTable",
    "build_payoff",
    "global_criterion_score",
    "weighted_sum_score",
    "DesirabilitySpec",
    "desirability_score",
    "fuzzy_maxmin",
    "NimbusSpec",
    "nimbus_score",
    "convergence_metric",
    "make_scalarization",
    "solve_scalarized",
    "ProblemConfig",
    "SubsystemConfig",
    "load_problem",
    "bundled_path",
    "__version__",
]
