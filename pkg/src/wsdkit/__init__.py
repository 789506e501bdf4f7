"""Exact weight set decomposition and support classification for finite multi-objective instances."""

__version__ = "0.1.0"

from .approx import (  # noqa: E402
    ApproximationCertificate,
    Counterexample,
    DomainError,
    approximate_point,
    factor,
    first_objective_check,
    reciprocal_weight,
    verify_A_approximation,
)
from .instances import generate, parse_instance, serialize_instance  # noqa: E402
from .linalg import matrix_rank, solve_linear_system  # noqa: E402
from .lp import LPProblem, LPResult, Status, lp_solve  # noqa: E402
from .model import OutcomePoint, OutcomeSet, Relation, compare, distinct_vectors, pareto_filter  # noqa: E402
from .scalarization import (  # noqa: E402
    ClassifiedOutcome,
    SupportClass,
    check_lex_is_esn,
    classify,
    esn_oracle_2d,
    is_extreme_supported,
    is_supported,
    lex_argmin,
    weighted_sum_argmin,
)
from .wsd import (  # noqa: E402
    Decomposition,
    WeightSetComponent,
    check_coverage,
    check_necessity,
    common_face,
    component,
    contains,
    decompose,
    dimension,
    recover_supported,
    vertices,
)
