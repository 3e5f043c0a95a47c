"""R.O-metrics and generalized R.O-metric spaces on finite ground sets.

An R.O-metric is a non-negative distance with zero diagonal that obeys the
triangle inequality only when the detour is nonzero. Its strict balls form a
subbasis for a topology; every finite topology arises this way, and every
finite topology is realized by a generalized space (metric plus a family of
self-maps whose image-restricted balls form a basis).
"""

from .distance import (
    AxiomProfile,
    Ball,
    DistanceMatrix,
    ROMetric,
    ball,
    check_rometric_axioms,
    classify_axioms,
    distinct_balls,
    generated_topology,
    normalize,
    rometric_violations,
)
from .errors import (
    BudgetError,
    DomainError,
    GroundMismatchError,
    InternalConsistencyError,
    ParseError,
    PreconditionError,
    RometricError,
    ValidationError,
)
from .finite_topology import (
    FiniteTopology,
    GroundSet,
    QuotientResult,
    close_subbasis,
    find_isomorphism,
    find_open_singleton,
    is_t0,
    kolmogorov_quotient,
    minimal_open_set,
    t0_witness,
    validate_topology,
)
from .generalized import (
    GeneralizedSpace,
    MapFamily,
    SierpinskiEmbedding,
    check_generalized_axioms,
    generalized_ball,
    generalized_topology,
    sierpinski_embed,
    universal_generalized_metrization,
)
from .metrization import (
    ExampleSpec,
    PointedSubbasis,
    builtin_example,
    lift_from_quotient,
    metrize_finite,
    metrize_from_pointed_subbasis,
    verify_metrization,
)
from .oracle import SearchBudget, brute_force_metrize, cross_check_suite, enumerate_topologies
from .real_line import IntervalSet, eval_line_metric, interval_membership, line_ball

__version__ = "0.1.0"
