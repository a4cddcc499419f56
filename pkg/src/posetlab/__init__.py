"""posetlab: finite posets, spine trees, fiber orders, and walk invariants."""

from .errors import (
    CarrierMismatch,
    CycleDetected,
    InvalidWeights,
    NoMinimum,
    NotAbove,
    NotAChain,
    NotADiscreteWalk,
    NotASubtree,
    ParameterViolation,
    PosetlabError,
    SizeCapExceeded,
    UnboundedRequired,
    UnknownElement,
)
from .order import (
    BoundedPoset,
    Poset,
    adjoin_bounds,
    are_isomorphic,
    build_poset,
    factorization,
    immediate_successors,
    is_irreducible,
    linear_successors,
    product,
    supremum,
    upsets,
)
from .trees import (
    FiniteTree,
    SpineTreeParams,
    admissible_subtree_report,
    comparability_upset,
    make_spine_forest,
    make_spine_tree,
    tree_stats,
)
from .compactum import (
    BranchPoint,
    ColorUniverse,
    coordinates,
    enumerate_points,
    fiber_order,
    point,
    project,
)
from .measures import (
    ComparabilityFamily,
    RationalMeasure,
    certify_linear_successor,
    classify_fiber,
    comparability_family,
    dirac,
    dirac_supremum_report,
    interval_chain_check,
    irreducibility_report,
    leq_on_principal,
    leq_on_upsets,
    measure,
    structure_report,
)
from .walks import (
    Walk,
    distinguish,
    enumerate_discrete_walks,
    is_discrete_walk,
    lift_walk,
    strongly_intersects,
)

__version__ = "0.1.0"
