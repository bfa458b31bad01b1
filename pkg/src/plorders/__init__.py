"""Exact left orderings of piecewise-linear homeomorphisms of the line."""

from .intervals import IntervalSet, RationalSet
from .limits import (
    NotStabilized,
    OrderingSequence,
    approximating_sequence,
    limit_prefix,
    relevance_threshold,
    stabilization_probe,
)
from .orders import (
    CompositeOrdering,
    GermOrdering,
    PointStream,
    SignAssignment,
    Stage,
    StagedOrdering,
    StandardOrdering,
    compare_staged,
    compare_standard,
    germ_sign,
    relevant_prefix,
    sign_composite,
    typicality_probe,
    verify_positive_cone,
)
from .pl import (
    IDENTITY,
    AffineGerm,
    PLHomeo,
    Sign,
    above_set,
    below_set,
    compose,
    compose_all,
    difference_set,
    evaluate,
    germ_at_infinity,
    invert,
    minus_part,
    pl_bump,
    plus_part,
)
from .rationals import canonical_index, canonical_rationals
from .realization import (
    GroupOracle,
    PLSubgroup,
    RealizationResult,
    ZdLex,
    build_tmap,
    check_recovery,
    enumerate_ball,
    realize,
)
from .witnesses import (
    NotJointlyPositivizable,
    alternating_bump,
    approximate_typical,
    construct_anb,
    construct_g,
    construct_h,
    relevance_bump,
    same_germ_pair,
    separating_pair,
    solve_t,
    theta_in_t,
)

__version__ = "0.1.0"
