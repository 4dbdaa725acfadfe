"""Decide whether a positive primitive free group automorphism comes from a
self-induced completed interval exchange transformation, by decomposing it
into the Dehn twists of a periodic Rauzy path.
"""

from .automorphisms import (
    ElementaryTwist,
    Endomorphism,
    conjugacy,
    factors,
    incidence_matrix,
    integer_determinant,
    validate_positive_primitive,
)
from .boundary import BiPoint, is_fixed_by, shift, transform, translate
from .ciet import (
    Ciet,
    cross_validate,
    detect_self_induction,
    iet_apply,
    orbit_coding,
    perron,
    rauzy_induce_numeric,
    simulate,
)
from .config import Config
from .decision import DecisionReport, decide
from .errors import (
    ConditionFailure,
    DepthExceededError,
    ExcludedPointError,
    InputError,
    IntervalConnectionError,
    SelfInducedError,
)
from .graphs import build_graphs, check_c31, check_c33_c4, derive_pair
from .prefix_suffix import constant_developments, detect_singularities, gamma, match_development_pair
from .rauzy import PermutationPair, edge_twist, enumerate_class, induce_pair, is_irreducible
from .words import Letter, Word

__version__ = "0.1.0"
