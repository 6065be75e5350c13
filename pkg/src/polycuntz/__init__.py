"""Symbolic computation with polynomial endomorphisms of the Cuntz algebras O_n.

A polynomial unitary is a bijection between two complete prefix codes. The
package decides when the induced endomorphism lambda_u restricts to an
automorphism of the diagonal, searches for certificates that lambda_u is
invertible, and studies the induced dynamics on the Cantor set.
"""

from .clopen import CylinderUnion, PartitionCode, complement, join, meet, normalize, refine_to_level
from .dynamics import (
    EpPoint,
    FixedPointReport,
    ad_point_map,
    classify_ad_fixed,
    corner_dimension,
    fixed_set_approx,
    verify_adchar,
)
from .errors import (
    BudgetExceededError,
    CoefficientError,
    CuntzError,
    EmptyWordError,
    InfeasibleSizeError,
    LevelTooSmallError,
    NotAPartitionError,
    NotDiagonalAutomorphismError,
    NotInRestrictedClassError,
    ParseError,
)
from .fileformat import parse_unitary, render_unitary
from .gamma import Automorphism, NotAutomorphism, build_gamma, decide_diagonal, find_cycle, to_dot
from .invertibility import (
    Inconclusive,
    Invertible,
    NotInvertible,
    build_delta,
    decide_invertible,
    gauge_fix,
    matrix_unit_in_range,
)
from .poly import (
    PolyMap,
    PolyUnitary,
    ad_action,
    adjoint,
    apply_lambda,
    canonical_form,
    check_unitary,
    compose,
    gauge_component,
    identity,
    lambda_on_cylinders,
    multiply,
    shift_phi,
    u_tower,
)
from .randomgen import random_unitary
from .stabilize import AllStabilized, BudgetExceeded, Failures, StabilizedAt, check_all_level, stabilize_projection
from .words import Alphabet, Word, as_word, word_str

__version__ = "0.1.0"
