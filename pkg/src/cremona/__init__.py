"""Exact computations with Cremona maps of projective space over Q and F_p."""

from .errors import *  # noqa: F401,F403
from .families import (
    Family,
    FamilyReport,
    conj_limit,
    constant_family,
    family_inverse,
    family_product,
    identity_family,
    specialize,
    verify_family,
)
from .fields import QQ, FieldDescriptor, FieldKind, FieldScalar, nth_power_class, prime_field
from .finite import FiniteGroupTable, is_simple, pgl2_enumerate
from .gcd import multi_gcd, poly_gcd
from .lingroup import (
    DetClass,
    Transvection,
    TransvectionWord,
    det_class,
    psl_path,
    sl_decompose,
    transvection_to_point,
    word_length_bound,
)
from .maps import (
    INDETERMINATE,
    SINGULAR,
    CremonaMap,
    Point,
    ProjMatrix,
    compose,
    dejonquieres_h,
    derivative_at_fixed_point,
    evaluate,
    identity,
    is_local_iso_at,
    linear,
    normalize,
    scaling_g_a,
    standard_involution,
    twoderivatives_gadget,
    verify_certificate,
)
from .paths import (
    PathPlan,
    commutator_fixer,
    connect,
    connect_linear,
    find_local_iso_point,
    replay,
)
from .polynomials import CoeffDomain, MultiPoly, PolyRing, poly_ring

__version__ = "0.1.0"
