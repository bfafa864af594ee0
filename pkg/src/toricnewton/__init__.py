"""Newton polyhedra, non-degeneracy and integral closure of ideals on affine toric varieties."""

from .closure import (
    IN,
    OUT,
    UNKNOWN,
    ClosureReport,
    CurveWitness,
    IdealData,
    MembershipResult,
    NonDegReport,
    build_ideal,
    c_closure_report,
    germ_membership_necessary,
    icirc_min_generators,
    is_nondegenerate,
    monomial_membership,
    order_along_curve,
)
from .groebner import (
    GroebnerBasis,
    MonomialOrder,
    buchberger,
    contains_one,
    find_torus_zero,
    has_common_torus_zero,
    normal_form,
    saturate,
)
from .poly import Poly, PolyParseError, parse_poly
from .polyhedra import (
    Cone,
    Face,
    NewtonPolyhedron,
    all_faces,
    compact_faces,
    contains,
    dual_cone,
    ell,
    face_of,
    newton_polyhedron,
    normal_cone,
)
from .semigroup import (
    Semigroup,
    SemigroupError,
    SupportedGerm,
    face_polynomial,
    restrict,
    support,
    toric_ideal,
    validate_semigroup,
)
from .whitney import FamilySpec, WhitneyReport, jacobian_ideal, partial_derivative, verdier_check

__version__ = "0.1.0"
