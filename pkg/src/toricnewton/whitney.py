"""Algebraic certification of Verdier's condition W for hypersurface families.

For ``F(y, x)`` cutting out X(S) and the parameter axis ``Y = {x = 0}``, the
pair (smooth part of X, Y) satisfies condition W when every ``dF/dy_l`` is
integral over the ideal ``I_F = <x_i dF/dx_j>``.  Here integrality is
established termwise: a non-degenerate ``I_F`` has integral closure equal to
the monomial ideal of its Newton polyhedron, so it suffices that every
support point of ``dF/dy_l`` lies in that polyhedron.

Only single equations (p = 1) are handled.  The metric definition of W is
not evaluated numerically; a ``NotCertified`` verdict is never a disproof.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .closure import IdealData, NonDegReport, build_ideal, is_nondegenerate
from .groebner import buchberger, normal_form
from .lattice import IntVec
from .poly import Poly
from .polyhedra import contains
from .semigroup import Semigroup, support, toric_ideal

CERTIFIED = "Certified"
NOT_CERTIFIED = "NotCertified"

STAGE_DEFINES_X = "defines_X"
STAGE_NONDEG = "nondegenerate"
STAGE_PARTIALS = "partials_in_closure"


@dataclass(frozen=True)
class FamilySpec:
    semigroup: Semigroup
    variables: tuple[str, ...]
    parameters: tuple[str, ...]
    F: Poly

    def __post_init__(self):
        if len(self.variables) != self.semigroup.r:
            raise ValueError("one variable per semigroup generator required")
        if len(set(self.variables)) != len(self.variables):
            raise ValueError("variable names must be unique")
        if not self.parameters:
            raise ValueError("at least one parameter variable is required")
        if any(p not in self.variables for p in self.parameters):
            raise ValueError("parameters must be declared variables")
        if len(set(self.parameters)) == len(self.variables):
            raise ValueError("parameters must be a proper subset of the variables")
        if self.F.variables != self.variables:
            raise ValueError("F must be written over the declared variables")

    @property
    def fiber_variables(self) -> tuple[str, ...]:
        return tuple(v for v in self.variables if v not in self.parameters)


def partial_derivative(F: Poly, var: str) -> Poly:
    return F.derivative(var)


def jacobian_generators(spec: FamilySpec) -> list[Poly]:
    """``x_i * dF/dx_j`` over fiber variables, j outer and i inner; zeros dropped."""
    out = []
    for xj in spec.fiber_variables:
        d = spec.F.derivative(xj)
        for xi in spec.fiber_variables:
            g = Poly.var(spec.variables, xi) * d
            if g:
                out.append(g)
    return out


def jacobian_ideal(spec: FamilySpec) -> IdealData:
    gens = jacobian_generators(spec)
    if not gens:
        raise ValueError("singular locus is everything: all x_i dF/dx_j vanish")
    return build_ideal(spec.semigroup, gens)


@dataclass(frozen=True)
class WhitneyReport:
    defines_X: bool
    jacobian_ideal: IdealData | None
    nondeg: NonDegReport | None
    partials_in_closure: dict[str, tuple[tuple[IntVec, bool], ...]]
    verdict: str
    failed_stage: str | None = None

    @property
    def certified(self) -> bool:
        return self.verdict == CERTIFIED


def defines_x(spec: FamilySpec) -> bool:
    """Whether F lies in the toric ideal, i.e. vanishes on X(S)."""
    binomials = toric_ideal(spec.semigroup, spec.variables)
    if not binomials:
        return spec.F.is_zero()
    G = buchberger(binomials, variables=spec.variables)
    return normal_form(spec.F, G).is_zero()


def verdier_check(spec: FamilySpec) -> WhitneyReport:
    """Run the stages in order and report the first one that fails."""
    ok_x = defines_x(spec)
    try:
        I_F = jacobian_ideal(spec)
    except ValueError:
        return WhitneyReport(ok_x, None, None, {}, NOT_CERTIFIED,
                             STAGE_DEFINES_X if not ok_x else STAGE_NONDEG)
    nondeg = is_nondegenerate(I_F)
    partials = {}
    for y in spec.parameters:
        d = support(spec.F.derivative(y), spec.semigroup)
        partials[y] = tuple((p, contains(I_F.newton, p)) for p in d.supp)
    all_in = all(ok for checks in partials.values() for _, ok in checks)
    if not ok_x:
        failed = STAGE_DEFINES_X
    elif not nondeg.nondegenerate:
        failed = STAGE_NONDEG
    elif not all_in:
        failed = STAGE_PARTIALS
    else:
        failed = None
    verdict = CERTIFIED if failed is None else NOT_CERTIFIED
    return WhitneyReport(ok_x, I_F, nondeg, partials, verdict, failed)


def make_family(S: Semigroup, variables: Sequence[str], parameters: Sequence[str], F: Poly) -> FamilySpec:
    return FamilySpec(S, tuple(variables), tuple(parameters), F)
