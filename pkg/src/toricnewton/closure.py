"""Non-degeneracy, Newton polyhedra of ideals, and monomial membership in the integral closure.

Membership verdicts come with certificates:

* ``In``  -- the ideal is non-degenerate and the S-point of the monomial lies
  in the Newton polyhedron, so the monomial is integral over the ideal.
* ``Out`` -- a monomial curve ``t -> (z0^b_j * t^<b_j, v>)_j`` through a torus
  point ``z0`` along which the monomial vanishes to lower order than every
  generator (valuative criterion).
* ``Unknown`` -- neither applies.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .groebner import find_torus_zero, has_common_torus_zero
from .lattice import IntVec, dot
from .poly import Poly
from .polyhedra import (
    Face,
    NewtonPolyhedron,
    compact_faces,
    contains,
    newton_polyhedron,
)
from .semigroup import Semigroup, SupportedGerm, face_polynomial, support, z_variables

IN, OUT, UNKNOWN = "In", "Out", "Unknown"


@dataclass(frozen=True, eq=False)
class IdealData:
    semigroup: Semigroup
    generators: tuple[SupportedGerm, ...]
    newton: NewtonPolyhedron
    compact_faces: tuple[Face, ...]

    @property
    def supp(self) -> tuple[IntVec, ...]:
        return tuple(sorted({v for g in self.generators for v in g.supp}))

    @property
    def is_monomial(self) -> bool:
        """Every generator restricts to a single monomial on X(S)."""
        return all(len(g.supp) <= 1 for g in self.generators)


def build_ideal(S: Semigroup, gens: Sequence[Poly]) -> IdealData:
    if not gens:
        raise ValueError("an ideal needs at least one generator")
    supported = []
    for g in gens:
        if g.constant_term():
            raise ValueError(f"generator {g} does not vanish at origin")
        supported.append(support(g, S))
    points = {v for g in supported for v in g.supp}
    if not points:
        raise ValueError("zero ideal: every generator vanishes on X(S)")
    P = newton_polyhedron(points, S.cone)
    return IdealData(S, tuple(supported), P, tuple(compact_faces(P)))


@dataclass(frozen=True)
class FaceCheck:
    face: Face
    face_polys: tuple[Poly, ...]
    torus_zero_exists: bool
    witness: tuple[Fraction, ...] | None = None
    all_zero: bool = False


@dataclass(frozen=True)
class NonDegReport:
    nondegenerate: bool
    per_face: tuple[FaceCheck, ...]

    @property
    def degenerate_faces(self) -> tuple[FaceCheck, ...]:
        return tuple(fc for fc in self.per_face if fc.torus_zero_exists)


def face_system(I: IdealData, face: Face) -> tuple[Poly, ...]:
    return tuple(face_polynomial(g, face) for g in I.generators)


def is_nondegenerate(I: IdealData) -> NonDegReport:
    """Check every compact face for a common torus zero of the face polynomials."""
    zs = z_variables(I.semigroup.n)
    checks = []
    for face in I.compact_faces:
        polys = face_system(I, face)
        live = [p for p in polys if p]
        degenerate = has_common_torus_zero(live, zs)
        witness = find_torus_zero(live, zs) if degenerate and live else None
        if degenerate and not live:
            witness = (Fraction(1),) * len(zs)
        checks.append(FaceCheck(face, polys, degenerate, witness, all_zero=not live))
    return NonDegReport(not any(c.torus_zero_exists for c in checks), tuple(checks))


def order_along_curve(g: SupportedGerm, v: Sequence[int], base: Sequence) -> int | float:
    """t-order of ``g`` along ``t -> (base^b_j * t^<b_j, v>)_j``; ``math.inf`` if it vanishes."""
    base = tuple(Fraction(x) for x in base)
    if any(x == 0 for x in base):
        raise ValueError("base point must lie in the torus")
    if g.semigroup is not None and any(dot(v, b) < 0 for b in g.semigroup.generators):
        raise ValueError("direction is outside the dual cone")
    levels: dict[int, Fraction] = {}
    for point, c in g.spoints.items():
        if not c:
            continue
        value = c
        for x, k in zip(base, point):
            value *= x ** k
        lvl = dot(point, v)
        levels[lvl] = levels.get(lvl, Fraction(0)) + value
    nonzero = [lvl for lvl, c in levels.items() if c]
    return min(nonzero) if nonzero else math.inf


@dataclass(frozen=True)
class CurveWitness:
    """The curve ``t -> (base^b_j * t^<b_j, v>)_j`` on X(S) and the orders it certifies."""

    v: IntVec
    base: tuple[Fraction, ...]
    target_order: int
    min_generator_order: int | float

    def is_valid(self) -> bool:
        return self.target_order < self.min_generator_order

    def parametrization(self, S: Semigroup) -> list[tuple[Fraction, int]]:
        """``(coefficient, t-exponent)`` for each coordinate x_j."""
        out = []
        for b in S.generators:
            coeff = Fraction(1)
            for x, k in zip(self.base, b):
                coeff *= x ** k
            out.append((coeff, dot(b, self.v)))
        return out


@dataclass(frozen=True)
class MembershipResult:
    verdict: str
    point: IntVec
    witness: CurveWitness | None = None
    reason: str = ""


def _min_generator_order(I: IdealData, v, base) -> int | float:
    return min(order_along_curve(g, v, base) for g in I.generators)


def _monomial_germ(m: Sequence[int], S: Semigroup) -> SupportedGerm:
    names = tuple(f"x{j + 1}" for j in range(S.r))
    return support(Poly.monomial(names, m), S)


def monomial_membership(m: Sequence[int], I: IdealData, nondeg: NonDegReport | None = None) -> MembershipResult:
    """Decide ``x^m`` in the integral closure, with a certificate where possible."""
    S = I.semigroup
    m = tuple(int(x) for x in m)
    if len(m) != S.r or any(x < 0 for x in m):
        raise ValueError("exponent must be a nonnegative vector with one entry per generator")
    d = S.point(m)
    P = I.newton
    mono = _monomial_germ(m, S)
    if not contains(P, d):
        facet = next(h for h in P.facets if not h.contains(d))
        base = (Fraction(1),) * S.n
        witness = CurveWitness(facet.normal, base, order_along_curve(mono, facet.normal, base),
                               _min_generator_order(I, facet.normal, base))
        return MembershipResult(OUT, d, witness, "violates the facet inequality")
    nondeg = nondeg or is_nondegenerate(I)
    if nondeg.nondegenerate:
        return MembershipResult(IN, d, None, "ideal is non-degenerate and the point lies in the Newton polyhedron")
    for check in nondeg.degenerate_faces:
        if check.witness is None:
            continue
        v = check.face.normal
        witness = CurveWitness(v, check.witness, order_along_curve(mono, v, check.witness),
                               _min_generator_order(I, v, check.witness))
        if witness.is_valid():
            return MembershipResult(OUT, d, witness, "generators vanish to higher order along a curve through a torus zero of a degenerate face")
    missing = [c for c in nondeg.degenerate_faces if c.witness is None]
    reason = "ideal is degenerate and no curve certificate separates the monomial"
    if missing:
        reason += f"; {len(missing)} degenerate face(s) without a rational torus zero"
    return MembershipResult(UNKNOWN, d, None, reason)


POSSIBLE = "Possible"


def germ_membership_necessary(h: Poly, I: IdealData) -> MembershipResult:
    """Necessary condition for a germ to be integral over ``I``: its support lies in the polyhedron.

    A point outside gives ``Out`` only for monomial ideals; otherwise the
    answer is ``Unknown``.  Every support point inside gives ``Possible``.
    """
    g = support(h, I.semigroup)
    outside = [p for p in g.supp if not contains(I.newton, p)]
    if not outside:
        return MembershipResult(POSSIBLE, (), None, "support lies in the Newton polyhedron")
    reason = f"support point {outside[0]} lies outside the Newton polyhedron"
    if I.is_monomial:
        return MembershipResult(OUT, outside[0], None, reason)
    return MembershipResult(UNKNOWN, outside[0], None, reason + "; the ideal is not monomial")


# ---------------------------------------------------------------------------
# I-circ


@dataclass(frozen=True)
class IcircResult:
    generators: tuple[tuple[IntVec, IntVec], ...]  # (exponent, S-point)
    box: IntVec  # inclusive upper bounds per coordinate


def semigroup_points(S: Semigroup, box: Sequence[int]) -> dict[IntVec, IntVec]:
    """Every S-point with coordinates bounded by ``box``, with one exponent vector each.

    Breadth-first over the number of generator steps, so each point keeps a
    shortest representation, ties broken by generator index.
    """
    zero_k = (0,) * S.r
    found: dict[IntVec, IntVec] = {(0,) * S.n: zero_k}
    queue = deque([(0,) * S.n])
    while queue:
        p = queue.popleft()
        k = found[p]
        for j, b in enumerate(S.generators):
            q = tuple(x + y for x, y in zip(p, b))
            if q in found or any(x > lim for x, lim in zip(q, box)):
                continue
            found[q] = k[:j] + (k[j] + 1,) + k[j + 1:]
            queue.append(q)
    return found


def default_icirc_box(I: IdealData) -> IntVec:
    S, P = I.semigroup, I.newton
    n = S.n
    return tuple(
        max(v[i] for v in P.vertices) + max(b[i] for b in S.generators) for i in range(n)
    )


def icirc_min_generators(I: IdealData, search_box: int | Sequence[int] | None = None) -> IcircResult:
    """Minimal S-points of ``S`` intersected with the Newton polyhedron, inside a box.

    Candidates must also sit within one generator step of some facet.  The
    box is returned so that the extent of the search is explicit.
    """
    S, P = I.semigroup, I.newton
    if search_box is None:
        box = default_icirc_box(I)
    elif isinstance(search_box, int):
        box = (search_box,) * S.n
    else:
        box = tuple(int(x) for x in search_box)
    pts = semigroup_points(S, box)
    inside = {p: k for p, k in pts.items() if contains(P, p)}
    steps = {h: max(dot(b, h.normal) for b in S.generators) for h in P.facets}

    def in_band(p) -> bool:
        return any(dot(p, h.normal) <= h.offset + steps[h] for h in P.facets)

    def is_minimal(p) -> bool:
        for q in inside:
            if q == p or any(a < b for a, b in zip(p, q)):
                continue
            if tuple(a - b for a, b in zip(p, q)) in pts:
                return False
        return True

    gens = [(inside[p], p) for p in sorted(inside) if in_band(p) and is_minimal(p)]
    return IcircResult(tuple(gens), box)


@dataclass(frozen=True)
class ClosureReport:
    """``C(closure of I)`` versus the Newton polyhedron."""

    equality: bool
    polyhedron: NewtonPolyhedron
    excluded: tuple[MembershipResult, ...] = field(default=())
    nondeg: NonDegReport | None = None


def c_closure_report(I: IdealData, nondeg: NonDegReport | None = None) -> ClosureReport:
    """Equality when non-degenerate; otherwise an upper bound plus certified exclusions.

    Exclusions are the S-points on degenerate compact faces (within the
    default I-circ box) whose monomials are certified Out.
    """
    nondeg = nondeg or is_nondegenerate(I)
    if nondeg.nondegenerate:
        return ClosureReport(True, I.newton, (), nondeg)
    pts = semigroup_points(I.semigroup, default_icirc_box(I))
    excluded = []
    seen = set()
    for check in nondeg.degenerate_faces:
        for p in sorted(pts):
            if p in seen or not check.face.contains(p):
                continue
            res = monomial_membership(pts[p], I, nondeg)
            if res.verdict == OUT:
                seen.add(p)
                excluded.append(res)
    excluded.sort(key=lambda r: r.point)
    return ClosureReport(False, I.newton, tuple(excluded), nondeg)


__all__ = [
    "IN",
    "OUT",
    "UNKNOWN",
    "IdealData",
    "FaceCheck",
    "NonDegReport",
    "CurveWitness",
    "MembershipResult",
    "IcircResult",
    "ClosureReport",
    "build_ideal",
    "is_nondegenerate",
    "order_along_curve",
    "monomial_membership",
    "germ_membership_necessary",
    "POSSIBLE",
    "icirc_min_generators",
    "c_closure_report",
    "semigroup_points",
]
