"""Semigroups S in Z^n_+, germs on X(S), supports, the toric ideal and face polynomials."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .groebner import saturate
from .lattice import IntVec, kernel_lattice_basis, lattice_index, rank
from .poly import Poly, parse_poly
from .polyhedra import Cone, Face, dual_cone

__all__ = [
    "Semigroup",
    "SupportedGerm",
    "validate_semigroup",
    "support",
    "toric_ideal",
    "restrict",
    "face_polynomial",
    "parse_poly",
    "z_variables",
]


class SemigroupError(ValueError):
    pass


@dataclass(frozen=True)
class Semigroup:
    """Generators ``b_1..b_r`` of a semigroup in Z^n_+ spanning Z^n as a group."""

    generators: tuple[IntVec, ...]
    cone: Cone
    dual: Cone

    @property
    def n(self) -> int:
        return len(self.generators[0])

    @property
    def r(self) -> int:
        return len(self.generators)

    def point(self, k: Sequence[int]) -> IntVec:
        """``k_1 b_1 + ... + k_r b_r``."""
        if len(k) != self.r:
            raise ValueError(f"expected {self.r} exponents, got {len(k)}")
        return tuple(sum(kj * b[i] for kj, b in zip(k, self.generators)) for i in range(self.n))

    def matrix(self) -> tuple[IntVec, ...]:
        """n x r matrix whose columns are the generators."""
        return tuple(tuple(b[i] for b in self.generators) for i in range(self.n))


def validate_semigroup(gens: Sequence[Sequence[int]]) -> Semigroup:
    gens = tuple(tuple(int(x) for x in b) for b in gens)
    if not gens:
        raise SemigroupError("semigroup needs at least one generator")
    n = len(gens[0])
    if n == 0 or any(len(b) != n for b in gens):
        raise SemigroupError("generators of inconsistent dimension")
    if any(x < 0 for b in gens for x in b):
        raise SemigroupError("generators must lie in Z^n_+")
    if any(not any(b) for b in gens):
        raise SemigroupError("zero generator")
    if rank(gens) < n:
        raise SemigroupError("cone not full-dimensional")
    if lattice_index(gens) != 1:
        raise SemigroupError("lattice not saturated to Z^n")
    cone = Cone.from_generators(gens)
    return Semigroup(gens, cone, dual_cone(cone))


def z_variables(n: int) -> tuple[str, ...]:
    return tuple(f"z{i + 1}" for i in range(n))


@dataclass(frozen=True, eq=False)
class SupportedGerm:
    """A germ together with its S-points.

    ``spoints`` maps each S-point hit by some monomial to the summed
    coefficient; entries summing to zero are kept but are not in ``supp``.
    ``collisions`` lists S-points reached by two or more distinct monomials.
    """

    germ: Poly
    spoints: dict[IntVec, Fraction]
    collisions: tuple[IntVec, ...] = field(default=())
    semigroup: Semigroup | None = field(default=None, repr=False)

    @property
    def supp(self) -> tuple[IntVec, ...]:
        return tuple(sorted(v for v, c in self.spoints.items() if c))

    @property
    def cancelled(self) -> tuple[IntVec, ...]:
        return tuple(sorted(v for v, c in self.spoints.items() if not c))

    def is_zero_on_x(self) -> bool:
        return not self.supp

    def __eq__(self, other) -> bool:
        if not isinstance(other, SupportedGerm):
            return NotImplemented
        return self.germ == other.germ and self.spoints == other.spoints

    __hash__ = None


def support(g: Poly, S: Semigroup) -> SupportedGerm:
    if g.nvars != S.r:
        raise ValueError(f"germ has {g.nvars} variables, semigroup has {S.r} generators")
    table: dict[IntVec, Fraction] = {}
    hits: dict[IntVec, int] = {}
    for k, c in g.terms.items():
        v = S.point(k)
        table[v] = table.get(v, Fraction(0)) + c
        hits[v] = hits.get(v, 0) + 1
    collisions = tuple(sorted(v for v, h in hits.items() if h > 1))
    return SupportedGerm(g, dict(sorted(table.items())), collisions, S)


def _normalize_binomial(p: Poly) -> Poly:
    lead = p.sorted_terms()[0][1]
    return p * (1 / lead)


def toric_ideal(S: Semigroup, variables: Sequence[str] | None = None) -> list[Poly]:
    """Binomial generators of I_S: the lattice-basis ideal saturated by x_1...x_r.

    Each binomial is scaled so its lexicographically leading coefficient is 1,
    i.e. it reads ``x^a+ - x^a-`` for the kernel vector whose first nonzero
    entry is positive.
    """
    if variables is None:
        variables = tuple(f"x{j + 1}" for j in range(S.r))
    variables = tuple(variables)
    if len(variables) != S.r:
        raise ValueError("one variable per generator required")
    basis = kernel_lattice_basis(S.matrix())
    if not basis:
        return []
    binomials = []
    for alpha in basis:
        plus = tuple(max(a, 0) for a in alpha)
        minus = tuple(max(-a, 0) for a in alpha)
        binomials.append(Poly(variables, {plus: 1, minus: -1}))
    G = saturate(binomials, variables)
    return sorted((_normalize_binomial(p) for p in G.polys), key=lambda p: p.sorted_terms()[0][0], reverse=True)


def restrict(g: SupportedGerm, face: Face) -> SupportedGerm:
    """``g_Delta``: the terms of ``g`` whose S-point lies on ``face``."""
    S = g.semigroup
    keep = {}
    for k, c in g.germ.terms.items():
        v = S.point(k)
        if g.spoints.get(v) and face.contains(v):
            keep[k] = c
    return support(Poly(g.germ.variables, keep), S)


def face_polynomial(g: SupportedGerm, face: Face) -> Poly:
    """``L(g_Delta)`` in variables ``z1..zn`` with the aggregated coefficients."""
    n = face.polyhedron.ambient_dim if face.polyhedron is not None else len(face.normal)
    zero = (0,) * n
    if g.spoints.get(zero):
        raise ValueError("germ does not vanish at origin")
    zs = z_variables(n)
    return Poly(zs, {v: c for v, c in g.spoints.items() if c and face.contains(v)})
