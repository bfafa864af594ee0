"""Rational cones and Newton polyhedra ``conv(A) + cone``.

Facets come from a double description run on the homogenized generator
set; faces are enumerated combinatorially from facet incidences and are
identified by the set of facets containing them.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .lattice import (
    IntVec,
    dot,
    inverse,
    kernel_lattice_basis,
    primitive_from_rational,
    primitive_vector,
    rank,
)


def extreme_rays(constraints: Sequence[Sequence[int]], dim: int) -> list[IntVec]:
    """Extreme rays of the pointed cone ``{x : <a, x> >= 0 for a in constraints}``.

    Double description method with the combinatorial adjacency test.  The
    constraint matrix must have rank ``dim``; output rays are primitive and
    sorted.
    """
    rows = [tuple(int(x) for x in a) for a in constraints if any(a)]
    if rank(rows) < dim:
        raise ValueError("constraint system does not define a pointed cone")

    basis: list[int] = []
    for i, a in enumerate(rows):
        if rank([rows[j] for j in basis] + [a]) > len(basis):
            basis.append(i)
            if len(basis) == dim:
                break
    inv = inverse([rows[i] for i in basis])
    # ray j is tight on every basis row except the j-th
    rays: list[tuple[IntVec, frozenset[int]]] = []
    for j in range(dim):
        col = primitive_from_rational([inv[k][j] for k in range(dim)])
        rays.append((col, frozenset(basis[k] for k in range(dim) if k != j)))

    for k, a in enumerate(rows):
        if k in basis:
            continue
        vals = [dot(a, r) for r, _ in rays]
        new = [(r, t) for (r, t), val in zip(rays, vals) if val > 0]
        new += [(r, t | {k}) for (r, t), val in zip(rays, vals) if val == 0]
        for i, vp in enumerate(vals):
            if vp <= 0:
                continue
            p, tp = rays[i]
            for j, vq in enumerate(vals):
                if vq >= 0:
                    continue
                q, tq = rays[j]
                common = tp & tq
                if len(common) < dim - 2:
                    continue
                if any(common <= tr for m, (_, tr) in enumerate(rays) if m != i and m != j):
                    continue
                comb = tuple(vp * y - vq * x for x, y in zip(p, q))
                new.append((primitive_vector(comb), common | {k}))
        rays = new
    uniq = {r: None for r, _ in rays}
    return sorted(uniq)


@dataclass(frozen=True)
class Cone:
    """A pointed rational polyhedral cone with both descriptions.

    ``rays`` are the primitive extreme rays.  ``facet_normals`` are primitive
    inward normals taken inside the linear span of the cone, and
    ``equations`` is a lattice basis of the orthogonal complement of that
    span (empty for full-dimensional cones).
    """

    ambient_dim: int
    rays: tuple[IntVec, ...]
    facet_normals: tuple[IntVec, ...]
    equations: tuple[IntVec, ...] = ()

    @classmethod
    def from_generators(cls, gens: Iterable[Sequence[int]], ambient_dim: int | None = None) -> Cone:
        gens = [tuple(int(x) for x in g) for g in gens]
        if ambient_dim is None:
            if not gens:
                raise ValueError("ambient dimension needed for the zero cone")
            ambient_dim = len(gens[0])
        n = ambient_dim
        if any(len(g) != n for g in gens):
            raise ValueError("generators of inconsistent dimension")
        gens = [g for g in gens if any(g)]
        if not gens:
            eye = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
            return cls(n, (), (), eye)
        eqs = tuple(sorted(primitive_vector(e) for e in kernel_lattice_basis(gens)))
        span_constraints = list(eqs) + [tuple(-x for x in e) for e in eqs]
        facets = extreme_rays(gens + span_constraints, n) if len(eqs) < n else []
        if rank(facets) < n - len(eqs):
            raise ValueError("cone is not pointed")
        rays = extreme_rays(list(facets) + span_constraints, n)
        return cls(n, tuple(rays), tuple(facets), eqs)

    @property
    def dim(self) -> int:
        return self.ambient_dim - len(self.equations)

    @property
    def is_full_dimensional(self) -> bool:
        return not self.equations

    @property
    def is_pointed(self) -> bool:
        # only pointed cones can be constructed; kept for symmetry with callers
        return rank(self.facet_normals) == self.dim

    def contains(self, x: Sequence) -> bool:
        return all(dot(u, x) >= 0 for u in self.facet_normals) and all(
            dot(e, x) == 0 for e in self.equations
        )

    def contains_interior(self, x: Sequence) -> bool:
        """Relative interior membership."""
        return all(dot(u, x) > 0 for u in self.facet_normals) and all(
            dot(e, x) == 0 for e in self.equations
        )


def dual_cone(cone: Cone) -> Cone:
    """``{u : <u, v> >= 0 for all v in cone}`` for a full-dimensional pointed cone."""
    if not cone.is_full_dimensional:
        raise ValueError("dual of a lower-dimensional cone is not pointed")
    return Cone(cone.ambient_dim, tuple(cone.facet_normals), tuple(cone.rays), ())


@dataclass(frozen=True)
class HalfSpace:
    """``{x : <normal, x> >= offset}``."""

    normal: IntVec
    offset: int | Fraction

    def contains(self, x: Sequence) -> bool:
        return dot(self.normal, x) >= self.offset

    def is_tight(self, x: Sequence) -> bool:
        return dot(self.normal, x) == self.offset


@dataclass(frozen=True)
class Face:
    """A face ``Delta(normal)`` of a Newton polyhedron.

    ``normal`` is the canonical exposing normal (primitive sum of the normals
    of the facets containing the face); ``tight_facets`` identifies the face.
    """

    normal: IntVec
    ell: int | Fraction
    dim: int
    points_on_face: tuple[IntVec, ...]
    vertex_set: tuple[IntVec, ...]
    compact: bool
    tight_facets: tuple[HalfSpace, ...]
    polyhedron: NewtonPolyhedron | None = field(default=None, compare=False, repr=False)

    def contains(self, x: Sequence) -> bool:
        if self.polyhedron is not None and not contains(self.polyhedron, x):
            return False
        return dot(self.normal, x) == self.ell and all(h.is_tight(x) for h in self.tight_facets)


@dataclass(frozen=True)
class NewtonPolyhedron:
    support_points: tuple[IntVec, ...]
    vertices: tuple[IntVec, ...]
    facets: tuple[HalfSpace, ...]
    recession: Cone

    @property
    def ambient_dim(self) -> int:
        return self.recession.ambient_dim


def newton_polyhedron(points: Iterable[Sequence[int]], cone: Cone) -> NewtonPolyhedron:
    """Vertex and facet description of ``conv(points) + cone``."""
    pts = sorted({tuple(int(x) for x in p) for p in points})
    if not pts:
        raise ValueError("empty point set")
    n = cone.ambient_dim
    if any(len(p) != n for p in pts):
        raise ValueError("points and cone live in different dimensions")
    if not cone.is_full_dimensional:
        raise ValueError("recession cone must be full-dimensional")

    homog = [p + (1,) for p in pts] + [r + (0,) for r in cone.rays]
    facets = []
    for ray in extreme_rays(homog, n + 1):
        normal = ray[:n]
        if not any(normal):
            continue  # the face at infinity
        normal = primitive_vector(normal)
        facets.append(HalfSpace(normal, min(dot(normal, p) for p in pts)))
    facets.sort(key=lambda h: h.normal)

    vertices = tuple(
        p for p in pts if rank([h.normal for h in facets if h.is_tight(p)]) == n
    )
    return NewtonPolyhedron(tuple(pts), vertices, tuple(facets), cone)


def _check_dual(P: NewtonPolyhedron, v: Sequence[int]) -> None:
    if any(dot(v, r) < 0 for r in P.recession.rays):
        raise ValueError("unbounded direction: vector is outside the dual cone")


def ell(P: NewtonPolyhedron, v: Sequence[int]):
    """``min <k, v>`` over the polyhedron; ``v`` must lie in the dual cone."""
    _check_dual(P, v)
    return min(dot(p, v) for p in P.support_points)


def contains(P: NewtonPolyhedron, x: Sequence) -> bool:
    return all(h.contains(x) for h in P.facets)


def _face_from_facets(P: NewtonPolyhedron, tight: Sequence[HalfSpace]) -> Face:
    n = P.ambient_dim
    if tight:
        normal = primitive_vector([sum(h.normal[i] for h in tight) for i in range(n)])
        level = min(dot(normal, p) for p in P.support_points)
    else:
        normal, level = (0,) * n, 0
    on_face = tuple(p for p in P.support_points if dot(normal, p) == level)
    verts = tuple(p for p in P.vertices if dot(normal, p) == level)
    rays = [r for r in P.recession.rays if dot(normal, r) == 0]
    base = verts[0]
    dim = rank([tuple(a - b for a, b in zip(w, base)) for w in verts[1:]] + rays)
    compact = bool(tight) and all(dot(normal, r) > 0 for r in P.recession.rays)
    return Face(normal, level, dim, on_face, verts, compact, tuple(tight), P)


def _closure(P: NewtonPolyhedron, verts: Iterable[IntVec], rays: Iterable[IntVec]) -> tuple[HalfSpace, ...]:
    verts, rays = list(verts), list(rays)
    return tuple(
        h for h in P.facets
        if all(h.is_tight(w) for w in verts) and all(dot(h.normal, r) == 0 for r in rays)
    )


def face_of(P: NewtonPolyhedron, v: Sequence[int]) -> Face:
    """The face on which ``<., v>`` attains its minimum ``ell(P, v)``."""
    level = ell(P, v)
    if not any(v):
        return _face_from_facets(P, ())
    verts = [w for w in P.vertices if dot(v, w) == level]
    rays = [r for r in P.recession.rays if dot(v, r) == 0]
    return _face_from_facets(P, _closure(P, verts, rays))


def all_faces(P: NewtonPolyhedron) -> list[Face]:
    """Every nonempty face, including ``P`` itself, without duplicates."""
    found: dict[tuple[HalfSpace, ...], None] = {(): None}
    frontier = []
    for h in P.facets:
        key = _closure(P, [w for w in P.vertices if h.is_tight(w)],
                       [r for r in P.recession.rays if dot(h.normal, r) == 0])
        if key not in found:
            found[key] = None
            frontier.append(key)
    while frontier:
        nxt = []
        for key in frontier:
            keyset = set(key)
            for h in P.facets:
                if h in keyset:
                    continue
                tight = keyset | {h}
                verts = [w for w in P.vertices if all(t.is_tight(w) for t in tight)]
                if not verts:
                    continue
                rays = [r for r in P.recession.rays if all(dot(t.normal, r) == 0 for t in tight)]
                sub = _closure(P, verts, rays)
                if sub not in found:
                    found[sub] = None
                    nxt.append(sub)
        frontier = nxt
    faces = [_face_from_facets(P, key) for key in found]
    faces.sort(key=lambda f: (f.dim, f.vertex_set, f.normal))
    return faces


def compact_faces(P: NewtonPolyhedron) -> list[Face]:
    """Bounded faces: those whose normal is strictly positive on the cone."""
    return [f for f in all_faces(P) if f.compact]


def normal_cone(P: NewtonPolyhedron, face: Face) -> Cone:
    """All ``v`` in the dual cone with ``Delta(v)`` containing ``face``."""
    if any(h not in P.facets for h in face.tight_facets) or face != face_of(P, face.normal):
        raise ValueError("not a face of this polyhedron")
    return Cone.from_generators([h.normal for h in face.tight_facets], P.ambient_dim)
