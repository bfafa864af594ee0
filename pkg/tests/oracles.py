"""Independent reference implementations used only by the tests.

None of these share code with the library: the polyhedral oracle enumerates
candidate normals by brute force and decides membership by an exact simplex,
the torus-zero oracle goes through sympy resultants and gcds over number fields Q[z1]/(q),
and curve orders come from expanding the substituted germ with sympy.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import gcd

import sympy as sp


# --------------------------------------------------------------------------
# exact feasibility


def feasible(A, b) -> bool:
    """Is ``A y = b, y >= 0`` solvable?  Phase-one simplex with Bland's rule over Q.

    sympy's exact ``linprog`` takes over a second per call at these sizes, so
    a small dense tableau is used instead.
    """
    m, k = len(A), len(A[0])
    rows = []
    for i in range(m):
        sign = -1 if b[i] < 0 else 1
        rows.append([Fraction(sign * a) for a in A[i]] + [Fraction(int(j == i)) for j in range(m)] + [Fraction(sign * b[i])])
    basis = [k + i for i in range(m)]
    width = k + m
    # objective: minimize the sum of artificials, written as reduced costs
    cost = [Fraction(0)] * (width + 1)
    for r in rows:
        for j in range(width + 1):
            cost[j] -= r[j]
    for j in range(k, width):
        cost[j] = Fraction(0)
    while True:
        enter = next((j for j in range(width) if cost[j] < 0), None)
        if enter is None:
            break
        best = None
        for i, r in enumerate(rows):
            if r[enter] > 0:
                ratio = r[-1] / r[enter]
                if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                    best = (ratio, i)
        if best is None:
            break  # unbounded cannot happen in phase one
        i = best[1]
        piv = rows[i][enter]
        rows[i] = [x / piv for x in rows[i]]
        for t in range(m):
            if t != i and rows[t][enter]:
                f = rows[t][enter]
                rows[t] = [x - f * y for x, y in zip(rows[t], rows[i])]
        if cost[enter]:
            f = cost[enter]
            cost = [x - f * y for x, y in zip(cost, rows[i])]
        basis[i] = enter
    return cost[-1] == 0


def in_hull_plus_cone(x, points, rays) -> bool:
    """``x`` in conv(points) + cone(rays), by exact feasibility."""
    n = len(x)
    cols = [list(p) + [1] for p in points] + [list(r) + [0] for r in rays]
    A = [[c[i] for c in cols] for i in range(n + 1)]
    return feasible(A, list(x) + [1])


# --------------------------------------------------------------------------
# brute-force hull


def _primitive(v):
    g = 0
    for x in v:
        g = gcd(g, int(x))
    return tuple(int(x) // g for x in v) if g else None


def _rank(vectors) -> int:
    if not vectors:
        return 0
    return sp.Matrix([list(v) for v in vectors]).rank()


def _candidate_normals(points, rays):
    n = len(points[0])
    diffs = {tuple(a - b for a, b in zip(p, q)) for p, q in itertools.combinations(points, 2)}
    diffs |= {tuple(r) for r in rays}
    diffs = [d for d in diffs if any(d)]
    out = set()
    if n == 2:
        for d in diffs:
            out.add((-d[1], d[0]))
    elif n == 3:
        for d, e in itertools.combinations(diffs, 2):
            out.add((d[1] * e[2] - d[2] * e[1], d[2] * e[0] - d[0] * e[2], d[0] * e[1] - d[1] * e[0]))
    else:
        raise ValueError("oracle handles n = 2, 3")
    for u in list(out):
        out.add(tuple(-x for x in u))
    return {p for p in (_primitive(u) for u in out) if p is not None}


def brute_force_facets(points, rays) -> set[tuple[tuple[int, ...], int]]:
    """Facets ``(normal, offset)`` of conv(points) + cone(rays) from candidate normals."""
    points = [tuple(p) for p in points]
    n = len(points[0])
    facets = set()
    for u in _candidate_normals(points, rays):
        if any(sum(a * b for a, b in zip(u, r)) < 0 for r in rays):
            continue
        vals = [sum(a * b for a, b in zip(u, p)) for p in points]
        off = min(vals)
        tight = [p for p, v in zip(points, vals) if v == off]
        flat = [r for r in rays if sum(a * b for a, b in zip(u, r)) == 0]
        span = [tuple(a - b for a, b in zip(t, tight[0])) for t in tight[1:]] + [tuple(r) for r in flat]
        if _rank(span) == n - 1:
            facets.add((u, off))
    return facets


def brute_force_vertices(points, rays) -> set[tuple[int, ...]]:
    pts = sorted({tuple(p) for p in points})
    return {p for p in pts if not in_hull_plus_cone(p, [q for q in pts if q != p], rays)}


# --------------------------------------------------------------------------
# common zeros in the torus (C*)^2


Z1, Z2 = sp.symbols("z1 z2")


def _strip_monomial(expr):
    """Drop powers of z1 and z2 dividing ``expr``; returns the remaining factor."""
    _, factors = sp.factor_list(expr, Z1, Z2)
    rest = sp.Integer(1)
    for f, mult in factors:
        if f in (Z1, Z2):
            continue
        rest *= f ** mult
    return sp.expand(rest)


def torus_zero_oracle(exprs) -> bool:
    """Common zero of bivariate polynomials in (C*)^2, via gcd, resultants and number fields."""
    exprs = [sp.expand(e) for e in exprs if sp.expand(e) != 0]
    if not exprs:
        return True
    g = exprs[0]
    for e in exprs[1:]:
        g = sp.gcd(g, e)
    if sp.Poly(_strip_monomial(g), Z1, Z2).total_degree() > 0:
        return True  # a common curve meets the torus
    hs = [sp.cancel(e / g) for e in exprs]
    if any(sp.Poly(h, Z1, Z2).is_ground for h in hs):
        return False
    if len(hs) == 1:
        return False
    # finitely many common zeros; project to z1 with a random combination
    coeffs = [1, 2, 3, 5, 7, 11, 13]
    for attempt in range(len(coeffs)):
        combo = sum(c * h for c, h in zip(coeffs[attempt:] + coeffs[:attempt], hs[1:]))
        R = sp.resultant(hs[0], combo, Z2)
        if sp.expand(R) != 0:
            break
    else:
        raise RuntimeError("degenerate projection")
    R = sp.Poly(R, Z1)
    if R.is_ground:
        return False
    for q, _ in sp.factor_list(R)[1]:
        if q.degree() == 0 or q.as_expr() == Z1:
            continue
        fibers = [_fiber(h, q) for h in hs]
        fibers = [f for f in fibers if f]
        if not fibers:
            return True
        G = fibers[0]
        for f in fibers[1:]:
            G = _field_gcd(G, f, q)
        # a root with z2 != 0 exists iff G is not c * z2^k
        if len(G) > 1 and sum(1 for c in G if not c.is_zero) > 1:
            return True
    return False


# Arithmetic in K[z2] for the number field K = Q[z1]/(q), q irreducible.
# Elements of K are sympy polys in z1 reduced mod q; polys in z2 are
# coefficient lists, highest degree first, with no leading zeros.


def _fiber(h, q):
    P = sp.Poly(h, Z2)
    coeffs = [sp.Poly(c, Z1, domain=sp.QQ).rem(q.set_domain(sp.QQ)) for c in P.all_coeffs()]
    while coeffs and coeffs[0].is_zero:
        coeffs.pop(0)
    return coeffs


def _field_rem(A, B, q):
    q = q.set_domain(sp.QQ)
    A = list(A)
    inv = sp.Poly(sp.invert(B[0].as_expr(), q.as_expr(), Z1), Z1, domain=sp.QQ)
    while len(A) >= len(B):
        f = (A[0] * inv).rem(q)
        for i, b in enumerate(B):
            A[i] = (A[i] - f * b).rem(q)
        assert A[0].is_zero
        A.pop(0)
        while A and A[0].is_zero:
            A.pop(0)
    return A


def _field_gcd(A, B, q):
    while B:
        A, B = B, _field_rem(A, B, q)
    return A


# --------------------------------------------------------------------------
# orders along monomial curves


def curve_order(terms, generators, v, base):
    """Lowest t-power of ``sum c x^k`` after ``x_j = base^{b_j} t^{<b_j, v>}``; ``None`` if it vanishes."""
    t = sp.Symbol("t")
    total = sp.Integer(0)
    for k, c in terms.items():
        term = sp.Rational(c.numerator, c.denominator)
        for kj, b in zip(k, generators):
            coeff = sp.Integer(1)
            for x, e in zip(base, b):
                coeff *= sp.Rational(x.numerator, x.denominator) ** e
            term *= (coeff * t ** sum(a * w for a, w in zip(b, v))) ** kj
        total += term
    total = sp.expand(total)
    if total == 0:
        return None
    return min(m[0] for m in sp.Poly(total, t).monoms())
