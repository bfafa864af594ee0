"""Buchberger's algorithm over Q and the torus-zero decision built on it.

Polynomials are :class:`~toricnewton.poly.Poly` values; internally the
algorithm works on plain ``{exponent: Fraction}`` dicts.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt
from typing import Callable, Sequence

from .poly import Monomial, Poly, divides, lcm_monomial

GREVLEX = "grevlex"
LEX = "lex"
BLOCK = "block"


def _grevlex_key(e: Sequence[int]) -> tuple:
    return (sum(e), tuple(-x for x in reversed(e)))


@dataclass(frozen=True)
class MonomialOrder:
    """A monomial order.

    ``kind`` is ``"grevlex"``, ``"lex"`` or ``"block"``.  A block order ranks
    the first ``block`` variables by grevlex and breaks ties with grevlex on
    the rest, so those variables are eliminated.  ``perm`` optionally
    relabels variables before comparison (``perm[i]`` is the position of the
    i-th most significant variable).
    """

    kind: str = GREVLEX
    block: int = 0
    perm: tuple[int, ...] | None = None

    def key(self) -> Callable[[Monomial], tuple]:
        perm = self.perm
        if self.kind == LEX:
            base = tuple
        elif self.kind == GREVLEX:
            base = _grevlex_key
        elif self.kind == BLOCK:
            k = self.block

            def base(e):
                return (_grevlex_key(e[:k]), _grevlex_key(e[k:]))
        else:
            raise ValueError(f"unknown monomial order {self.kind!r}")
        if perm is None:
            return base
        return lambda e: base(tuple(e[i] for i in perm))


_Dict = dict[Monomial, Fraction]


def _lead(p: _Dict, key) -> Monomial:
    return max(p, key=key)


def _reduce(f: _Dict, basis: list[tuple[Monomial, Fraction, _Dict]], key) -> _Dict:
    """Full reduction of ``f`` by ``basis`` (entries carry their leading data)."""
    p = dict(f)
    rem: _Dict = {}
    while p:
        lm = _lead(p, key)
        c = p[lm]
        for glm, glc, g in basis:
            if divides(glm, lm):
                q = c / glc
                shift = tuple(a - b for a, b in zip(lm, glm))
                for e, a in g.items():
                    e2 = tuple(x + y for x, y in zip(e, shift))
                    v = p.get(e2, 0) - q * a
                    if v:
                        p[e2] = v
                    else:
                        p.pop(e2, None)
                break
        else:
            rem[lm] = c
            del p[lm]
    return rem


def _spoly(f: _Dict, g: _Dict, flm, glm, key) -> _Dict:
    lcm = lcm_monomial(flm, glm)
    out: _Dict = {}
    for p, lm, sign in ((f, flm, 1), (g, glm, -1)):
        shift = tuple(a - b for a, b in zip(lcm, lm))
        lc = p[lm]
        for e, a in p.items():
            e2 = tuple(x + y for x, y in zip(e, shift))
            v = out.get(e2, 0) + sign * a / lc
            if v:
                out[e2] = v
            else:
                out.pop(e2, None)
    return out


@dataclass(frozen=True)
class GroebnerBasis:
    """Reduced, monic Gröbner basis; ``polys`` sorted by descending leading term."""

    variables: tuple[str, ...]
    order: MonomialOrder
    polys: tuple[Poly, ...]

    def leading_monomials(self) -> list[Monomial]:
        key = self.order.key()
        return [_lead(p.terms, key) for p in self.polys]

    def is_unit(self) -> bool:
        return len(self.polys) == 1 and self.polys[0] == 1

    def __iter__(self):
        return iter(self.polys)

    def __len__(self) -> int:
        return len(self.polys)


def buchberger(gens: Sequence[Poly], order: MonomialOrder | None = None,
               variables: Sequence[str] | None = None) -> GroebnerBasis:
    """Reduced Gröbner basis of the ideal generated by ``gens``.

    Zero generators are ignored; an empty effective input gives the basis of
    the zero ideal.  Pairs are chosen by the normal strategy and pruned with
    Buchberger's coprime and chain criteria.
    """
    order = order or MonomialOrder()
    key = order.key()
    if variables is None:
        if not gens:
            raise ValueError("variables required for an empty generator list")
        variables = gens[0].variables
    variables = tuple(variables)
    for g in gens:
        if g.variables != variables:
            raise ValueError("generators over different variables")

    G: list[tuple[Monomial, Fraction, _Dict]] = []
    pairs: set[tuple[int, int]] = set()

    def add(h: _Dict) -> None:
        lm = _lead(h, key)
        lc = h[lm]
        h = {e: c / lc for e, c in h.items()}
        G.append((lm, Fraction(1), h))
        j = len(G) - 1
        pairs.update((i, j) for i in range(j))

    for g in gens:
        h = _reduce(g.terms, G, key) if G else dict(g.terms)
        if h:
            add(h)

    def chain_prunable(i: int, j: int, lcm: Monomial) -> bool:
        for k in range(len(G)):
            if k in (i, j) or not divides(G[k][0], lcm):
                continue
            if (min(i, k), max(i, k)) not in pairs and (min(j, k), max(j, k)) not in pairs:
                return True
        return False

    while pairs:
        i, j = min(pairs, key=lambda ij: (key(lcm_monomial(G[ij[0]][0], G[ij[1]][0])), ij))
        pairs.discard((i, j))
        lmi, lmj = G[i][0], G[j][0]
        lcm = lcm_monomial(lmi, lmj)
        if all(a == 0 or b == 0 for a, b in zip(lmi, lmj)):
            continue
        if chain_prunable(i, j, lcm):
            continue
        h = _reduce(_spoly(G[i][2], G[j][2], lmi, lmj, key), G, key)
        if h:
            add(h)

    # minimize, then inter-reduce
    lms = [g[0] for g in G]
    keep = []
    for i, lm in enumerate(lms):
        dominated = any(
            divides(lms[j], lm) and (lms[j] != lm or j < i) for j in range(len(G)) if j != i
        )
        if not dominated:
            keep.append(G[i])
    reduced = []
    for idx, (lm, lc, g) in enumerate(keep):
        others = [k for m, k in enumerate(keep) if m != idx]
        tail = {e: c for e, c in g.items() if e != lm}
        r = _reduce(tail, others, key)
        r[lm] = Fraction(1)
        reduced.append((lm, r))
    reduced.sort(key=lambda t: key(t[0]), reverse=True)
    return GroebnerBasis(variables, order, tuple(Poly(variables, r) for _, r in reduced))


def normal_form(f: Poly, G: GroebnerBasis) -> Poly:
    """Remainder of ``f`` on division by ``G``; zero iff ``f`` lies in the ideal."""
    if f.variables != G.variables:
        raise ValueError("incompatible variables")
    key = G.order.key()
    basis = []
    for p in G.polys:
        lm = _lead(p.terms, key)
        basis.append((lm, p.terms[lm], p.terms))
    return Poly(G.variables, _reduce(f.terms, basis, key))


def contains_one(gens: Sequence[Poly], variables: Sequence[str] | None = None) -> bool:
    """Whether 1 lies in the ideal (weak Nullstellensatz test)."""
    gens = [g for g in gens if g]
    if not gens:
        return False
    return buchberger(gens, variables=variables).is_unit()


def _fresh_name(variables: Sequence[str], stem: str) -> str:
    name = stem
    while name in variables:
        name += "_"
    return name


def with_torus_inverse(polys: Sequence[Poly], variables: Sequence[str]) -> tuple[list[Poly], tuple[str, ...]]:
    """Prepend a fresh variable ``w`` and adjoin ``1 - w * prod(variables)``."""
    variables = tuple(variables)
    w = _fresh_name(variables, "w")
    ext = (w,) + variables
    lifted = [p.with_variables(ext) for p in polys]
    lifted.append(Poly(ext, {(0,) * len(ext): 1, (1,) + (1,) * len(variables): -1}))
    return lifted, ext


def saturate(gens: Sequence[Poly], variables: Sequence[str] | None = None) -> GroebnerBasis:
    """Gröbner basis (grevlex) of ``I : (x_1 ... x_r)^infinity``.

    One auxiliary variable ``t`` with generator ``1 - t * x_1 ... x_r``,
    eliminated under a block order.
    """
    if variables is None:
        variables = gens[0].variables
    variables = tuple(variables)
    lifted, ext = with_torus_inverse([g for g in gens if g], variables)
    G = buchberger(lifted, MonomialOrder(BLOCK, block=1), ext)
    kept = [p for p in G.polys if all(e[0] == 0 for e in p.terms)]
    back = [Poly(variables, {e[1:]: c for e, c in p.terms.items()}) for p in kept]
    return buchberger(back, MonomialOrder(), variables)


def _drop_zero(polys: Sequence[Poly]) -> list[Poly]:
    return [p for p in polys if p]


def has_common_torus_zero(polys: Sequence[Poly], variables: Sequence[str] | None = None) -> bool:
    """Whether the polynomials share a zero with all coordinates nonzero over C.

    Identically zero members impose no condition and are dropped; if nothing
    is left every torus point is a solution.
    """
    if variables is None:
        if not polys:
            raise ValueError("variables required for an empty system")
        variables = polys[0].variables
    live = _drop_zero(polys)
    if not live:
        return True
    lifted, ext = with_torus_inverse(live, variables)
    return not contains_one(lifted, ext)


# ---------------------------------------------------------------------------
# rational witnesses


def _divisors(n: int, limit: int = 10**6) -> list[int] | None:
    n = abs(n)
    if n == 0:
        return None
    small, large = [], []
    bound = isqrt(n)
    if bound > limit:
        return None
    for d in range(1, bound + 1):
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
    return small + large[::-1]


def rational_roots(coeffs: Sequence[Fraction]) -> list[Fraction]:
    """Nonzero rational roots of ``sum coeffs[i] * x**i``; best effort for huge coefficients."""
    cs = [Fraction(c) for c in coeffs]
    while cs and cs[-1] == 0:
        cs.pop()
    while cs and cs[0] == 0:
        cs.pop(0)
    if len(cs) <= 1:
        return []
    den = 1
    for c in cs:
        den = den * c.denominator // gcd(den, c.denominator)
    ints = [int(c * den) for c in cs]
    ps, qs = _divisors(ints[0]), _divisors(ints[-1])
    if ps is None or qs is None:
        return []
    roots = set()
    for p in ps:
        for q in qs:
            for cand in (Fraction(p, q), Fraction(-p, q)):
                if cand in roots:
                    continue
                acc = Fraction(0)
                for c in reversed(cs):
                    acc = acc * cand + c
                if acc == 0:
                    roots.add(cand)
    return sorted(roots, key=lambda r: (abs(r), r < 0))


_FREE_TRIALS = (Fraction(1), Fraction(-1), Fraction(2), Fraction(-2), Fraction(1, 2), Fraction(3))


def _search(polys: list[Poly], free: list[int], variables: tuple[str, ...]) -> dict[int, Fraction] | None:
    live = _drop_zero(polys)
    if any(not any(any(e) for e in p.terms) for p in live):
        return None  # a nonzero constant
    if not free:
        return {}
    if not live:
        return {i: Fraction(1) for i in free}
    sub_vars = tuple(variables[i] for i in free)
    restricted = [p.with_variables(sub_vars, [free.index(i) if i in free else None
                                              for i in range(len(variables))]) for p in live]
    lifted, ext = with_torus_inverse(restricted, sub_vars)
    G = buchberger(lifted, MonomialOrder(LEX), ext)
    if G.is_unit():
        return None
    last = len(ext) - 1
    univariate = [p for p in G.polys if all(all(k == 0 for k in e[:last]) for e in p.terms)]
    if univariate:
        coeffs = [Fraction(0)] * (max(e[last] for e in univariate[0].terms) + 1)
        for e, c in univariate[0].terms.items():
            coeffs[e[last]] = c
        candidates = rational_roots(coeffs)
    else:
        candidates = list(_FREE_TRIALS)
    target = free[-1]
    for val in candidates:
        sub = [p.substitute({target: val}) for p in polys]
        rest = _search(sub, free[:-1], variables)
        if rest is not None:
            rest[target] = val
            return rest
    return None


def find_torus_zero(polys: Sequence[Poly], variables: Sequence[str] | None = None) -> tuple[Fraction, ...] | None:
    """A rational common zero with nonzero coordinates, or ``None``.

    Back-substitution through lexicographic eliminations: each coordinate is
    taken from the rational roots of the eliminant, or from a few small
    trial values when that coordinate is unconstrained.  Incomplete by
    design; :func:`has_common_torus_zero` is the complete decision.
    """
    if variables is None:
        variables = polys[0].variables
    variables = tuple(variables)
    found = _search(list(polys), list(range(len(variables))), variables)
    if found is None:
        return None
    point = tuple(found[i] for i in range(len(variables)))
    if any(x == 0 for x in point) or any(p.evaluate(point) for p in polys):
        return None
    return point
