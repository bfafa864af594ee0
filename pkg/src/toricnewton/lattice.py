"""Exact integer linear algebra: Hermite normal form, kernels, primitive vectors.

Vectors are plain tuples of Python ints (or ``Fraction`` for rational
points); matrices are tuples of row tuples.  Everything is exact.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Sequence

IntVec = tuple[int, ...]
RatVec = tuple[Fraction, ...]
IntMat = tuple[IntVec, ...]


def as_intmat(rows: Sequence[Sequence[int]]) -> IntMat:
    mat = tuple(tuple(int(x) for x in row) for row in rows)
    if not mat or not mat[0]:
        raise ValueError("matrix must be nonempty")
    width = len(mat[0])
    if any(len(row) != width for row in mat):
        raise ValueError("ragged matrix")
    return mat


def transpose(mat: Sequence[Sequence[int]]) -> IntMat:
    return tuple(zip(*mat))


def identity(n: int) -> IntMat:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def matmul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> IntMat:
    bt = transpose(b)
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a)


def dot(u: Sequence, v: Sequence):
    return sum(x * y for x, y in zip(u, v))


def determinant(mat: Sequence[Sequence]) -> Fraction:
    """Exact determinant by Gaussian elimination over the rationals."""
    m = [[Fraction(x) for x in row] for row in mat]
    n = len(m)
    if any(len(row) != n for row in m):
        raise ValueError("determinant of a non-square matrix")
    det = Fraction(1)
    for k in range(n):
        piv = next((i for i in range(k, n) if m[i][k] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != k:
            m[k], m[piv] = m[piv], m[k]
            det = -det
        det *= m[k][k]
        for i in range(k + 1, n):
            f = m[i][k] / m[k][k]
            if f:
                m[i] = [a - f * b for a, b in zip(m[i], m[k])]
    return det


def inverse(mat: Sequence[Sequence]) -> tuple[tuple[Fraction, ...], ...]:
    """Inverse of a nonsingular square matrix over the rationals."""
    n = len(mat)
    m = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(mat)]
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c] != 0), None)
        if piv is None:
            raise ValueError("singular matrix")
        m[c], m[piv] = m[piv], m[c]
        p = m[c][c]
        m[c] = [x / p for x in m[c]]
        for i in range(n):
            if i != c and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    return tuple(tuple(row[n:]) for row in m)


def rank(rows: Sequence[Sequence]) -> int:
    """Rank over the rationals."""
    m = [[Fraction(x) for x in row] for row in rows]
    if not m:
        return 0
    r, ncols = 0, len(m[0])
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c] / m[r][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        r += 1
        if r == len(m):
            break
    return r


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, s, t) with g = s*a + t*b = gcd(a, b) >= 0."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def hermite_normal_form(mat: Sequence[Sequence[int]]) -> tuple[IntMat, IntMat]:
    """Row-style Hermite normal form.

    Returns ``(H, U)`` with ``H = U @ M``, ``U`` unimodular, and ``H`` in
    row echelon form with positive pivots and entries above each pivot
    reduced into ``[0, pivot)``.  Zero rows of ``H`` sit at the bottom.
    """
    m = [list(row) for row in as_intmat(mat)]
    nrows, ncols = len(m), len(m[0])
    u = [list(row) for row in identity(nrows)]
    pivot_row = 0
    for col in range(ncols):
        if pivot_row == nrows:
            break
        for i in range(pivot_row + 1, nrows):
            if m[i][col] == 0:
                continue
            a, b = m[pivot_row][col], m[i][col]
            g, s, t = _xgcd(a, b)
            ag, bg = a // g, b // g
            # [[s, t], [-b/g, a/g]] has determinant 1
            m[pivot_row], m[i] = (
                [s * x + t * y for x, y in zip(m[pivot_row], m[i])],
                [-bg * x + ag * y for x, y in zip(m[pivot_row], m[i])],
            )
            u[pivot_row], u[i] = (
                [s * x + t * y for x, y in zip(u[pivot_row], u[i])],
                [-bg * x + ag * y for x, y in zip(u[pivot_row], u[i])],
            )
        piv = m[pivot_row][col]
        if piv == 0:
            continue
        if piv < 0:
            m[pivot_row] = [-x for x in m[pivot_row]]
            u[pivot_row] = [-x for x in u[pivot_row]]
            piv = -piv
        for i in range(pivot_row):
            q = m[i][col] // piv
            if q:
                m[i] = [x - q * y for x, y in zip(m[i], m[pivot_row])]
                u[i] = [x - q * y for x, y in zip(u[i], u[pivot_row])]
        pivot_row += 1
    return tuple(map(tuple, m)), tuple(map(tuple, u))


def kernel_lattice_basis(mat: Sequence[Sequence[int]]) -> list[IntVec]:
    """Lattice basis of ``{a in Z^cols : M a = 0}``.

    Computed from the unimodular transform of the Hermite form of ``M^T``:
    rows of ``U`` that map to zero rows of ``H`` span the integer kernel.
    """
    m = as_intmat(mat)
    h, u = hermite_normal_form(transpose(m))
    return [u[i] for i, row in enumerate(h) if not any(row)]


def row_lattice_basis(rows: Sequence[Sequence[int]]) -> list[IntVec]:
    """Nonzero rows of the Hermite form: a basis of the Z-span of ``rows``."""
    h, _ = hermite_normal_form(rows)
    return [row for row in h if any(row)]


def lattice_index(rows: Sequence[Sequence[int]]) -> int:
    """Index of the Z-span of ``rows`` in Z^n, or 0 if the span has lower rank."""
    basis = row_lattice_basis(rows)
    n = len(rows[0])
    if len(basis) < n:
        return 0
    index = 1
    for row in basis:
        pivot = next(x for x in row if x)
        index *= pivot
    return abs(index)


def content(v: Sequence[int]) -> int:
    g = 0
    for x in v:
        g = gcd(g, int(x))
    return g


def primitive_vector(v: Sequence[int]) -> IntVec:
    """Divide ``v`` by the gcd of its entries."""
    g = content(v)
    if g == 0:
        raise ValueError("zero has no primitive representative")
    return tuple(int(x) // g for x in v)


def primitive_from_rational(v: Sequence) -> IntVec:
    """Primitive integer vector on the ray through a rational vector."""
    fr = [Fraction(x) for x in v]
    lcm = 1
    for x in fr:
        lcm = lcm * x.denominator // gcd(lcm, x.denominator)
    return primitive_vector([int(x * lcm) for x in fr])
