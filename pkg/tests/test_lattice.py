import itertools
from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from toricnewton.lattice import (
    content,
    determinant,
    hermite_normal_form,
    inverse,
    kernel_lattice_basis,
    lattice_index,
    matmul,
    primitive_from_rational,
    primitive_vector,
    rank,
)

small_mat = st.integers(1, 3).flatmap(
    lambda rows: st.integers(1, 4).flatmap(
        lambda cols: st.lists(
            st.lists(st.integers(-6, 6), min_size=cols, max_size=cols), min_size=rows, max_size=rows
        )
    )
)


def is_hnf(H):
    """Row echelon, positive pivots, entries above each pivot in [0, pivot)."""
    last = -1
    seen_zero = False
    for i, row in enumerate(H):
        nz = [j for j, x in enumerate(row) if x]
        if not nz:
            seen_zero = True
            continue
        if seen_zero:
            return False
        p = nz[0]
        if p <= last or row[p] <= 0:
            return False
        if any(not 0 <= H[k][p] < row[p] for k in range(i)):
            return False
        last = p
    return True


def test_hnf_identity():
    H, U = hermite_normal_form([[1, 0], [0, 1]])
    assert H == ((1, 0), (0, 1)) and U == ((1, 0), (0, 1))


def test_hnf_small():
    M = [[2, 4], [1, 3]]
    H, U = hermite_normal_form(M)
    assert matmul(U, M) == H
    assert abs(determinant(U)) == 1
    assert is_hnf(H)
    assert H[1][0] == 0 and H[0][0] > 0 and H[1][1] > 0


def test_hnf_rank_two():
    M = [[1, 1, 1], [0, 1, 2]]
    H, _ = hermite_normal_form(M)
    # brute-force minor check for the rank
    minors = [sp.Matrix([[M[0][a], M[0][b]], [M[1][a], M[1][b]]]).det() for a, b in itertools.combinations(range(3), 2)]
    assert any(minors)
    assert sum(1 for row in H if any(row)) == 2


@settings(max_examples=80, deadline=None)
@given(small_mat)
def test_hnf_properties(M):
    H, U = hermite_normal_form(M)
    assert matmul(U, M) == H
    assert abs(determinant(U)) == 1
    assert is_hnf(H)


def same_lattice(a, b):
    if len(a) != len(b):
        return False
    if not a:
        return True
    return lattice_index(list(a) + list(b)) == lattice_index(a) == lattice_index(b) and rank(a) == rank(list(a) + list(b))


def test_kernel_examples():
    assert same_lattice(kernel_lattice_basis([[1, 1, 1], [0, 1, 2]]), [(1, -2, 1)])
    assert kernel_lattice_basis([[1, 0, 0], [0, 1, 0], [0, 0, 1]]) == []
    assert same_lattice(kernel_lattice_basis([[1, 1, 3], [3, 0, 5]]), [(-5, -4, 3)])


def _in_integer_span(x, basis):
    if not any(x):
        return True
    if not basis:
        return False
    A = sp.Matrix([list(b) for b in basis]).T
    sol = A.gauss_jordan_solve(sp.Matrix(list(x)))[0]
    return all(c.is_integer for c in sol)


@settings(max_examples=30, deadline=None)
@given(
    st.integers(1, 2).flatmap(
        lambda rows: st.lists(st.lists(st.integers(-3, 3), min_size=3, max_size=3), min_size=rows, max_size=rows)
    )
)
def test_kernel_exhaustive(M):
    basis = kernel_lattice_basis(M)
    for b in basis:
        assert all(sum(m * x for m, x in zip(row, b)) == 0 for row in M)
    for x in itertools.product(range(-5, 6), repeat=3):
        if all(sum(m * y for m, y in zip(row, x)) == 0 for row in M):
            assert _in_integer_span(x, basis), (M, x, basis)


def test_primitive_examples():
    assert primitive_vector((2, 4)) == (1, 2)
    assert primitive_vector((1, 1)) == (1, 1)
    assert primitive_vector((-6, 9, 3)) == (-2, 3, 1)
    with pytest.raises(ValueError, match="zero has no primitive representative"):
        primitive_vector((0, 0))


@given(st.lists(st.integers(-50, 50), min_size=1, max_size=4).filter(any), st.integers(1, 9))
def test_primitive_properties(v, lam):
    p = primitive_vector(v)
    assert primitive_vector(p) == p
    assert primitive_vector([lam * x for x in v]) == p
    assert content(p) == 1


def test_primitive_from_rational():
    assert primitive_from_rational((Fraction(1, 2), Fraction(3, 4))) == (2, 3)


def test_inverse_and_determinant():
    M = [[2, 1], [7, 4]]
    assert determinant(M) == 1
    inv = inverse(M)
    assert matmul(inv, M) == ((1, 0), (0, 1))


def test_lattice_index():
    assert lattice_index([(1, 0), (1, 1), (1, 2)]) == 1
    assert lattice_index([(2, 0), (0, 2)]) == 4
    assert lattice_index([(1, 1), (2, 2)]) == 0
