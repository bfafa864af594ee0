from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from toricnewton.poly import Poly, PolyParseError, parse_poly

V = ("x", "y", "z")

polys = st.dictionaries(
    st.tuples(*[st.integers(0, 3)] * 3),
    st.fractions(min_value=-5, max_value=5, max_denominator=4),
    max_size=5,
).map(lambda d: Poly(V, d))


def test_parse_examples():
    f = parse_poly("x^2*y + 3*x^2*z", V)
    assert f.terms == {(2, 1, 0): 1, (2, 0, 1): 3}
    g = parse_poly("y^3 - x*y + z^2", V)
    assert g.terms == {(0, 3, 0): 1, (1, 1, 0): -1, (0, 0, 2): 1}
    assert parse_poly("x - x", V).is_zero()


def test_parse_forms():
    assert parse_poly("-x", V) == -Poly.var(V, "x")
    assert parse_poly("1/2*x*x", V).terms == {(2, 0, 0): Fraction(1, 2)}
    assert parse_poly("  7 ", V) == 7
    assert parse_poly("x + -3*y", V).terms == {(1, 0, 0): 1, (0, 1, 0): -3}
    assert parse_poly("x^0", V) == 1


@pytest.mark.parametrize(
    "text, pos",
    [("x + w", 4), ("x^", 2), ("", 0), ("x +", 3), ("x ** 2", 3), ("3/0*x", 2), ("x $ y", 2)],
)
def test_parse_errors(text, pos):
    with pytest.raises(PolyParseError) as info:
        parse_poly(text, V)
    assert info.value.pos == pos


def test_unknown_variable_message():
    with pytest.raises(PolyParseError, match="unknown variable 'w'"):
        parse_poly("x*w", V)


@settings(max_examples=100)
@given(polys)
def test_print_roundtrip(p):
    assert parse_poly(str(p), V) == p


@settings(max_examples=60)
@given(polys, polys, polys)
def test_ring_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert a * b == b * a
    assert a - a == 0


@settings(max_examples=60)
@given(polys, polys, st.sampled_from(V))
def test_leibniz(a, b, name):
    assert (a * b).derivative(name) == a.derivative(name) * b + a * b.derivative(name)


def test_derivative_unknown():
    with pytest.raises(ValueError):
        parse_poly("x", V).derivative("w")


def test_evaluate_and_substitute():
    p = parse_poly("x^2*y - 3*z", V)
    assert p.evaluate((2, 3, 1)) == 9
    assert p.substitute({0: 2}) == parse_poly("4*y - 3*z", V)
