from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from birchzero.poly import ParseError, Polynomial, descartes_bound, parse
from conftest import XY, P


def test_parse_ex1_line():
    f = P("-8*y^8 - 4*x^4*y^4 - 8 + 21*x*y^4 + 5*x^3*y^2")
    assert f.terms == {(0, 8): -8, (4, 4): -4, (0, 0): -8, (1, 4): 21, (3, 2): 5}


def test_parse_zero_and_cancellation():
    assert P("0").is_zero()
    assert P("x^2*y - y*x^2").is_zero()
    assert len(P("0").terms) == 0


def test_parse_coefficient_forms():
    f = P("3/4*x + 0.25*y - 2")
    assert f.coefficient((1, 0)) == Fraction(3, 4)
    assert f.coefficient((0, 1)) == Fraction(1, 4)
    assert f.constant_term == -2


@pytest.mark.parametrize("bad", ["x^-1", "x^1.5", "x**", "z + 1", "x +", "2 x y)"])
def test_parse_errors(bad):
    with pytest.raises(ParseError) as info:
        parse(bad, XY)
    assert info.value.offset >= 0


def test_evaluate_examples(ex1):
    assert ex1[0].evaluate((1, 1)) == 6
    assert P("x^4 + y^4 + 1 - 3*x*y").evaluate((1, 1)) == 0
    f = P("2*x^3 - 1/3*y")
    assert f.evaluate((Fraction(1, 2), 3)) == Fraction(1, 4) - 1
    assert isinstance(f.evaluate((0.5, 3.0)), float)


def test_evaluate_laurent_zero_coordinate():
    f = Polynomial({(-1, 0): 1}, 2)
    assert f.is_laurent()
    with pytest.raises(ValueError):
        f.evaluate((0, 1))


def test_gradient():
    assert P("x^3*y^2").partial(0) == P("3*x^2*y^2")
    assert all(g.is_zero() for g in P("5").gradient())
    gx, gy = P("x^4 + y^4 + 1 - 3*x*y").gradient()
    assert gx == P("4*x^3 - 3*y") and gy == P("4*y^3 - 3*x")


def test_square_substitute():
    assert P("x + y - 2").square_substitute() == P("x^2 + y^2 - 2")
    assert P("0").square_substitute().is_zero()
    assert P("x*y^4").square_substitute() == P("x^2*y^8")


def test_descartes_examples():
    assert descartes_bound(parse("x^2 - 3*x + 2", ["x"])) == 2
    assert descartes_bound(parse("x^2 + 1", ["x"])) == 0
    assert descartes_bound(parse("x^3 - 1", ["x"])) == 1
    with pytest.raises(ValueError):
        descartes_bound(P("x + y"))


def test_canonical_print():
    assert P("0").to_string(XY) == "0"
    assert P("-3*y + 4*x^3").to_string(XY) == "4*x^3 - 3*y"
    assert P("1/2 - x").to_string(XY) == "-x + 1/2"


# -- properties ---------------------------------------------------------------------

coef = st.fractions(min_value=-20, max_value=20, max_denominator=7)
expo = st.tuples(st.integers(0, 4), st.integers(0, 4))
polys = st.dictionaries(expo, coef, max_size=6).map(lambda d: Polynomial(d, 2))
points = st.tuples(st.fractions(-3, 3, max_denominator=5), st.fractions(-3, 3, max_denominator=5))


@given(polys, polys, points)
def test_ring_homomorphism(f, g, p):
    assert (f + g).evaluate(p) == f.evaluate(p) + g.evaluate(p)
    assert (f * g).evaluate(p) == f.evaluate(p) * g.evaluate(p)
    assert (f - g).evaluate(p) == f.evaluate(p) - g.evaluate(p)


@given(polys, points)
def test_square_substitute_evaluation(f, p):
    assert f.square_substitute().evaluate(p) == f.evaluate(tuple(x * x for x in p))


@given(polys)
def test_parse_print_roundtrip(f):
    s = f.to_string(XY)
    g = parse(s, XY)
    assert g == f
    assert g.to_string(XY) == s


@given(polys)
def test_no_zero_coefficients(f):
    assert all(c != 0 for c in f.terms.values())
    assert f.support == frozenset(f.terms)


@settings(max_examples=50)
@given(polys, st.integers(0, 3))
def test_power_matches_repeated_product(f, k):
    g = Polynomial.constant(1, 2)
    for _ in range(k):
        g = g * f
    assert f**k == g
