import math
from fractions import Fraction

import numpy as np
import pytest

from birchzero.circuit import (
    CircuitPolynomial,
    CoverError,
    NotCircuitError,
    compare_to_theta,
    cover_decompose,
    is_nonnegative,
    is_nonnegative_on_orthant,
    recognize,
)
from birchzero.polytope import affine_rank, barycentric, hull
from birchzero.poly import Polynomial
from conftest import P
from oracles import grid_values


def motzkin(d):
    return P(f"x^4*y^2 + x^2*y^4 + 1 - {d}*x^2*y^2")


def test_recognize_motzkin():
    c = recognize(motzkin(3))
    assert c.weights == (Fraction(1, 3),) * 3
    assert abs(c.circuit_number - 3) < 1e-12
    assert c.d == 3


def test_recognize_xy():
    c = recognize(P("x^4 + y^4 + 1 - 2*x*y"))
    assert sorted(c.weights) == [Fraction(1, 4), Fraction(1, 4), Fraction(1, 2)]
    assert abs(c.circuit_number - 2 * math.sqrt(2)) < 1e-12


@pytest.mark.parametrize("text", ["x^2 + y^2 + x", "x^2 + y^2 + 1", "x^4 + y^4 + 1 - x*y - x^2*y^2", "x^3 + y^2 + 1 - x*y"])
def test_recognize_rejects(text):
    with pytest.raises(NotCircuitError):
        recognize(P(text))


def test_recognize_odd_outer_allowed_when_asked():
    c = recognize(P("x^3 + y^3 + 1 - x*y"), require_even=False)
    assert not c.outer_even
    with pytest.raises(ValueError):
        is_nonnegative(c)
    assert is_nonnegative_on_orthant(c)


def test_motzkin_boundary():
    assert is_nonnegative(recognize(motzkin(3)))
    assert not is_nonnegative(recognize(motzkin("3001/1000")))
    assert compare_to_theta(Fraction(3), recognize(motzkin(3))) == 0


def test_odd_beta_uses_absolute_value():
    assert is_nonnegative(recognize(P("x^4 + y^4 + 1 - 2*x*y")))
    assert is_nonnegative(recognize(P("x^4 + y^4 + 1 + 2*x*y")))
    assert not is_nonnegative(recognize(P("x^4 + y^4 + 1 + 3*x*y")))
    # even beta with a positive inner coefficient is a sum of monomials
    assert is_nonnegative(recognize(P("x^4*y^2 + x^2*y^4 + 1 + 9*x^2*y^2")))


def test_orthant_criterion():
    assert is_nonnegative_on_orthant(recognize(P("x^4 + y^4 + 1 - 5/2*x*y")))
    assert not is_nonnegative_on_orthant(recognize(P("x^4 + y^4 + 1 - 3*x*y")))
    assert is_nonnegative_on_orthant(recognize(P("x^4 + y^4 + 1 + 7*x*y")))


def test_theta_homogeneous():
    rng = np.random.default_rng(3)
    for _ in range(20):
        cs = [Fraction(int(rng.integers(1, 50)), int(rng.integers(1, 9))) for _ in range(3)]
        t = Fraction(int(rng.integers(1, 30)), int(rng.integers(1, 30)))
        outer = [((4, 0), cs[0]), ((0, 4), cs[1]), ((0, 0), cs[2])]
        w = (Fraction(1, 4), Fraction(1, 4), Fraction(1, 2))
        c1 = CircuitPolynomial(tuple(outer), ((1, 1), Fraction(1)), w)
        c2 = CircuitPolynomial(tuple((a, c * t) for a, c in outer), ((1, 1), Fraction(1)), w)
        assert abs(c2.circuit_number / c1.circuit_number - float(t)) < 1e-12 * float(t)


def test_invalid_circuit_rejected():
    with pytest.raises(NotCircuitError):
        CircuitPolynomial((((2, 0), Fraction(1)), ((0, 2), Fraction(-1))), ((1, 1), Fraction(1)), (Fraction(1, 2),) * 2)


def _random_circuit(rng):
    while True:
        verts = [tuple(2 * int(x) for x in rng.integers(0, 4, size=2)) for _ in range(3)]
        if affine_rank(verts) != 2:
            continue
        H = hull(verts)
        inner = [(i, j) for i in range(7) for j in range(7) if H.is_interior((i, j))]
        if inner:
            break
    beta = inner[int(rng.integers(len(inner)))]
    cs = [Fraction(int(rng.integers(1, 20)), int(rng.integers(1, 5))) for _ in verts]
    lam, _ = barycentric(verts, beta)
    base = CircuitPolynomial(tuple(zip(verts, cs)), (beta, Fraction(1)), tuple(lam))
    theta = base.circuit_number
    d = Fraction(float(rng.uniform(0.2, 1.8)) * theta).limit_denominator(1000)
    if rng.random() < 0.3:
        d = -d
    return CircuitPolynomial(tuple(zip(verts, cs)), (beta, d), tuple(lam))


def test_nonnegative_agrees_with_grid_sampling():
    rng = np.random.default_rng(11)
    lin = np.linspace(-3, 3, 121)
    logs = np.logspace(-2, 2, 161)
    for _ in range(20):
        c = _random_circuit(rng)
        f = c.to_polynomial()
        scale = 1 + np.abs(grid_values(Polynomial({e: abs(v) for e, v in f.terms.items()}, 2), [lin, lin]))
        if is_nonnegative(c):
            assert (grid_values(f, [lin, lin]) / scale).min() > -1e-9
        oscale = 1 + grid_values(Polynomial({e: abs(v) for e, v in f.terms.items()}, 2), [logs, logs])
        if is_nonnegative_on_orthant(c):
            assert (grid_values(f, [logs, logs]) / oscale).min() > -1e-9


def test_cover_example_two():
    outer = [((8, 8), 1), ((8, 0), 1), ((0, 8), 1), ((0, 0), 1)]
    inner = [((1, 4), 3), ((3, 2), 1)]
    cover = cover_decompose(outer, inner, gamma=(4, 4), gamma_coef=5)
    assert len(cover.circuits) == 2
    expected = Polynomial([(a, c) for a, c in outer] + [((4, 4), 5)] + [(b, -d) for b, d in inner], 2)
    assert cover.reconstruct() == expected


def test_cover_trivial_cases():
    outer = [((4, 0), 1), ((0, 4), 1), ((0, 0), 1)]
    cover = cover_decompose(outer, [])
    assert cover.circuits == () and cover.leftover == Polynomial(dict(outer), 2)
    cover = cover_decompose(outer, [((1, 1), 2)])
    assert len(cover.circuits) == 1 and cover.leftover.is_zero()
    assert dict(cover.circuits[0].outer) == dict((a, Fraction(c)) for a, c in outer)
    with pytest.raises(CoverError):
        cover_decompose(outer, [((5, 5), 1)])


def test_cover_reconstructs_random():
    rng = np.random.default_rng(5)
    square = [(0, 0), (8, 0), (0, 8), (8, 8)]
    for _ in range(20):
        outer = [(a, Fraction(int(rng.integers(1, 9)))) for a in square]
        pts = {(int(rng.integers(1, 8)), int(rng.integers(1, 8))) for _ in range(int(rng.integers(1, 4)))}
        inner = [(b, Fraction(int(rng.integers(1, 5)))) for b in sorted(pts)]
        cover = cover_decompose(outer, inner)
        assert cover.reconstruct() == Polynomial(outer + [(b, -d) for b, d in inner], 2)
