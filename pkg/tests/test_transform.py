from fractions import Fraction

import numpy as np
import pytest

from birchzero.numeric import minimize_orthant
from birchzero.poly import Polynomial
from birchzero.transform import MonomialTransform, normalize_at_vertex, random_unimodular
from conftest import P
from generators import random_admissible, random_laurent_bounded
from oracles import check_normalization


def test_normalize_xy_family():
    t, g = normalize_at_vertex(P("1 + x^4 + y^4 - 3*x*y"), (0, 0))
    assert t.mu == 4
    assert t.matrix == ((0, 2), (2, 0)) or t.matrix == ((2, 0), (0, 2))
    assert g == P("1 + x^8 + y^8 - 3*x^2*y^2")


def test_normalize_axis_aligned():
    t, g = normalize_at_vertex(P("1 + x^2 + y^2 + x^2*y^2 - 1/2*x*y"), (0, 0))
    assert all(k % 2 == 0 for e in g.support for k in e)


def test_normalize_square_uses_lcm_rule():
    # denominators of the images of the support under T' = diag(1/8, 1/8) are all 1
    f = P("1 + x^8 + y^8 + x^8*y^8 - x^3*y^2")
    t, g = normalize_at_vertex(f, (0, 0))
    assert t.mu == 8
    for nb in [(8, 0), (0, 8)]:
        img = t.image(nb)
        assert sorted(img) == [0, 2 * t.mu]
    t, g = normalize_at_vertex(P("1 + x^8 + y^8 + x^8*y^8"), (0, 0))
    assert t.mu == 1 and g == P("1 + x^2 + y^2 + x^2*y^2")


def test_normalize_preconditions():
    with pytest.raises(ValueError):
        normalize_at_vertex(P("1 + x^4 + y^4 - x*y"), (1, 1))
    with pytest.raises(ValueError):
        normalize_at_vertex(P("1 + x^2 + y^2 - x*y"), (0, 0))  # (1,1) on an edge
    with pytest.raises(ValueError):
        normalize_at_vertex(P("1 + x^2*y^2"), (0, 0))


def test_apply_examples():
    f = P("x^3*y - 2*x + 5")
    assert MonomialTransform.identity(2).apply(f) == f
    assert MonomialTransform.linear([[2, 0], [0, 2]]).apply(P("x*y")) == P("x^2*y^2")
    with pytest.raises(ValueError):
        MonomialTransform.linear([[1, 1], [2, 2]])
    with pytest.raises(ValueError):
        MonomialTransform.linear([[Fraction(1, 2), 0], [0, 1]]).apply(P("x"))


def test_apply_preserves_coefficients():
    rng = np.random.default_rng(1)
    for _ in range(20):
        f = random_laurent_bounded(rng)
        t = MonomialTransform.linear(random_unimodular(2, rng))
        g = t.apply(f)
        assert sorted(g.terms.values()) == sorted(f.terms.values())


def test_compose_matches_sequential(ex1):
    f = ex1[0] - ex1[0].constant_term + 9  # any polynomial works for apply
    t1 = MonomialTransform.linear([[1, 1], [0, 1]], base=(1, 0))
    t2 = MonomialTransform.linear([[2, 0], [1, 1]], base=(0, 2))
    assert t2.apply(t1.apply(f)) == t2.compose(t1).apply(f)
    f, a0 = P("1 + x^4 + y^4 - 3*x*y"), (0, 0)
    tn, g = normalize_at_vertex(f, a0)
    s = MonomialTransform.linear([[1, 0], [1, 1]])
    assert s.apply(tn.apply(f)) == s.compose(tn).apply(f)


def test_pullback():
    assert np.allclose(MonomialTransform.identity(2).pullback_point([2.0, 3.0]), [2.0, 3.0])
    e = np.e
    assert np.allclose(MonomialTransform.linear([[2, 0], [0, 2]]).pullback_point([e, e]), [e**2, e**2])
    with pytest.raises(ValueError):
        MonomialTransform.identity(2).pullback_point([1.0, 0.0])


def test_pullback_evaluation_random():
    rng = np.random.default_rng(4)
    for _ in range(30):
        g = random_laurent_bounded(rng)
        t = MonomialTransform.linear(random_unimodular(2, rng))
        gT = t.apply(g)
        y = np.exp(rng.uniform(-1, 1, size=2))
        lhs = g.evaluate([float(v) for v in t.pullback_point(y)])
        rhs = gT.evaluate([float(v) for v in y])
        assert abs(lhs - rhs) <= 1e-10 * max(1.0, abs(rhs))
        assert np.allclose(t.forward_point(t.pullback_point(y)), y)


def test_random_unimodular():
    rng = np.random.default_rng(0)
    for n in (1, 2, 3):
        for _ in range(10):
            m = random_unimodular(n, rng)
            assert abs(round(np.linalg.det(np.array(m, dtype=float)))) == 1
            assert all(isinstance(x, int) for row in m for x in row)


def test_normalize_random_admissible_3d():
    rng = np.random.default_rng(9)
    for _ in range(5):
        f, a0 = random_admissible(rng, n=3)
        t, g = normalize_at_vertex(f, a0)
        check_normalization(f, a0, t, g)


def test_orthant_infimum_invariant_small():
    rng = np.random.default_rng(21)
    for _ in range(3):
        g = random_laurent_bounded(rng)
        t = MonomialTransform.linear(random_unimodular(2, rng))
        a = minimize_orthant(g, starts=16, seed=0)
        b = minimize_orthant(t.apply(g), starts=16, seed=0)
        assert abs(a.value_or_residual - b.value_or_residual) < 1e-6
