import math

import numpy as np

from birchzero.minimize import Conclusion, check_and_minimize
from conftest import P


def test_three_xy():
    f = P("x^4 + y^4 + 1 - 3*x*y")
    r = check_and_minimize(f)
    assert r.conclusion == Conclusion.HAS_MINIMIZER
    assert abs(r.value + 0.125) < 1e-8
    assert np.allclose(r.minimizer, [math.sqrt(3) / 2] * 2, atol=1e-5)
    assert r.gradient_norm < 1e-8
    assert f.evaluate(r.witness) < f.constant_term


def test_two_xy_goes_below_origin_value():
    # f >= 0 on the orthant, but f(1/sqrt2, 1/sqrt2) = 1/2 < 1 = f(0)
    f = P("x^4 + y^4 + 1 - 2*x*y")
    r = check_and_minimize(f)
    assert r.conclusion == Conclusion.HAS_MINIMIZER
    assert abs(r.value - 0.5) < 1e-10
    assert np.allclose(r.minimizer, [1 / math.sqrt(2)] * 2, atol=1e-6)


def test_origin_cases():
    assert check_and_minimize(P("x^2 + y^2")).conclusion == Conclusion.ORIGIN
    r = check_and_minimize(P("x^4 + y^4 - x^2*y^2 + 7"))
    assert r.conclusion == Conclusion.ORIGIN and r.value == 7


def test_not_applicable():
    assert check_and_minimize(P("x^3 + y^2 - x*y")).conclusion == Conclusion.NOT_APPLICABLE
    # negative term on the boundary of the Newton polytope; f is unbounded below
    r = check_and_minimize(P("x^2 + y^2 - 3*x*y + 1"))
    assert r.conclusion == Conclusion.NOT_APPLICABLE
    assert r.witness is not None


def test_minimizer_beats_random_points():
    rng = np.random.default_rng(8)
    for text in ["x^4 + y^4 + 1 - 3*x*y", "x^6 + y^4 + x^2*y^2 + 2 - 4*x*y^2", "x^4 + y^4 + 1 - 2*x*y"]:
        f = P(text)
        r = check_and_minimize(f)
        assert r.conclusion == Conclusion.HAS_MINIMIZER
        assert r.gradient_norm < 1e-8
        Q = np.exp(rng.normal(0, 1.5, size=(1000, 2)))
        vals = [f.evaluate(list(q)) for q in Q]
        assert r.value < min(vals)
        assert f.evaluate(r.witness) < f.constant_term


def test_report_dict():
    d = check_and_minimize(P("x^4 + y^4 + 1 - 3*x*y")).as_dict()
    assert d["conclusion"] == "HasGlobalMinimizerInOrthant"
    assert [h["status"] for h in d["hypotheses"]] == ["pass"] * 5
