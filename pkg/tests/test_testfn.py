import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from infdex.distributions import ConicDensityTerm
from infdex.errors import InputError
from infdex.poly import MultiPoly
from infdex.testfn import (DivergentPairingError, PolyBump, PolyGaussian, ProductTestFunction, QuadratureConfig,
                           derivative_at, integrate_cone, make_testfn, pair_term_numeric)

QUADRANT = ((1, 0), (0, 1))


def test_gaussian_derivative_examples():
    g = PolyGaussian(1, (0,))
    assert derivative_at(g, (1,), (0,)) == 0
    assert derivative_at(g, (2,), (0,)) == pytest.approx(-1, abs=1e-15)


def test_bump_value_at_center():
    assert derivative_at(PolyBump(1), (0,), (0,)) == pytest.approx(1, abs=1e-15)


def test_bump_vanishes_outside():
    f = PolyBump(1, dim=2)
    assert f(np.array([[1.0, 0.0], [0.8, 0.8]])).tolist() == [0.0, 0.0]


def test_bump_order_limit():
    with pytest.raises(Exception, match="6"):
        PolyBump(1).derivative((7,), np.zeros((1, 1)))


def test_bump_derivatives_against_closed_form():
    # d/dx exp(1 - 1/(1 - x^2)) = -2x / (1 - x^2)^2 * f
    f = PolyBump(1)
    x = 0.3
    val = math.exp(1 - 1 / (1 - x * x))
    d1 = -2 * x / (1 - x * x) ** 2 * val
    assert derivative_at(f, (1,), (Fraction(3, 10),)) == pytest.approx(d1, rel=1e-8)


@given(st.tuples(st.integers(0, 2), st.integers(0, 2)).filter(lambda b: sum(b) <= 3),
       st.tuples(st.floats(-1.5, 1.5), st.floats(-1.5, 1.5)))
def test_gaussian_symbolic_matches_finite_differences(beta, point):
    g = PolyGaussian(Fraction(4, 5), (Fraction(1, 5), Fraction(-1, 3)), MultiPoly.from_json({"1,0": 1, "0,2": 2, "0,0": 1}, 2))
    sym = g.derivative(beta, np.array([point]))[0]
    # central differences with one Richardson step, built independently here
    def fd(b, p, h):
        if not any(b):
            return g(np.array([p]))[0]
        i = 0 if b[0] else 1
        lower = tuple(k - (j == i) for j, k in enumerate(b))
        e = np.eye(2)[i] * h
        return (fd(lower, p + e, h) - fd(lower, p - e, h)) / (2 * h)
    p = np.array(point)
    h = {0: 1e-3, 1: 1e-3, 2: 2e-3, 3: 5e-3}[sum(beta)]  # truncation vs roundoff
    rich = (4 * fd(beta, p, h / 2) - fd(beta, p, h)) / 3
    assert sym == pytest.approx(rich, rel=1e-8, abs=1e-8)


def test_make_testfn():
    g = make_testfn({"gaussian": {"sigma": 1, "center": [0]}})
    assert g(np.array([[0.0]]))[0] == 1.0
    b = make_testfn({"bump": {"R": 2, "poly": "1"}})
    assert b.support_ball()[1] == 2.0
    p = make_testfn({"product": [{"gaussian": {"sigma": 1, "center": [0]}}, {"bump": {"R": 1}}]})
    assert isinstance(p, ProductTestFunction) and p.dim == 2
    for bad in [{"bump": {"R": -1}}, {"gaussian": {"sigma": 0, "center": [0]}}, {"nope": {}},
                {"gaussian": {"center": [0], "poly": {"x": 1}}}]:
        with pytest.raises((InputError, ValueError)):
            make_testfn(bad)


def test_quadrant_gaussian():
    term = ConicDensityTerm(QUADRANT, MultiPoly.constant(2, 1))
    est = pair_term_numeric(term, PolyGaussian(1, (0, 0)), QuadratureConfig(seed=0))
    assert abs(est.value - math.pi / 2) <= 3 * est.error


def test_zero_polynomial_is_exact_zero():
    term = ConicDensityTerm(QUADRANT, MultiPoly(2))
    assert pair_term_numeric(term, PolyGaussian(1, (0, 0))).value == 0


def test_bump_in_opposite_orthant():
    term = ConicDensityTerm(QUADRANT, MultiPoly.constant(2, 1))
    est = pair_term_numeric(term, PolyBump(1, center=(-2, -2)))
    assert abs(est.value) <= 3 * est.error + 1e-300


def test_one_dimensional_cone_uses_adaptive_quadrature():
    term = ConicDensityTerm(((1,),), MultiPoly.constant(1, 1))
    est = pair_term_numeric(term, PolyGaussian(1, (0,)))
    assert est.value == pytest.approx(math.sqrt(2 * math.pi) / 2, rel=1e-12)
    assert est.error < 1e-10


def test_divergent_without_decay():
    with pytest.raises(DivergentPairingError):
        integrate_cone(lambda u: np.ones(len(u)), QUADRANT, None, QuadratureConfig())


def test_determinism():
    term = ConicDensityTerm(((1, 0), (0, 1), (1, 1)), MultiPoly.variable(2, 0))
    f = PolyBump(2, center=(Fraction(1, 2), Fraction(1, 2)))
    cfg = QuadratureConfig(samples=20_000, seed=11)
    a, b = pair_term_numeric(term, f, cfg), pair_term_numeric(term, f, cfg)
    assert a == b
    assert pair_term_numeric(term, f, QuadratureConfig(samples=20_000, seed=12)) != a


@pytest.mark.parametrize("gens, f", [
    (QUADRANT, PolyGaussian(1, (0, 0))),
    (((1, 0), (0, 1), (1, 1)), PolyBump(2, center=(Fraction(1, 2), Fraction(1, 2)))),
])
def test_quadrupling_samples_halves_error(gens, f):
    term = ConicDensityTerm(gens, MultiPoly.constant(2, 1))
    ratios = []
    for seed in range(5):
        e1 = pair_term_numeric(term, f, QuadratureConfig(samples=16_384, seed=seed))
        e4 = pair_term_numeric(term, f, QuadratureConfig(samples=65_536, seed=seed))
        ratios.append(e4.error / e1.error)
    assert all(r <= 0.5 for r in ratios), ratios


def test_product_test_function_factorizes():
    f1, f2 = PolyGaussian(1, (Fraction(1, 3),)), PolyBump(2, center=(Fraction(1, 2),))
    f = ProductTestFunction([f1, f2])
    pts = np.array([[0.1, 0.2], [-0.5, 1.0]])
    assert np.allclose(f(pts), f1(pts[:, :1]) * f2(pts[:, 1:]))
    assert np.allclose(f.derivative((1, 2), pts), f1.derivative((1,), pts[:, :1]) * f2.derivative((2,), pts[:, 1:]))
