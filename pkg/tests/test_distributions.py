import json
import math
import random
from fractions import Fraction

import numpy as np
import pytest
from scipy import integrate

from infdex import rational as rq
from infdex.distributions import (ONE, Distribution, ExactScalar, PointDerivativeTerm, ScalarPrefactor, convolve, delta0, eval_density,
                                  eval_density_exact, fourier_of_polynomial, induce, infdex_induced, lebesgue, pair,
                                  pushforward, spline_distribution, tensor)
from infdex.errors import (ClosedClassError, InputError, NotCompactAlongFibersError, NotSurjectiveError,
                           OnWallError, SmoothnessError)
from infdex.models import brute_force_spline_pairing
from infdex.poly import MultiPoly
from infdex.spline import WeightList, eval_spline_form
from infdex.testfn import Estimate, PolyBump, PolyGaussian, ProductTestFunction, QuadratureConfig
from infdex.verify import random_off_wall_points

E1, E2 = (1, 0), (0, 1)
CFG = QuadratureConfig(samples=100_000, seed=0)


def T(*ws, prefactor=ONE):
    return spline_distribution(WeightList(list(ws)), prefactor)


def agree(a: Estimate, b, k=3.0):
    if isinstance(b, Estimate):
        return abs(a.value - b.value) <= k * (a.error + b.error) + 1e-12 * abs(a.value)
    return abs(a.value - b) <= k * a.error + 1e-12 * abs(b)


def quad(fun, lo, hi):
    return integrate.quad(fun, lo, hi, limit=400, epsabs=1e-13, epsrel=1e-12)[0]


# scalars

def test_prefactor_canonical_and_value():
    p = ScalarPrefactor(Fraction(3), 2, 6)
    assert p.i_pow == 2
    assert complex(p) == pytest.approx(-3 * (2 * math.pi) ** 2)
    assert ScalarPrefactor.two_pi_i(2) * ScalarPrefactor.i_power(2) == ScalarPrefactor(1, 2, 0)
    assert ScalarPrefactor.from_json(p.to_json()) == p


def test_exact_scalar_folds_i_squared():
    s = ExactScalar.of(ScalarPrefactor(2, 0, 2), ScalarPrefactor(2, 0, 0))
    assert s.parts == ()


# delta and fourier

def test_delta_pairings():
    assert pair(delta0(1), PolyGaussian(1, (0,))).value == 1
    f = PolyGaussian(1, (Fraction(1, 2), Fraction(-1, 3)))
    assert pair(delta0(2), f).value == pytest.approx(math.exp(-(0.25 + 1 / 9) / 2), rel=1e-14)
    assert tensor(delta0(1), delta0(1)) == delta0(2)


def test_fourier_of_constant_is_delta():
    assert pair(fourier_of_polynomial(MultiPoly.constant(1, 1)), PolyGaussian(1, (Fraction(1, 3),))).value == \
        pytest.approx(math.exp(-1 / 18), rel=1e-14)


@pytest.mark.parametrize("k, factor", [(1, -1j), (2, -1), (3, 1j)])
def test_fourier_of_monomials(k, factor):
    # x^k pairs to (-i d)^k f (0)
    c = 0.4
    f = PolyGaussian(1, (Fraction(2, 5),))
    derivs = {1: c, 2: c * c - 1, 3: c ** 3 - 3 * c}  # Hermite-type, times f(0)
    want = factor * derivs[k] * math.exp(-c * c / 2)
    got = pair(fourier_of_polynomial(MultiPoly.variable(1, 0) ** k), f).value
    assert got == pytest.approx(want, rel=1e-12)


# tensor

def test_tensor_of_heavisides_is_quadrant():
    D = tensor(T((1,)), T((1,)))
    assert D.spline_tag.weights == WeightList([E1, E2]).weights
    for pt in [(1, 2), (Fraction(1, 3), 5)]:
        assert eval_density(D, pt) == 1
    assert eval_density(D, (-1, 2)) == 0


def test_tensor_with_delta_embeds():
    D = tensor(delta0(1), lebesgue(1))
    f = PolyGaussian(1, (Fraction(1, 3), Fraction(1, 5)))
    want = quad(lambda y: f(np.array([[0.0, y]]))[0], -12, 12)
    assert agree(pair(D, f, CFG), want)


def test_tensor_rejects_derivative_with_density():
    d = Distribution(1, ONE, fourier_of_polynomial(MultiPoly.variable(1, 0)).terms)
    with pytest.raises(ClosedClassError):
        tensor(d, T((1,)))


@pytest.mark.parametrize("D1, D2, f1, f2", [
    (T((1,)), T((1,), (1,)), PolyGaussian(1, (Fraction(1, 3),)), PolyBump(2, center=(Fraction(1, 2),))),
    (delta0(1), T((1,)), PolyGaussian(1, (Fraction(1, 5),)), PolyGaussian(Fraction(1, 2), (0,))),
    (lebesgue(1), T((2,)), PolyBump(1, center=(Fraction(1, 4),)), PolyGaussian(1, (Fraction(-1, 2),))),
    (T((1,), prefactor=ScalarPrefactor.two_pi_i()), T((1,), (1,), (1,)), PolyGaussian(1, (0,)),
     PolyGaussian(1, (Fraction(1, 2),))),
    (T(E1, E2, (1, 1)), T((1,)), PolyBump(2, center=(Fraction(1, 2), Fraction(1, 2))), PolyGaussian(1, (0,))),
])
def test_tensor_pairing_factorizes(D1, D2, f1, f2):
    lhs = pair(tensor(D1, D2), ProductTestFunction([f1, f2]), CFG)
    a, b = pair(D1, f1, CFG), pair(D2, f2, CFG)
    rhs = Estimate(a.value * b.value, abs(a.value) * b.error + abs(b.value) * a.error)
    assert agree(lhs, rhs)


# convolution

def test_convolution_examples():
    D = convolve(T(E1), T(E2))
    assert D.spline_tag.weights == WeightList([E1, E2]).weights
    for D0 in [T(E1, E2, (1, 1)), lebesgue(2), delta0(2)]:
        assert convolve(delta0(2), D0) == D0


def test_derivative_of_delta_on_cubic_spline():
    D = convolve(_d(1), T((1,), (1,), (1,)))
    for x in [Fraction(1, 2), Fraction(3)]:
        assert eval_density_exact(D, (x,)) == ExactScalar.of(ScalarPrefactor(x))
    assert eval_density(D, (-1,)) == 0
    # <T, -f'> for T = t^2/2 on [0, inf), by quadrature
    f = PolyGaussian(1, (Fraction(1, 2),))
    want = quad(lambda t: -t * t / 2 * f.derivative((1,), np.array([[t]]))[0], 0, 13)
    assert agree(pair(D, f, CFG), want)


def _d(k):
    return Distribution(1, ONE, (PointDerivativeTerm.make({(k,): 1}),))


def test_derivative_convolution_needs_smoothness():
    # d/dx H = delta_0 and d^2/dx^2 (x H) = delta_0 leave the density class
    with pytest.raises(SmoothnessError):
        convolve(_d(1), T((1,)))
    with pytest.raises(SmoothnessError):
        convolve(_d(2), T((1,), (1,)))
    D = convolve(_d(2), T((1,), (1,), (1,)))
    assert eval_density(D, (Fraction(5, 2),)) == 1
    assert eval_density(convolve(_d(1), T((1,), (1,))), (3,)) == 1


def test_density_density_rejected():
    with pytest.raises(ClosedClassError, match="convolution not in closed class"):
        convolve(lebesgue(1), T((1,)))


SPLINE_PAIRS = [([(1,)], [(1,)]), ([(1,), (1,)], [(2,)]), ([E1], [E2]), ([E1, E2], [(1, 1)]),
                ([E1, (1, 1)], [E2, (1, 2)])]


@pytest.mark.parametrize("xs, ys", SPLINE_PAIRS)
def test_convolution_commutative_and_via_pushforward(xs, ys):
    a, b = T(*xs), T(*ys)
    ab, ba = convolve(a, b), convolve(b, a)
    assert sorted(ab.spline_tag.weights) == sorted(ba.spline_tag.weights)
    n = len(xs[0])
    add = [tuple(int(j == i or j == i + n) for j in range(2 * n)) for i in range(n)]
    pushed = pushforward(tensor(a, b), add)
    for pt in random_off_wall_points(ab.spline, 10, random.Random(0)):
        assert eval_density(ab, pt) == eval_density(ba, pt) == eval_density(pushed, pt)


def test_convolution_associative():
    a, b, c = T(E1), T(E2, (1, 1)), T((1, 2))
    lhs, rhs = convolve(convolve(a, b), c), convolve(a, convolve(b, c))
    for pt in random_off_wall_points(lhs.spline, 10, random.Random(1)):
        assert eval_density(lhs, pt) == eval_density(rhs, pt)


# pushforward

def test_pushforward_identity():
    D = T(E1, E2, (1, 1))
    assert pushforward(D, [E1, E2]) is D


def test_pushforward_sum_map_gives_linear_spline():
    D = pushforward(T(E1, E2), [(1, 1)])
    assert D.spline.pieces[0] == MultiPoly.variable(1, 0)
    for f in [PolyBump(1, center=(Fraction(1, 2),)), PolyBump(2, center=(Fraction(1),)),
              PolyBump(Fraction(1, 2), center=(Fraction(1, 4),))]:
        f2 = lambda pts: f(pts[:, :1] + pts[:, 1:])
        # <T_[e1,e2], f(x + y)> by quadrature over the quadrant
        lo, hi = 0.0, float(f.center[0]) + float(f.radius)
        want = integrate.dblquad(lambda y, x: f2(np.array([[x, y]]))[0], lo, hi, 0, lambda x: hi - x,
                                 epsabs=1e-11)[0]
        assert agree(pair(D, f, CFG), want)


def test_pushforward_inadmissible():
    with pytest.raises(NotCompactAlongFibersError, match="not compactly supported along fibers"):
        pushforward(T(E1, (1, 1)), [E2])
    with pytest.raises(NotCompactAlongFibersError):
        pushforward(T(E1, (-1, 1)), [E1])


def test_pushforward_of_point_terms():
    d = fourier_of_polynomial(MultiPoly.variable(2, 0) + MultiPoly.variable(2, 1))
    pushed = pushforward(d, [(1, 2)])
    f = PolyGaussian(1, (Fraction(1, 3),))
    # <p_* d, f> = <d, f o p> = -i (d1 + d2)(f o p)(0) = -i (1 + 2) f'(0)
    want = -1j * 3 * f.derivative((1,), np.zeros((1, 1)))[0]
    assert pair(pushed, f).value == pytest.approx(want, rel=1e-12)


def test_pushforward_of_conic_terms():
    D = pushforward(lebesgue(2), [(1, 0), (0, 1)])
    assert D == lebesgue(2)
    with pytest.raises(ClosedClassError):
        pushforward(lebesgue(2), [(1, 1)])


@pytest.mark.parametrize("ws, p", [
    ([E1, E2, (1, 1)], [(1, 2)]),
    ([(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1)], [(1, 0, 1), (0, 1, 1)]),
    ([(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 0)], [(1, 0, 0), (0, 1, 1)]),
])
def test_pushforward_equals_direct_build(ws, p):
    from infdex.spline import build_spline
    X = WeightList(ws)
    pushed = pushforward(spline_distribution(X), p)
    direct = build_spline(X.image(p))
    for pt in random_off_wall_points(direct, 10, random.Random(2)):
        assert eval_spline_form(pushed.spline, pt) == eval_spline_form(direct, pt)


# induction

def _fiber(f, z, p):
    if p == (1, 0):
        return quad(lambda v: f(np.array([[z, v]]))[0], -13, 13)
    return quad(lambda v: f(np.array([[v, z - v]]))[0], -13, 13)


def test_induce_delta_is_fiber_lebesgue():
    f = PolyGaussian(1, (Fraction(1, 5), Fraction(1, 3)))
    D = induce(delta0(1), [(1, 0)], [(1,), (0,)])
    assert agree(pair(D, f, CFG), _fiber(f, 0.0, (1, 0)))


def test_induce_lebesgue_is_lebesgue():
    D = induce(lebesgue(1), [(1, 0)], [(1,), (0,)])
    f = PolyBump(1, center=(Fraction(1, 4), 0), dim=2)
    assert agree(pair(D, f, CFG), pair(lebesgue(2), f, CFG))
    assert eval_density(D, (Fraction(1, 3), Fraction(-2, 7))) == 1


def test_induce_heaviside_is_half_plane():
    D = induce(T((1,)), [(1, 0)], [(1,), (0,)])
    assert eval_density(D, (1, -5)) == 1
    assert eval_density(D, (1, 5)) == 1
    assert eval_density(D, (-1, 5)) == 0


@pytest.mark.parametrize("V, hand", [
    (delta0(1), lambda g: g(0.0)),
    (T((1,)), lambda g: quad(g, 0, 13)),
    (T((1,), (1,)), lambda g: quad(lambda z: z * g(z), 0, 13)),
])
@pytest.mark.parametrize("p, splittings", [((1, 0), [[(1,), (0,)], [(1,), (1,)]]),
                                           ((1, 1), [[(1,), (0,)], [(0,), (1,)]])])
def test_induction_adjoint_and_splitting_invariant(V, hand, p, splittings):
    f = PolyGaussian(1, (Fraction(3, 10), Fraction(-1, 5)))
    want = hand(lambda z: _fiber(f, z, p))
    ests = [pair(induce(V, [p], s), f, CFG) for s in splittings]
    assert all(agree(e, want) for e in ests)
    assert agree(ests[0], ests[1])


def test_induce_errors():
    with pytest.raises(NotSurjectiveError):
        induce(T((1,)), [(0, 0)], [(1,), (0,)])
    with pytest.raises(InputError):
        induce(T((1,)), [(1, 0)], [(2,), (0,)])
    with pytest.raises(ClosedClassError):
        induce(fourier_of_polynomial(MultiPoly.variable(1, 0)), [(1, 0)], [(1,), (0,)])


def test_infdex_induced_prefactor():
    D = infdex_induced(T((1,)), [(1, 0, 0)], [(1,), (0,), (0,)])
    assert D.prefactor == ScalarPrefactor.i_power(2)


# pairing and evaluation

def test_pair_two_pi_i_heaviside():
    D = T((1,), prefactor=ScalarPrefactor.two_pi_i())
    est = pair(D, PolyGaussian(1, (0,)))
    assert agree(est, 2j * math.pi * math.sqrt(2 * math.pi) / 2)


def test_pair_matches_brute_force_oracle():
    X = WeightList([E1, E2, (1, 1)])
    f = PolyBump(2, center=(Fraction(1, 2), Fraction(1, 2)))
    D = spline_distribution(X, ScalarPrefactor.two_pi_i(3))
    brute = brute_force_spline_pairing(X, f, CFG).scaled(complex(ScalarPrefactor.two_pi_i(3)))
    assert agree(pair(D, f, CFG), brute)


def test_pairing_linearity():
    f = PolyGaussian(1, (Fraction(1, 4), Fraction(-1, 4)))
    D1, D2 = T(E1, E2, (1, 1)), lebesgue(2)
    a, b = ScalarPrefactor(3), ScalarPrefactor.two_pi_i()
    lhs = pair(D1.scaled(a) + D2.scaled(b), f, CFG)
    rhs = pair(D1, f, CFG).scaled(complex(a)) + pair(D2, f, CFG).scaled(complex(b))
    assert agree(lhs, rhs)


def test_eval_density_examples():
    D = T(E1, E2, prefactor=ScalarPrefactor.two_pi_i(2))
    assert eval_density(D, (1, 1)) == pytest.approx((2j * math.pi) ** 2)
    assert eval_density(T((1,), (1,)), (4,)) == 4
    with pytest.raises(InputError):
        eval_density(delta0(1), (1,))
    with pytest.raises(OnWallError):
        eval_density(lebesgue(1), (0,))


def test_distribution_json_round_trip():
    for D in [T(E1, E2, (1, 1), prefactor=ScalarPrefactor.two_pi_i(3)), lebesgue(2, ScalarPrefactor.i_power(1)),
              fourier_of_polynomial(MultiPoly.from_json({"2": 1, "1": "1/2"}, 1))]:
        data = json.loads(json.dumps(D.to_json()))
        D2 = Distribution.from_json(data)
        assert D2.prefactor == D.prefactor and D2.dim == D.dim
        if D.spline is None:
            assert D2 == D
        else:
            assert D2.spline_tag.weights == D.spline_tag.weights
    assert set(D.to_json()) >= {"dim", "prefactor", "terms"}


def test_rank_deficient_pushforward_target():
    D = pushforward(T(E1, E2), [(1, 1), (2, 2)])
    assert D.spline_tag.rank == 1
    assert eval_density(D, (3, 6)) == eval_spline_form(D.spline, (3, 6))
    assert rq.rank([(1, 1), (2, 2)]) == 1
