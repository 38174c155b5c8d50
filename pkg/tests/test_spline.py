import json
import random
from fractions import Fraction

import pytest
from hypothesis import assume, given, strategies as st

from conftest import positive_rationals
from infdex import rational as rq
from infdex.errors import DivergentError, NotPointedError, OnWallError, ZeroWeightError
from infdex.geometry import in_closed_cone
from infdex.models import brute_force_spline_pairing
from infdex.poly import MultiPoly
from infdex.spline import (SplineForm, WeightList, build_spline, eval_point_recursive, eval_spline_form,
                           laplace_closed_form, laplace_transform)
from infdex.testfn import PolyBump, QuadratureConfig
from infdex.verify import INVARIANT_LISTS, LAPLACE_LISTS, random_dual_point, random_off_wall_points

E1, E2 = (1, 0), (0, 1)
TRIANGLE = WeightList([E1, E2, (1, 1)])


def test_weight_list_rejects_zero():
    with pytest.raises(ZeroWeightError, match="nonzero weights"):
        WeightList([(1, 0), (0, 0)])


def test_weight_list_flags():
    assert WeightList([(1,), (2,)]).pointed
    assert not WeightList([(1,), (-1,)]).pointed
    with pytest.raises(NotPointedError):
        build_spline(WeightList([(1,), (-1,)]))


@pytest.mark.parametrize("ws, xi, value", [
    ([E1, E2], (1, 2), 1),
    ([(1,), (1,)], (3,), 3),
    ([E1, E2, (1, 1)], (2, 1), 1),
    ([(1,), (1,)], (-1,), 0),
    ([(1,), (1,), (1,)], (4,), 8),  # t^2 / 2
    ([(2,)], (5,), Fraction(1, 2)),  # density of t -> 2t
])
def test_recursive_values(ws, xi, value):
    assert eval_point_recursive(WeightList(ws), xi) == value


def test_recursive_on_wall():
    with pytest.raises(OnWallError, match="on-wall evaluation undefined"):
        eval_point_recursive(TRIANGLE, (1, 1))


def test_build_examples():
    S = build_spline(WeightList([(1,)]))
    assert len(S.pieces) == 1 and S.pieces[0] == MultiPoly.constant(1, 1)
    S = build_spline(WeightList([(1,), (1,)]))
    assert len(S.pieces) == 1 and S.pieces[0] == MultiPoly.variable(1, 0)
    S = build_spline(TRIANGLE)
    x, y = MultiPoly.variable(2, 0), MultiPoly.variable(2, 1)
    assert len(S.pieces) == 2
    assert S.piece_at((3, 1)) == y  # xi1 > xi2 > 0
    assert S.piece_at((1, 3)) == x


def test_eval_examples():
    S = build_spline(WeightList([(1,), (1,)]))
    assert eval_spline_form(S, (5,)) == 5
    assert eval_spline_form(S, (-2,)) == 0
    with pytest.raises(OnWallError):
        eval_spline_form(S, (0,))


def test_triangle_is_min():
    S = build_spline(TRIANGLE)
    rng = random.Random(3)
    for _ in range(20):
        a, b = Fraction(rng.randint(1, 50), 7), Fraction(rng.randint(1, 50), 7)
        if a != b:
            assert eval_spline_form(S, (a, b)) == min(a, b)


@pytest.mark.parametrize("ws, z, value", [
    ([E1, E2], (1, 2), Fraction(1, 2)),
    ([(1,), (1,)], (3,), Fraction(1, 9)),
    ([E1, E2, (1, 1)], (1, 1), Fraction(1, 2)),
])
def test_laplace_examples(ws, z, value):
    assert laplace_transform(build_spline(WeightList(ws)), z) == value


def test_laplace_divergent():
    with pytest.raises(DivergentError, match="Laplace integral divergent"):
        laplace_transform(build_spline(TRIANGLE), (1, -1))


@pytest.mark.parametrize("name", list(LAPLACE_LISTS))
def test_laplace_identity(name):
    X = WeightList(LAPLACE_LISTS[name])
    S = build_spline(X)
    rng = random.Random(name)
    for _ in range(20):
        z = random_dual_point(X, rng)
        assert laplace_transform(S, z) == laplace_closed_form(X, z)


def test_laplace_identity_rank_deficient():
    X = WeightList([(1, 1), (2, 2), (1, 1)])
    S = build_spline(X)
    # the carrier measure is the parametrization by the first weight
    for z in [(1, 1), (Fraction(1, 2), 3)]:
        assert laplace_transform(S, z) == laplace_closed_form(X, z)


lists = st.sampled_from(INVARIANT_LISTS)


@given(lists, st.randoms(use_true_random=False), positive_rationals)
def test_homogeneity(ws, rnd, lam):
    X = WeightList(ws)
    S = build_spline(X)
    (pt,) = random_off_wall_points(S, 1, rnd)
    assert eval_spline_form(S, rq.scale(lam, pt)) == lam ** (len(X) - X.rank) * eval_spline_form(S, pt)


@given(lists, st.randoms(use_true_random=False))
def test_support_and_nonnegativity(ws, rnd):
    X = WeightList(ws)
    S = build_spline(X)
    for pt in random_off_wall_points(S, 5, rnd):
        v = eval_spline_form(S, pt)
        if in_closed_cone(X.weights, pt):
            assert v >= 0
        else:
            assert v == 0


@given(lists, st.randoms(use_true_random=False))
def test_interpolation_matches_recursion(ws, rnd):
    X = WeightList(ws)
    S = build_spline(X, seed=rnd.randint(0, 1000))
    for pt in random_off_wall_points(S, 5, rnd):
        assert eval_spline_form(S, pt) == eval_point_recursive(X, pt)


def test_pieces_are_homogeneous_of_the_right_degree():
    for ws in INVARIANT_LISTS:
        X = WeightList(ws)
        S = build_spline(X)
        for p in S.pieces:
            assert p.is_homogeneous(len(X) - X.rank)


@pytest.mark.parametrize("ws, order", [
    ([(1,)], -1),
    ([(1,), (1,)], 0),
    ([(1,), (1,), (1,)], 1),
])
def test_wall_agreement_order(ws, order):
    assert build_spline(WeightList(ws)).wall_agreement_order() == order


def test_triangle_continuous_across_diagonal():
    S = build_spline(TRIANGLE)
    diff = S.piece_at((1, 3)) - S.piece_at((3, 1))
    assert diff.multiplicity_along((1, -1)) - 1 == 0
    assert S.wall_agreement_order() == 0


def test_rank_deficient_list():
    X = WeightList([(1, 1), (2, 2)])
    assert X.rank == 1 and not X.full_rank
    S = build_spline(X)
    # t1 (1,1) + t2 (2,2) = u (1,1) with u = t1 + 2 t2: density u / 2 in the carrier coordinate u
    assert eval_spline_form(S, (3, 3)) == Fraction(3, 2)
    assert eval_spline_form(S, (3, 2)) == 0
    assert eval_point_recursive(X, (3, 3)) == Fraction(3, 2)


def test_json_round_trip_exact():
    for ws in INVARIANT_LISTS:
        S = build_spline(WeightList(ws))
        data = json.loads(json.dumps(S.to_json()))
        S2 = SplineForm.from_json(data)
        rng = random.Random(0)
        for pt in random_off_wall_points(S, 10, rng):
            assert eval_spline_form(S2, pt) == eval_spline_form(S, pt)


def test_json_shape():
    data = build_spline(TRIANGLE).to_json()
    assert data["dim"] == 2 and len(data["chambers"]) == 2
    for ch in data["chambers"]:
        assert set(ch) >= {"generators", "signVector", "poly"}


@pytest.mark.parametrize("ws, centers", [
    ([(1,), (1,)], [(Fraction(3),), (Fraction(1, 2),)]),
    ([E1, E2, (1, 1)], [(Fraction(2), Fraction(1)), (Fraction(1, 2), Fraction(3, 2))]),
])
def test_values_against_brute_force(ws, centers):
    # a narrow symmetric bump inside one chamber integrates a linear density to value x mass
    X = WeightList(ws)
    S = build_spline(X)
    cfg = QuadratureConfig(samples=400_000, seed=5)
    for c in centers:
        f = PolyBump(Fraction(1, 10), center=c)
        mass = brute_force_spline_pairing(WeightList([tuple(int(i == j) for j in range(X.dim))
                                                      for i in range(X.dim)]), f, cfg)
        # the identity cone contains the whole bump, so this is its mass
        v = float(eval_spline_form(S, c))
        est = brute_force_spline_pairing(X, f, cfg)
        assert abs(est.value.real - v * mass.value.real) <= 3 * (est.error + v * mass.error)


@given(st.lists(st.tuples(st.integers(0, 3), st.integers(0, 3)), min_size=2, max_size=4))
def test_build_matches_recursion_on_random_lists(ws):
    assume(all(w != (0, 0) for w in ws))
    X = WeightList(ws)
    S = build_spline(X)
    rng = random.Random(0)
    for pt in random_off_wall_points(S, 3, rng):
        assert eval_spline_form(S, pt) == eval_point_recursive(X, pt)
