"""The multivariate spline T_X as an exact piecewise polynomial.

``<T_X, f> = int_{t >= 0} f(sum_i t_i a_i) dt``.  Point values come from
an exact recursion that peels one weight at a time,

    T_X(xi) = int_0^oo T_{X minus a}(xi - t a) dt,

integrating the piecewise polynomial integrand segment by segment between
its wall crossings.  :func:`build_spline` interpolates those values into
one homogeneous polynomial per chamber.

Rank-deficient lists live on span(X); densities are then taken with
respect to the Lebesgue measure of the carrier coordinates (a basis of
span(X) picked greedily from X itself).
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Sequence

from . import rational as rq
from .errors import (DivergentError, InputError, InterpolationError, NotPointedError,
                     OnWallError, ZeroWeightError)
from .geometry import ChamberComplex, enumerate_chambers, enumerate_walls, pointedness_check
from .poly import MultiPoly, poly_interpolate


@dataclass(frozen=True)
class WeightList:
    """An ordered list of nonzero rational weights in Q^dim."""

    dim: int
    weights: tuple
    pointed: bool = field(init=False)
    rank: int = field(init=False)
    carrier: tuple = field(init=False)  # basis columns of span(X), ambient coords
    carrier_weights: tuple = field(init=False)  # weights in carrier coords
    to_carrier_matrix: tuple = field(init=False)  # left inverse of the carrier basis

    def __init__(self, weights: Sequence[Sequence], dim: int | None = None):
        ws = tuple(rq.vec(a) for a in weights)
        if dim is None:
            if not ws:
                raise InputError("cannot infer the dimension of an empty weight list")
            dim = len(ws[0])
        if any(len(a) != dim for a in ws):
            raise InputError(f"all weights must have dimension {dim}")
        for i, a in enumerate(ws):
            if rq.is_zero(a):
                raise ZeroWeightError(f"weight #{i} is zero; the weights must be a list of non zero weights")
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "weights", ws)
        object.__setattr__(self, "pointed", pointedness_check(ws) if ws else True)
        r = rq.rank(ws) if ws else 0
        object.__setattr__(self, "rank", r)
        if r == dim:
            basis = tuple(tuple(Fraction(int(i == j)) for i in range(dim)) for j in range(dim))
        else:
            basis = tuple(ws[i] for i in rq.independent_subset(ws))
        object.__setattr__(self, "carrier", basis)
        if r == 0:
            object.__setattr__(self, "to_carrier_matrix", ())
            object.__setattr__(self, "carrier_weights", ())
            return
        left = rq.left_inverse(basis)
        object.__setattr__(self, "to_carrier_matrix", left)
        object.__setattr__(self, "carrier_weights", tuple(rq.matvec(left, a) for a in ws))

    def __len__(self) -> int:
        return len(self.weights)

    @property
    def full_rank(self) -> bool:
        return self.rank == self.dim

    def require_pointed(self) -> None:
        if not self.weights:
            raise NotPointedError("empty weight list")
        if not self.pointed:
            raise NotPointedError("unbounded support: the weights do not span a pointed cone")

    def to_carrier(self, xi: Sequence) -> rq.Vec | None:
        """Carrier coordinates of ``xi``, or None when xi is off span(X)."""
        xi = rq.vec(xi)
        eta = rq.matvec(self.to_carrier_matrix, xi)
        back = rq.matvec(rq.columns_to_matrix(self.carrier), eta)
        return eta if back == xi else None

    def from_carrier(self, eta: Sequence) -> rq.Vec:
        return rq.matvec(rq.columns_to_matrix(self.carrier), eta)

    def concat(self, other: "WeightList") -> "WeightList":
        if other.dim != self.dim:
            raise InputError("weight lists live in different spaces")
        return WeightList(self.weights + other.weights, self.dim)

    def direct_sum(self, other: "WeightList") -> "WeightList":
        z1 = (Fraction(0),) * self.dim
        z2 = (Fraction(0),) * other.dim
        ws = [a + z2 for a in self.weights] + [z1 + b for b in other.weights]
        return WeightList(ws, self.dim + other.dim)

    def image(self, p: Sequence[Sequence]) -> "WeightList":
        return WeightList([rq.matvec(p, a) for a in self.weights], len(p))

    def to_json(self) -> dict:
        return {"dim": self.dim, "weights": [[rq.fraction_to_json(x) for x in a] for a in self.weights]}

    @classmethod
    def from_json(cls, data) -> "WeightList":
        if isinstance(data, list):
            return cls(data)
        if not isinstance(data, dict) or "weights" not in data:
            raise InputError("weight list JSON needs a 'weights' array")
        ws = data["weights"]
        if not isinstance(ws, list) or not all(isinstance(a, list) for a in ws):
            raise InputError("'weights' must be a list of coordinate lists")
        return cls(ws, data.get("dim"))


# ---------------------------------------------------------------------------
# exact recursive evaluation (carrier coordinates, full rank)

@dataclass(frozen=True)
class _ListData:
    rank: int
    walls: tuple
    facets: tuple  # inward facet normals of cone(X)
    functional: tuple  # positive on every weight


@lru_cache(maxsize=4096)
def _list_data(ws: tuple) -> _ListData:
    n = len(ws[0])
    r = rq.rank(ws)
    if r < n:
        return _ListData(r, (), (), ())
    walls = enumerate_walls(ws)
    facets = []
    for w in walls:
        vals = [rq.dot(w, a) for a in ws]
        if all(v >= 0 for v in vals):
            facets.append(w)
        elif all(v <= 0 for v in vals):
            facets.append(tuple(-x for x in w))
    c = rq.strictly_feasible_point(ws)
    if c is None:
        raise NotPointedError("unbounded support")
    return _ListData(r, tuple(walls), tuple(facets), c)


@lru_cache(maxsize=64)
def _open_newton_cotes(deg: int) -> tuple:
    """Weights on [0,1] for nodes j/(deg+2), j = 1..deg+1, exact to degree deg."""
    nodes = [Fraction(j, deg + 2) for j in range(1, deg + 2)]
    rows = [[x ** k for x in nodes] for k in range(deg + 1)]
    rhs = [Fraction(1, k + 1) for k in range(deg + 1)]
    return tuple(zip(nodes, rq.solve(rows, rhs)))


def _inside_open(facets: tuple, point: tuple) -> bool:
    return all(rq.dot(f, point) > 0 for f in facets)


@lru_cache(maxsize=200_000)
def _spline_value(ws: tuple, xi: tuple) -> Fraction:
    data = _list_data(ws)
    for w in data.walls:
        if rq.dot(w, xi) == 0:
            raise OnWallError(f"point {tuple(map(str, xi))} lies on a wall")
    if not _inside_open(data.facets, xi):
        return Fraction(0)
    m, r = len(ws), data.rank
    if m == r:
        return 1 / abs(rq.det(rq.columns_to_matrix(ws)))
    k = next(i for i in reversed(range(m)) if rq.rank(ws[:i] + ws[i + 1:]) == r)
    sub, a = ws[:k] + ws[k + 1:], ws[k]
    sub_data = _list_data(sub)
    c = data.functional
    t_max = rq.dot(c, xi) / rq.dot(c, a)
    cuts = {Fraction(0), t_max}
    for w in sub_data.walls:
        wa = rq.dot(w, a)
        if wa != 0:
            t = rq.dot(w, xi) / wa
            if 0 < t < t_max:
                cuts.add(t)
    cuts = sorted(cuts)
    rule = _open_newton_cotes(m - 1 - r)
    total = Fraction(0)
    for lo, hi in zip(cuts, cuts[1:]):
        mid = (lo + hi) / 2
        if not _inside_open(sub_data.facets, rq.sub(xi, rq.scale(mid, a))):
            continue
        h = hi - lo
        acc = Fraction(0)
        for x, wgt in rule:
            t = lo + h * x
            acc += wgt * _spline_value(sub, rq.sub(xi, rq.scale(t, a)))
        total += h * acc
    return total


def eval_point_recursive(X: WeightList, xi: Sequence) -> Fraction:
    """Exact density of T_X at ``xi`` (carrier Lebesgue measure)."""
    X.require_pointed()
    eta = X.to_carrier(xi)
    if eta is None:
        return Fraction(0)
    return _spline_value(X.carrier_weights, eta)


# ---------------------------------------------------------------------------
# chamberwise polynomial form

@dataclass(frozen=True)
class SplineForm:
    weights: WeightList
    complex: ChamberComplex
    pieces: tuple  # one MultiPoly per chamber, carrier coordinates

    @property
    def degree(self) -> int:
        return len(self.weights) - self.weights.rank

    def piece_at(self, xi: Sequence) -> MultiPoly | None:
        eta = self.weights.to_carrier(xi)
        if eta is None:
            return None
        idx = self.complex.locate(eta)
        return None if idx is None else self.pieces[idx]

    def __call__(self, xi: Sequence) -> Fraction:
        return eval_spline_form(self, xi)

    def conic_terms(self) -> list[tuple[tuple, MultiPoly]]:
        """(generator columns, polynomial) pairs in ambient coordinates.

        Each pair pairs as ``int_{u >= 0} q(Bu) f(Bu) du``; the factor
        |det B'| of the carrier-coordinate simplex makes this reproduce the
        density exactly.
        """
        X = self.weights
        out = []
        for chamber, piece in zip(self.complex.chambers, self.pieces):
            ambient_piece = piece.compose_linear(X.to_carrier_matrix)
            for simplex in chamber.simplices:
                cols = tuple(X.from_carrier(g) for g in simplex.generators)
                out.append((cols, ambient_piece * simplex.abs_det()))
        return out

    def wall_agreement_order(self) -> int | float:
        """Smallest k such that neighbouring pieces agree to order k on every wall.

        The region outside cone(X) counts as a chamber with piece 0.
        Order -1 means a jump; ``inf`` means no wall is visible at all.
        """
        cx = self.complex
        n = cx.dim
        zero = MultiPoly(n)
        order = math.inf
        for chamber, piece in zip(cx.chambers, self.pieces):
            for wi, w in enumerate(cx.walls):
                on = [r for r in chamber.rays if rq.dot(w, r) == 0]
                if (n > 1 and (not on or rq.rank(on) != n - 1)) or (n == 1 and on):
                    continue
                flipped = list(chamber.sign_vector)
                flipped[wi] = -flipped[wi]
                j = cx.chamber_by_signs(tuple(flipped))
                other = self.pieces[j] if j is not None else zero
                order = min(order, (piece - other).multiplicity_along(w) - 1)
        return order

    def to_json(self) -> dict:
        X = self.weights
        out = X.to_json()
        if not X.full_rank:
            out["carrier"] = [[rq.fraction_to_json(x) for x in c] for c in X.carrier]
        out["walls"] = [[rq.fraction_to_json(x) for x in w] for w in self.complex.walls]
        chambers = []
        for chamber, piece in zip(self.complex.chambers, self.pieces):
            rays = [X.from_carrier(r) for r in chamber.rays]
            index = {r: i for i, r in enumerate(chamber.rays)}
            chambers.append({
                "generators": [[rq.fraction_to_json(x) for x in r] for r in rays],
                "simplices": [[index[g] for g in s.generators] for s in chamber.simplices],
                "signVector": list(chamber.sign_vector),
                "poly": piece.to_json(),
            })
        out["chambers"] = chambers
        return out

    @classmethod
    def from_json(cls, data) -> "SplineForm":
        X = WeightList.from_json(data)
        X.require_pointed()
        cx = enumerate_chambers(X.carrier_weights)
        if "chambers" not in data:
            raise InputError("spline JSON needs a 'chambers' array")
        pieces: list = [None] * len(cx.chambers)
        for ch in data["chambers"]:
            try:
                sv = tuple(int(s) for s in ch["signVector"])
                idx = cx.chamber_by_signs(sv)
                poly = MultiPoly.from_json(ch["poly"], X.rank)
            except (KeyError, TypeError, ValueError) as exc:
                raise InputError(f"malformed chamber entry: {exc}") from exc
            if idx is None:
                raise InputError(f"sign vector {sv} is not a chamber of these weights")
            pieces[idx] = poly
        if any(p is None for p in pieces):
            raise InputError("spline JSON is missing chambers")
        return cls(X, cx, tuple(pieces))


Evaluator = Callable[[tuple], Fraction]


def _chamber_samples(rays: tuple, count: int, rng: random.Random) -> list[tuple]:
    pts = []
    for _ in range(count):
        coeffs = [rng.randint(1, 29) for _ in rays]
        pts.append(tuple(sum(c * r[i] for c, r in zip(coeffs, rays)) for i in range(len(rays[0]))))
    return pts


def build_spline(X: WeightList, evaluator: Evaluator | None = None, seed: int = 0,
                 max_retries: int = 8) -> SplineForm:
    """Chamberwise polynomial form of T_X.

    ``evaluator`` maps carrier coordinates to exact density values; it
    defaults to the recursive evaluation.  Other routes (tensor products,
    fiber integrals) plug in here and inherit the interpolation and the
    fresh-point consistency check.
    """
    X.require_pointed()
    ws = X.carrier_weights
    if evaluator is None:
        def evaluator(eta):
            return _spline_value(ws, eta)
    cx = enumerate_chambers(ws)
    r = X.rank
    d = len(X) - r
    count = math.comb(d + r - 1, r - 1)
    rng = random.Random(seed)
    pieces = []
    for chamber in cx.chambers:
        for attempt in range(max_retries):
            pts = _chamber_samples(chamber.rays, count + 1, rng)
            try:
                poly = poly_interpolate([(p, evaluator(p)) for p in pts[:count]], d, homogeneous=True)
            except InterpolationError:
                continue
            if poly(pts[-1]) != evaluator(pts[-1]):
                raise ArithmeticError("chamber values are not a single polynomial of the expected degree")
            break
        else:
            raise InterpolationError(f"no nonsingular sample set after {max_retries} retries")
        pieces.append(poly)
    return SplineForm(X, cx, tuple(pieces))


def eval_spline_form(S: SplineForm, xi: Sequence) -> Fraction:
    """Value of the chamber piece containing ``xi`` (0 outside cone(X))."""
    piece_eta = S.weights.to_carrier(xi)
    if piece_eta is None:
        return Fraction(0)
    idx = S.complex.locate(piece_eta)
    return Fraction(0) if idx is None else S.pieces[idx](piece_eta)


def laplace_transform(S: SplineForm, z: Sequence) -> Fraction:
    """Exact ``int T_X(xi) exp(-<xi, z>) dxi`` for z in the open dual cone."""
    z = rq.vec(z)
    for a in S.weights.weights:
        if rq.dot(a, z) <= 0:
            raise DivergentError(f"<a, z> = {rq.dot(a, z)} <= 0 for weight {tuple(map(str, a))}")
    zc = rq.matvec(rq.transpose(rq.columns_to_matrix(S.weights.carrier)), z)
    total = Fraction(0)
    for chamber, piece in zip(S.complex.chambers, S.pieces):
        for simplex in chamber.simplices:
            rates = [rq.dot(g, zc) for g in simplex.generators]
            q = piece.compose_linear(simplex.matrix())
            acc = Fraction(0)
            for e, c in q.coeffs.items():
                term = c
                for k, rate in zip(e, rates):
                    term *= Fraction(math.factorial(k)) / rate ** (k + 1)
                acc += term
            total += acc * simplex.abs_det()
    return total


def laplace_closed_form(X: WeightList, z: Sequence) -> Fraction:
    z = rq.vec(z)
    out = Fraction(1)
    for a in X.weights:
        out /= rq.dot(a, z)
    return out
