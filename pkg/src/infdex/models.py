"""Catalog of torus-action models with their closed-form indices and finite-s oracles.

Each model is reduced (Fourier inversion on the Lie algebra, polar
coordinates on each C factor) to a sum of pieces

    scalar * int_{u >= 0} chi(u / s) (P(-i d) f)(B u) du,

one per parametrized cone of the moment image.  ``finite_s_pairing``
computes these integrals at a given s with a cutoff chi, which is the
quantity whose large-s limit defines the index.  The point model is the
exception: its value ``int P(x) fhat(x) dx`` is computed by oscillatory
quadrature of the Fourier transform itself.
"""
from __future__ import annotations

import dataclasses
import functools
import itertools
import math
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Sequence

import numpy as np
from scipy import integrate

from . import rational as rq
from .distributions import (ONE, ConicDensityTerm, Distribution, ScalarPrefactor, convolve, delta0,
                            fourier_of_polynomial, lebesgue, spline_distribution, tensor)
from .errors import InputError, NotPointedError, UnsupportedError
from .geometry import pointedness_check, positive_functional
from .poly import MultiPoly
from .spline import WeightList
from .testfn import (Estimate, PolyGaussian, ProductTestFunction, QuadratureConfig,
                     TestFunction, integrate_cone)


@dataclass(frozen=True)
class CutoffSpec:
    """Smooth radial cutoff: 1 on the ball of radius R0/2, 0 outside radius R0."""

    radius: float = 1.0

    def __call__(self, v: np.ndarray) -> np.ndarray:
        v = np.atleast_2d(v)
        if v.shape[1] == 0:
            return np.ones(v.shape[0])
        x = 2.0 * np.linalg.norm(v, axis=1) / self.radius - 1.0
        return 1.0 - _smoothstep(x)


def _smoothstep(x: np.ndarray) -> np.ndarray:
    x = np.clip(x, 0.0, 1.0)
    with np.errstate(divide="ignore", over="ignore"):
        a = np.where(x > 0, np.exp(-1.0 / np.where(x > 0, x, 1.0)), 0.0)
        b = np.where(x < 1, np.exp(-1.0 / np.where(x < 1, 1.0 - x, 1.0)), 0.0)
    return a / (a + b)


@dataclass(frozen=True)
class Piece:
    scalar: ScalarPrefactor
    generators: tuple  # columns in the model's dual space; empty for a point


# ---------------------------------------------------------------------------
# models

class Model:
    dim: int

    def pieces(self) -> list[Piece]:
        raise NotImplementedError

    def expected(self) -> Distribution:
        raise NotImplementedError


@dataclass(frozen=True)
class Point(Model):
    dim: int = 1

    def pieces(self):
        return [Piece(ONE, ())]

    def expected(self):
        return delta0(self.dim)


@dataclass(frozen=True)
class CircleCotangent(Model):
    """T*S^1 with theta in [0, 2 pi)."""

    dim: int = 1

    def pieces(self):
        tp = ScalarPrefactor.two_pi_i(1)
        return [Piece(tp, ((Fraction(1),),)), Piece(tp, ((Fraction(-1),),))]

    def expected(self):
        return lebesgue(1, ScalarPrefactor.two_pi_i(1))


@dataclass(frozen=True)
class LinearTorus(Model):
    """C^m with moment map sum_i |z_i|^2 / 2 a_i."""

    weights: WeightList

    def __post_init__(self):
        self.weights.require_pointed()

    @property
    def dim(self) -> int:
        return self.weights.dim

    def pieces(self):
        return [Piece(ScalarPrefactor.two_pi_i(len(self.weights)), self.weights.weights)]

    def expected(self):
        return spline_distribution(self.weights, ScalarPrefactor.two_pi_i(len(self.weights)))


def PlaneRotation() -> LinearTorus:
    """R^2 rotated by the circle: the one-weight linear model."""
    return LinearTorus(WeightList([(1,)]))


@dataclass(frozen=True)
class CotangentTorus(Model):
    """T*T^n under left x right translation, Haar measure of volume 1.

    The moment image is the antidiagonal {(z, -z)}; the index is i^n times
    Lebesgue measure dz on it.
    """

    n: int = 1

    @property
    def dim(self) -> int:
        return 2 * self.n

    def _orthants(self):
        n = self.n
        for signs in itertools.product((1, -1), repeat=n):
            yield tuple(
                tuple(Fraction(s if i == j else 0) for i in range(n)) +
                tuple(Fraction(-s if i == j else 0) for i in range(n))
                for j, s in enumerate(signs))

    def pieces(self):
        return [Piece(ScalarPrefactor.i_power(self.n), g) for g in self._orthants()]

    def expected(self):
        terms = tuple(ConicDensityTerm(g, MultiPoly.constant(self.dim, 1)) for g in self._orthants())
        return Distribution(self.dim, ScalarPrefactor.i_power(self.n), terms)


def _block(cols, offset, total):
    return tuple((Fraction(0),) * offset + tuple(c) + (Fraction(0),) * (total - offset - len(c)) for c in cols)


@dataclass(frozen=True)
class ProductModel(Model):
    a: Model
    b: Model

    @property
    def dim(self) -> int:
        return self.a.dim + self.b.dim

    def pieces(self):
        n = self.dim
        return [Piece(pa.scalar * pb.scalar,
                      _block(pa.generators, 0, n) + _block(pb.generators, self.a.dim, n))
                for pa in self.a.pieces() for pb in self.b.pieces()]

    def expected(self):
        return tensor(self.a.expected(), self.b.expected())


@dataclass(frozen=True)
class DiagonalModel(Model):
    """M_a x M_b under the diagonal action, moment map mu_a + mu_b."""

    a: Model
    b: Model

    def __post_init__(self):
        if self.a.dim != self.b.dim:
            raise InputError("diagonal model needs two models for the same torus")
        for p in self.pieces():
            if not pointedness_check(p.generators):
                raise NotPointedError("zero fiber of the diagonal moment map is not the product of the zero fibers")

    @property
    def dim(self) -> int:
        return self.a.dim

    def pieces(self):
        return [Piece(pa.scalar * pb.scalar, tuple(pa.generators) + tuple(pb.generators))
                for pa in self.a.pieces() for pb in self.b.pieces()]

    def expected(self):
        return convolve(self.a.expected(), self.b.expected())


def model_from_json(data) -> Model:
    if not isinstance(data, dict) or "model" not in data:
        raise InputError("model JSON needs a 'model' field")
    kind = data["model"]
    if kind == "point":
        return Point(int(data.get("dim", 1)))
    if kind == "circle_cotangent":
        return CircleCotangent()
    if kind == "plane_rotation":
        return PlaneRotation()
    if kind == "linear_torus":
        return LinearTorus(WeightList.from_json(data))
    if kind == "cotangent_torus":
        return CotangentTorus(int(data.get("n", data.get("dim", 1))))
    if kind in ("product", "diagonal"):
        if "a" not in data or "b" not in data:
            raise InputError(f"{kind} model needs 'a' and 'b'")
        cls = ProductModel if kind == "product" else DiagonalModel
        return cls(model_from_json(data["a"]), model_from_json(data["b"]))
    raise InputError(f"unknown model {kind!r}")


def model_poly(data, model: Model) -> MultiPoly | None:
    if isinstance(data, dict) and "poly" in data:
        return MultiPoly.from_json(data["poly"], model.dim)
    return None


# ---------------------------------------------------------------------------
# closed forms and finite-s oracles

def expected_infdex(model: Model, P: MultiPoly | None = None) -> Distribution:
    """Closed-form index of the class P (default 1)."""
    base = model.expected()
    if P is None or P == 1:
        return base
    if not isinstance(model, (Point, LinearTorus)):
        raise UnsupportedError("polynomial classes are supported on point and linear models")
    return convolve(fourier_of_polynomial(P), base)


def _operator(P: MultiPoly | None, n: int) -> dict:
    """P(-i d) as {beta: complex coefficient}."""
    if P is None:
        return {(0,) * n: 1.0}
    return {b: complex(float(c) * (-1j) ** sum(b)) for b, c in P.coeffs.items()}


def finite_s_pairing(model: Model, f: TestFunction, s: float, cutoff: CutoffSpec = CutoffSpec(),
                     P: MultiPoly | None = None, cfg: QuadratureConfig = QuadratureConfig()) -> Estimate:
    """The finite-s pairing whose large-s limit is the index of P.

    ``scalar * int_{u >= 0} chi(u/s) (P(-i d) f)(Bu) du`` summed over the
    model's pieces; for the point model ``int P(x) fhat(x) dx`` by
    oscillatory quadrature.
    """
    if f.dim != model.dim:
        raise InputError(f"test function on R^{f.dim} for a model on Q^{model.dim}")
    if s <= 0:
        raise InputError("s must be positive")
    if isinstance(model, Point):
        return fourier_pairing_oscillatory(P if P is not None else MultiPoly.constant(model.dim, 1), f)
    if P is not None and not isinstance(model, LinearTorus):
        raise UnsupportedError("polynomial classes are supported on point and linear models")
    op = _operator(P, model.dim)
    ball = f.support_ball()
    total = Estimate(0j, 0.0)
    for i, piece in enumerate(model.pieces()):
        B = np.array([[float(x) for x in g] for g in piece.generators]).T.reshape(model.dim, len(piece.generators))

        def integrand(u, B=B):
            return cutoff(u / s) * f.apply_operator(op, u @ B.T)

        est = integrate_cone(integrand, piece.generators, ball, replace(cfg, seed=cfg.seed + 104729 * i))
        total = total + est.scaled(complex(piece.scalar))
    return total


def stabilization_threshold(model: Model, f: TestFunction, cutoff: CutoffSpec) -> float:
    """s0 such that chi(u/s) = 1 wherever f(Bu) != 0, for all s >= s0.

    A point Bu in the ball of radius R about 0 has |u| <= R / sigma_min(B)
    when B is injective, and |u| <= sum u_i <= |c| R for c positive on the
    generators with min <c, b_i> = 1; the smaller bound is used.
    """
    ball = f.support_ball()
    if ball is None:
        return math.inf
    reach = float(np.linalg.norm(ball[0])) + ball[1]
    s0 = 0.0
    for piece in model.pieces():
        if not piece.generators:
            continue
        c = positive_functional(piece.generators)
        c = rq.scale(1 / min(rq.dot(c, g) for g in piece.generators), c)
        bound = math.sqrt(sum(float(x) ** 2 for x in c))
        if rq.rank(piece.generators) == len(piece.generators):
            B = np.array([[float(x) for x in g] for g in piece.generators]).T
            bound = min(bound, 1.0 / np.linalg.svd(B, compute_uv=False)[-1])
        s0 = max(s0, 2.0 * bound * reach / cutoff.radius)
    return s0 if s0 > 0 else 1.0


def _stream(cfg: QuadratureConfig, k: int) -> QuadratureConfig:
    return dataclasses.replace(cfg, seed=cfg.seed + 7919 * k)


def stabilization_scan(model: Model, f: TestFunction, s_list: Sequence[float],
                       cutoff: CutoffSpec = CutoffSpec(), P: MultiPoly | None = None,
                       cfg: QuadratureConfig = QuadratureConfig()) -> list[Estimate]:
    # independent RQMC streams, so agreement across s is a genuine statistical check
    return [finite_s_pairing(model, f, s, cutoff, P, _stream(cfg, k)) for k, s in enumerate(s_list)]


def cutoff_independence_scan(model: Model, f: TestFunction, cutoffs: Sequence[CutoffSpec], s: float,
                             P: MultiPoly | None = None,
                             cfg: QuadratureConfig = QuadratureConfig()) -> list[Estimate]:
    return [finite_s_pairing(model, f, s, c, P, _stream(cfg, k)) for k, c in enumerate(cutoffs)]


def brute_force_spline_pairing(X: WeightList, f: TestFunction,
                               cfg: QuadratureConfig = QuadratureConfig()) -> Estimate:
    """``int_{t >= 0} f(sum_i t_i a_i) dt`` by direct quadrature over the orthant."""
    if not X.pointed:
        raise NotPointedError("the orthant integral diverges for a non-pointed list")
    A = np.array([[float(x) for x in a] for a in X.weights]).T

    def integrand(t):
        return f(t @ A.T)

    return integrate_cone(integrand, X.weights, f.support_ball(), cfg)


# ---------------------------------------------------------------------------
# oscillatory quadrature for the point model

def _one_dim_factors(f: TestFunction):
    """Split f into 1-D factors and a constant, or None if f does not factor."""
    if f.dim == 1:
        return [f], 1.0
    if isinstance(f, PolyGaussian) and f.poly.degree() <= 0:
        const = float(f.poly((0,) * f.dim)) if not f.poly.is_zero() else 0.0
        return [PolyGaussian(f.sigma, (c,)) for c in f.center], const
    if isinstance(f, ProductTestFunction):
        out, const = [], 1.0
        for g in f.factors:
            split = _one_dim_factors(g)
            if split is None:
                return None
            out += split[0]
            const *= split[1]
        return out, const
    return None


def _moment_of_fourier(k: int, g: TestFunction) -> tuple[complex, float]:
    """``int x^k ghat(x) dx`` with ghat(x) = (1/2pi) int e^{-i xi x} g(xi) dxi."""
    center, radius = g.support_ball()
    lo, hi = float(center[0]) - radius, float(center[0]) + radius

    def gv(xi):
        return float(g(np.array([[xi]]))[0])

    @functools.lru_cache(maxsize=None)
    def ghat(x):
        if x == 0.0:
            re = integrate.quad(gv, lo, hi, limit=200, epsabs=1e-14)[0]
            return complex(re, 0.0) / (2 * math.pi)
        re = integrate.quad(gv, lo, hi, weight="cos", wvar=x, limit=200, epsabs=1e-14)[0]
        im = integrate.quad(gv, lo, hi, weight="sin", wvar=x, limit=200, epsabs=1e-14)[0]
        return complex(re, -im) / (2 * math.pi)

    if isinstance(g, PolyGaussian):
        xmax = (12.0 + k) / float(g.sigma)
    else:
        xmax = 400.0 / float(g.radius)
    re, re_err = integrate.quad(lambda x: x ** k * ghat(x).real, -xmax, xmax, limit=400, epsabs=1e-12)
    im, im_err = integrate.quad(lambda x: x ** k * ghat(x).imag, -xmax, xmax, limit=400, epsabs=1e-12)
    return complex(re, im), math.hypot(re_err, im_err)


def fourier_pairing_oscillatory(P: MultiPoly, f: TestFunction) -> Estimate:
    """``int P(x) fhat(x) dx`` by quadrature of the Fourier transform.

    Needs f of one variable or a product of one-variable factors.
    """
    split = _one_dim_factors(f)
    if split is None:
        raise UnsupportedError("oscillatory quadrature needs a test function that factors over coordinates")
    factors, const = split
    total, err = 0j, 0.0
    cache: dict = {}
    for beta, c in P.coeffs.items():
        term, term_rel = complex(float(c) * const), 0.0
        for j, k in enumerate(beta):
            if (j, k) not in cache:
                cache[j, k] = _moment_of_fourier(k, factors[j])
            val, e = cache[j, k]
            term *= val
            term_rel += e / max(abs(val), 1e-300)
        total += term
        err += abs(term) * term_rel
    return Estimate(total, err + 1e-13 * abs(total))
