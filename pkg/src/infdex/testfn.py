"""Test functions and numerical pairing against conic densities.

Two families of test functions on Q^n (evaluated in floating point):

* ``PolyGaussian``: q(y) exp(-|y|^2 / 2 sigma^2) with y = xi - center.
  Derivatives are exact, via sympy.
* ``PolyBump``: q(y) phi(|y| / R), phi(r) = exp(1 - 1/(1 - r^2)) on r < 1.
  Derivatives by central differences with one Richardson step, O(h^4).

Conic integrals ``int_{u >= 0} g(u) du`` are computed over the part of the
orthant that can reach the support of f.  A functional w positive on the
generators turns that part into a shell lo <= sum_i <w, b_i> u_i <= hi;
in one parameter the integral goes to adaptive quadrature, otherwise to
stratified Monte Carlo on the shell.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Callable, Sequence

import numpy as np
import sympy
from scipy import integrate
from scipy.stats import qmc

from . import rational as rq
from .errors import InputError, NotPointedError, PreconditionError
from .geometry import positive_functional
from .poly import MultiPoly

GAUSSIAN_TAIL = 10.0
ROUNDOFF = 1e-13


class DivergentPairingError(PreconditionError):
    precondition = "divergent pairing (test function does not decay)"


@dataclass(frozen=True)
class QuadratureConfig:
    samples: int = 100_000
    seed: int = 0
    replicates: int = 32  # independently scrambled nets; their spread is the error estimate


@dataclass(frozen=True)
class Estimate:
    """A numerical value with an error estimate (one standard error for MC)."""

    value: complex
    error: float

    def __add__(self, other: "Estimate") -> "Estimate":
        return Estimate(self.value + other.value, math.hypot(self.error, other.error))

    def scaled(self, c: complex) -> "Estimate":
        return Estimate(self.value * c, self.error * abs(c))

    def agrees(self, other, k: float = 3.0, floor: float = 0.0) -> bool:
        if isinstance(other, Estimate):
            return abs(self.value - other.value) <= k * (self.error + other.error) + floor
        return abs(self.value - other) <= k * self.error + floor

    def to_json(self) -> dict:
        v = complex(self.value)
        return {"re": v.real, "im": v.imag, "error": self.error}


def _floor(value, error: float) -> float:
    return error + ROUNDOFF * abs(value) + 1e-300


# ---------------------------------------------------------------------------
# test functions

class TestFunction:
    """Smooth decaying function on R^dim with derivatives."""

    __test__ = False  # keep pytest from collecting this class
    dim: int

    def __call__(self, points: np.ndarray) -> np.ndarray:
        return self.derivative((0,) * self.dim, points)

    def derivative(self, beta: Sequence[int], points: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def support_ball(self) -> tuple[np.ndarray, float] | None:
        """A ball outside which f and its derivatives are negligible (or zero)."""
        raise NotImplementedError

    def apply_operator(self, op: dict, points: np.ndarray) -> np.ndarray:
        """sum_beta c_beta (d^beta f)(points) for complex coefficients c_beta."""
        points = _as_points(points, self.dim)
        out = np.zeros(points.shape[0], dtype=complex)
        for beta, c in op.items():
            out += complex(c) * self.derivative(beta, points)
        return out


def _as_points(points, dim: int) -> np.ndarray:
    pts = np.asarray(points, dtype=float)
    if pts.ndim == 1:
        pts = pts.reshape(1, dim) if dim else pts.reshape(-1, 0)
    return pts


class PolyGaussian(TestFunction):
    def __init__(self, sigma, center: Sequence, poly: MultiPoly | None = None):
        sigma = Fraction(sigma)
        if sigma <= 0:
            raise InputError(f"Gaussian width must be positive, got {sigma}")
        self.sigma = sigma
        self.center = tuple(Fraction(c) for c in center)
        self.dim = len(self.center)
        self.poly = poly if poly is not None else MultiPoly.constant(self.dim, 1)
        if self.poly.nvars != self.dim:
            raise InputError("polynomial variable count does not match the center")
        self._cache: dict = {}

    def __repr__(self):
        return f"PolyGaussian(sigma={self.sigma}, center={tuple(map(str, self.center))}, poly={self.poly})"

    @cached_property
    def _symbols(self):
        xs = sympy.symbols(f"x0:{self.dim}") if self.dim else ()
        ys = [x - sympy.Rational(c.numerator, c.denominator) for x, c in zip(xs, self.center)]
        q = 0
        for e, c in self.poly.coeffs.items():
            term = sympy.Rational(c.numerator, c.denominator)
            for y, k in zip(ys, e):
                term *= y ** k
            q += term
        s2 = sympy.Rational(self.sigma.numerator, self.sigma.denominator) ** 2
        expr = q * sympy.exp(-sum(y ** 2 for y in ys) / (2 * s2))
        return xs, expr

    def _deriv_fn(self, beta: tuple) -> Callable:
        if beta not in self._cache:
            xs, expr = self._symbols
            d = expr
            for x, k in zip(xs, beta):
                if k:
                    d = sympy.diff(d, x, k)
            self._cache[beta] = sympy.lambdify(xs, d, "numpy")
        return self._cache[beta]

    def derivative(self, beta, points):
        points = _as_points(points, self.dim)
        fn = self._deriv_fn(tuple(int(b) for b in beta))
        vals = fn(*[points[:, i] for i in range(self.dim)])
        return np.broadcast_to(np.asarray(vals, dtype=float), (points.shape[0],)).copy()

    def support_ball(self):
        radius = float(self.sigma) * (GAUSSIAN_TAIL + self.poly.degree())
        return np.array([float(c) for c in self.center]), radius


class PolyBump(TestFunction):
    MAX_ORDER = 6

    def __init__(self, radius, poly: MultiPoly | None = None, center: Sequence | None = None,
                 dim: int | None = None):
        radius = Fraction(radius)
        if radius <= 0:
            raise InputError(f"bump radius must be positive, got {radius}")
        if center is None:
            if dim is None:
                dim = poly.nvars if poly is not None else 1
            center = (0,) * dim
        self.radius = radius
        self.center = tuple(Fraction(c) for c in center)
        self.dim = len(self.center)
        self.poly = poly if poly is not None else MultiPoly.constant(self.dim, 1)
        if self.poly.nvars != self.dim:
            raise InputError("polynomial variable count does not match the dimension")

    def __repr__(self):
        return f"PolyBump(R={self.radius}, center={tuple(map(str, self.center))}, poly={self.poly})"

    def _value(self, points: np.ndarray) -> np.ndarray:
        c = np.array([float(x) for x in self.center])
        y = points - c
        r2 = np.sum(y * y, axis=1) / float(self.radius) ** 2
        inside = r2 < 1.0
        out = np.zeros(points.shape[0])
        ri = r2[inside]
        out[inside] = np.exp(1.0 - 1.0 / (1.0 - ri))
        if not (self.poly == 1):
            out = out * self.poly.eval_float(y)
        return out

    def derivative(self, beta, points):
        points = _as_points(points, self.dim)
        beta = tuple(int(b) for b in beta)
        order = sum(beta)
        if order == 0:
            return self._value(points)
        if order > self.MAX_ORDER:
            raise PreconditionError(f"finite differences of order {order} > {self.MAX_ORDER} are too noisy")
        h = float(self.radius) * (0.01 if order <= 2 else 0.04)
        coarse = self._central(beta, points, h)
        fine = self._central(beta, points, h / 2)
        return (4.0 * fine - coarse) / 3.0

    def _central(self, beta, points, h):
        # tensor product of 1-D central differences, half-steps for odd orders
        stencil = [(np.zeros(self.dim), 1.0)]
        for axis, k in enumerate(beta):
            if not k:
                continue
            new = []
            for shift, w in stencil:
                for j in range(k + 1):
                    s = shift.copy()
                    s[axis] += (k / 2 - j) * h
                    new.append((s, w * (-1) ** j * math.comb(k, j)))
            stencil = new
        out = np.zeros(points.shape[0])
        for shift, w in stencil:
            out += w * self._value(points + shift)
        return out / h ** sum(beta)

    def support_ball(self):
        return np.array([float(c) for c in self.center]), float(self.radius)


class ProductTestFunction(TestFunction):
    """f1 (x) f2 (x) ... on the product space."""

    def __init__(self, factors: Sequence[TestFunction]):
        self.factors = tuple(factors)
        self.dims = [f.dim for f in self.factors]
        self.dim = sum(self.dims)

    def __repr__(self):
        return "ProductTestFunction(" + ", ".join(map(repr, self.factors)) + ")"

    def derivative(self, beta, points):
        points = _as_points(points, self.dim)
        out = np.ones(points.shape[0])
        off = 0
        for f, d in zip(self.factors, self.dims):
            out = out * f.derivative(tuple(beta[off:off + d]), points[:, off:off + d])
            off += d
        return out

    def support_ball(self):
        centers, radii = [], []
        for f in self.factors:
            ball = f.support_ball()
            if ball is None:
                return None
            centers.append(ball[0])
            radii.append(ball[1])
        return np.concatenate(centers), float(np.sqrt(np.sum(np.square(radii))))


def derivative_at(f: TestFunction, beta: Sequence[int], point: Sequence) -> float:
    """``d^beta f`` at a single point."""
    pt = np.array([[float(Fraction(x)) for x in point]]).reshape(1, f.dim)
    return float(f.derivative(tuple(beta), pt)[0])


def make_testfn(desc) -> TestFunction:
    """Build a test function from its JSON description.

    ``{"gaussian": {"sigma": 1, "center": [0], "poly": {...}}}``,
    ``{"bump": {"R": 2, "poly": "1", "center": [0, 0]}}`` or
    ``{"product": [desc, desc, ...]}``.  Polynomials are constants or
    ``{"i,j,...": coefficient}`` maps in the centered coordinates.
    """
    if not isinstance(desc, dict) or len(desc) != 1:
        raise InputError("test function description must be an object with one key: gaussian, bump or product")
    (kind, body), = desc.items()
    if kind == "product":
        if not isinstance(body, list) or not body:
            raise InputError("product description needs a nonempty list")
        return ProductTestFunction([make_testfn(d) for d in body])
    if not isinstance(body, dict):
        raise InputError(f"{kind} description must be an object")
    if kind == "gaussian":
        if "center" not in body:
            raise InputError("gaussian description needs a center")
        center = rq.vec(body["center"])
        poly = MultiPoly.from_json(body["poly"], len(center)) if "poly" in body else None
        return PolyGaussian(rq.as_fraction(body.get("sigma", 1)), center, poly)
    if kind == "bump":
        if "R" not in body:
            raise InputError("bump description needs a radius R")
        center = rq.vec(body["center"]) if "center" in body else None
        dim = len(center) if center is not None else int(body.get("dim", 1))
        poly = MultiPoly.from_json(body["poly"], dim) if "poly" in body else None
        return PolyBump(rq.as_fraction(body["R"]), poly, center, dim)
    raise InputError(f"unknown test function kind {kind!r}")


# ---------------------------------------------------------------------------
# integration over cones

def _functional(gens: Sequence[Sequence]) -> np.ndarray:
    g = np.array([[float(x) for x in col] for col in gens])
    w = np.sum(g / np.linalg.norm(g, axis=1, keepdims=True), axis=0)
    if np.all(g @ w > 1e-9 * np.linalg.norm(g, axis=1) * max(np.linalg.norm(w), 1e-300)):
        return w
    exact = positive_functional([rq.vec(c) for c in gens])
    return np.array([float(x) for x in exact])


def integrate_cone(integrand: Callable[[np.ndarray], np.ndarray], gens: Sequence[Sequence],
                   ball: tuple[np.ndarray, float] | None, cfg: QuadratureConfig) -> Estimate:
    """``int_{u >= 0} integrand(u) du`` where integrand vanishes unless
    ``B u`` lies in ``ball`` (B has the columns ``gens``)."""
    d = len(gens)
    if d == 0:
        val = complex(np.asarray(integrand(np.zeros((1, 0))))[0])
        return Estimate(val, _floor(val, 0.0))
    if ball is None:
        raise DivergentPairingError("test function has no bounded effective support")
    if any(rq.is_zero(rq.vec(c)) for c in gens):
        raise NotPointedError("zero generator: the integral over that direction diverges")
    center, radius = ball
    w = _functional(gens)
    omega = np.array([[float(x) for x in col] for col in gens]) @ w
    if np.any(omega <= 0):
        raise NotPointedError("generators do not span a pointed cone")
    wc, wn = float(w @ center), float(np.linalg.norm(w))
    lo, hi = max(0.0, wc - wn * radius), wc + wn * radius
    if hi <= 0:
        return Estimate(0.0, 0.0)
    if d == 1:
        def f1(t):
            return complex(np.asarray(integrand(np.array([[t]])))[0])
        a, b = lo / omega[0], hi / omega[0]
        re, re_err = integrate.quad(lambda t: f1(t).real, a, b, limit=400, epsabs=1e-14, epsrel=1e-12)
        im, im_err = integrate.quad(lambda t: f1(t).imag, a, b, limit=400, epsabs=1e-14, epsrel=1e-12)
        val = complex(re, im)
        return Estimate(val, _floor(val, math.hypot(re_err, im_err)))
    return _stratified_shell(integrand, omega, lo, hi, d, cfg)


def _shell_points(x: np.ndarray, omega: np.ndarray, lo: float, hi: float) -> np.ndarray:
    """Map the unit cube onto the shell lo <= sum omega_i u_i <= hi, uniformly."""
    d = x.shape[1]
    level = (lo ** d + x[:, 0] * (hi ** d - lo ** d)) ** (1.0 / d)
    s = np.empty_like(x)
    rem = np.ones(x.shape[0])
    for j in range(d - 1):
        frac = 1.0 - (1.0 - x[:, j + 1]) ** (1.0 / (d - 1 - j))
        s[:, j] = rem * frac
        rem = rem - s[:, j]
    s[:, d - 1] = rem
    return level[:, None] * s / omega[None, :]


def _stratified_shell(integrand, omega, lo, hi, d, cfg: QuadratureConfig) -> Estimate:
    # scrambled Sobol nets put one point in every elementary box (a stratified
    # design); independent scramblings give the standard error
    replicates = cfg.replicates
    m = max(1, int(math.log2(max(2, cfg.samples // replicates))))
    seeds = np.random.SeedSequence(cfg.seed).spawn(replicates)
    volume = (hi ** d - lo ** d) / math.factorial(d) / float(np.prod(omega))
    means = np.empty(replicates, dtype=complex)
    for r, seed in enumerate(seeds):
        x = qmc.Sobol(d, scramble=True, seed=np.random.default_rng(seed)).random_base2(m)
        g = np.asarray(integrand(_shell_points(x, omega, lo, hi)), dtype=complex)
        means[r] = g.mean()
    value = volume * means.mean()
    err = volume * math.sqrt((np.var(means.real, ddof=1) + np.var(means.imag, ddof=1)) / replicates)
    if value.imag == 0:
        value = complex(value.real, 0.0)
    return Estimate(value, _floor(value, err))


def pair_term_numeric(term, f: TestFunction, cfg: QuadratureConfig = QuadratureConfig()) -> Estimate:
    """Estimate ``int_{u >= 0} q(Bu) f(Bu) du`` for a conic density term.

    ``term`` exposes ``generators`` (columns of B, ambient coordinates) and
    ``poly`` (q, ambient coordinates).
    """
    if term.poly.is_zero():
        return Estimate(0.0, 0.0)
    B = np.array([[float(x) for x in col] for col in term.generators]).T.reshape(f.dim, len(term.generators))

    def integrand(u):
        pts = u @ B.T
        return term.poly.eval_float(pts) * f(pts)

    return integrate_cone(integrand, term.generators, f.support_ball(), cfg)
