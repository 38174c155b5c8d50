"""Distributions on Q^n built from conic polynomial densities and derivatives of delta_0.

A :class:`Distribution` is ``prefactor * sum(terms)``, where each term is

* a :class:`ConicDensityTerm`:  ``<term, f> = int_{u >= 0} q(Bu) f(Bu) du``
* a :class:`PointDerivativeTerm`: ``<term, f> = sum_b c_b (-1)^|b| (d^b f)(0)``

and every term carries its own exact scalar ``r (2 pi)^p i^q``.  The
constants of the theory (powers of 2 pi i, of i) are kept symbolic in
:class:`ScalarPrefactor` and never folded into polynomials.

Spline-tagged distributions know their density part equals a multiple of
T_X; the tensor, convolution and pushforward of tagged operands stay
tagged.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import rational as rq
from .errors import (ClosedClassError, InputError, NotCompactAlongFibersError,
                     NotSurjectiveError, OnWallError, SmoothnessError)
from .geometry import pointedness_check
from .poly import MultiPoly
from .spline import (SplineForm, WeightList, _list_data, _open_newton_cotes, _spline_value,
                     build_spline, eval_spline_form)
from .testfn import Estimate, QuadratureConfig, TestFunction, pair_term_numeric


@dataclass(frozen=True)
class ScalarPrefactor:
    """Exact scalar ``r * (2 pi)^two_pi_pow * i^i_pow`` with i_pow in 0..3."""

    r: Fraction = Fraction(1)
    two_pi_pow: int = 0
    i_pow: int = 0

    def __post_init__(self):
        object.__setattr__(self, "r", Fraction(self.r))
        object.__setattr__(self, "i_pow", self.i_pow % 4)

    @classmethod
    def two_pi_i(cls, m: int = 1) -> "ScalarPrefactor":
        return cls(Fraction(1), m, m)

    @classmethod
    def i_power(cls, k: int) -> "ScalarPrefactor":
        return cls(Fraction(1), 0, k)

    def __mul__(self, other: "ScalarPrefactor") -> "ScalarPrefactor":
        if isinstance(other, (int, Fraction)):
            return ScalarPrefactor(self.r * other, self.two_pi_pow, self.i_pow)
        return ScalarPrefactor(self.r * other.r, self.two_pi_pow + other.two_pi_pow, self.i_pow + other.i_pow)

    __rmul__ = __mul__

    def __complex__(self) -> complex:
        return float(self.r) * (2 * math.pi) ** self.two_pi_pow * (1j ** self.i_pow)

    def to_json(self) -> dict:
        return {"r": rq.fraction_to_json(self.r), "twoPiPow": self.two_pi_pow, "iPow": self.i_pow}

    @classmethod
    def from_json(cls, data) -> "ScalarPrefactor":
        if data is None:
            return cls()
        try:
            return cls(rq.as_fraction(data.get("r", 1)), int(data.get("twoPiPow", 0)), int(data.get("iPow", 0)))
        except AttributeError as exc:
            raise InputError("prefactor must be an object {r, twoPiPow, iPow}") from exc


ONE = ScalarPrefactor()


@dataclass(frozen=True)
class ExactScalar:
    """A finite sum of ScalarPrefactors, kept as {(two_pi_pow, i_pow in {0,1}): r}."""

    parts: tuple = ()

    @classmethod
    def of(cls, *scalars: ScalarPrefactor) -> "ExactScalar":
        acc: dict = {}
        for s in scalars:
            key = (s.two_pi_pow, s.i_pow % 2)
            sign = -1 if s.i_pow >= 2 else 1
            acc[key] = acc.get(key, Fraction(0)) + sign * s.r
        return cls(tuple(sorted((k, v) for k, v in acc.items() if v != 0)))

    def __add__(self, other: "ExactScalar") -> "ExactScalar":
        return ExactScalar.of(*self.scalars(), *other.scalars())

    def scalars(self) -> list[ScalarPrefactor]:
        return [ScalarPrefactor(r, p, q) for (p, q), r in self.parts]

    def __complex__(self) -> complex:
        return sum((complex(s) for s in self.scalars()), 0j)

    def to_json(self) -> list:
        return [s.to_json() for s in self.scalars()]


@dataclass(frozen=True)
class ConicDensityTerm:
    generators: tuple  # columns of B in ambient coordinates
    poly: MultiPoly  # ambient coordinates
    scalar: ScalarPrefactor = ONE

    @property
    def dim(self) -> int:
        return self.poly.nvars

    def matrix(self) -> rq.Mat:
        return rq.columns_to_matrix(self.generators)

    def to_json(self) -> dict:
        return {"type": "conic",
                "generators": [[rq.fraction_to_json(x) for x in g] for g in self.generators],
                "poly": self.poly.to_json(), "scalar": self.scalar.to_json()}


@dataclass(frozen=True)
class PointDerivativeTerm:
    coeffs: tuple  # sorted ((beta, c), ...)
    scalar: ScalarPrefactor = ONE

    @classmethod
    def make(cls, coeffs: dict, scalar: ScalarPrefactor = ONE) -> "PointDerivativeTerm":
        clean = {tuple(b): Fraction(c) for b, c in coeffs.items() if Fraction(c) != 0}
        return cls(tuple(sorted(clean.items())), scalar)

    @property
    def dim(self) -> int:
        return len(self.coeffs[0][0]) if self.coeffs else 0

    def max_order(self) -> int:
        return max((sum(b) for b, _ in self.coeffs), default=0)

    def to_json(self) -> dict:
        return {"type": "point",
                "coeffs": {",".join(map(str, b)): rq.fraction_to_json(c) for b, c in self.coeffs},
                "scalar": self.scalar.to_json()}


@dataclass(frozen=True)
class Distribution:
    dim: int
    prefactor: ScalarPrefactor
    terms: tuple
    spline: SplineForm | None = field(default=None, compare=False)

    @property
    def spline_tag(self) -> WeightList | None:
        return self.spline.weights if self.spline is not None else None

    @property
    def point_terms(self) -> list[PointDerivativeTerm]:
        return [t for t in self.terms if isinstance(t, PointDerivativeTerm)]

    @property
    def conic_terms(self) -> list[ConicDensityTerm]:
        return [t for t in self.terms if isinstance(t, ConicDensityTerm)]

    def is_point(self) -> bool:
        return all(isinstance(t, PointDerivativeTerm) for t in self.terms)

    def scaled(self, s: ScalarPrefactor) -> "Distribution":
        return replace(self, prefactor=self.prefactor * s)

    def __add__(self, other: "Distribution") -> "Distribution":
        """Sum; prefactors are pushed into the terms."""
        if other.dim != self.dim:
            raise InputError("cannot add distributions on different spaces")
        terms = tuple(replace(t, scalar=t.scalar * self.prefactor) for t in self.terms)
        terms += tuple(replace(t, scalar=t.scalar * other.prefactor) for t in other.terms)
        return Distribution(self.dim, ONE, terms)

    def to_json(self) -> dict:
        out = {"dim": self.dim, "prefactor": self.prefactor.to_json()}
        if self.spline is not None:
            out["splineTag"] = self.spline.weights.to_json()
        out["terms"] = [t.to_json() for t in self.terms]
        return out

    @classmethod
    def from_json(cls, data) -> "Distribution":
        if not isinstance(data, dict) or "dim" not in data:
            raise InputError("distribution JSON needs 'dim'")
        dim = int(data["dim"])
        pre = ScalarPrefactor.from_json(data.get("prefactor"))
        if data.get("splineTag") is not None:
            return spline_distribution(WeightList.from_json(data["splineTag"]), pre)
        terms = []
        for t in data.get("terms", []):
            kind = t.get("type")
            scalar = ScalarPrefactor.from_json(t.get("scalar"))
            if kind == "conic":
                gens = tuple(rq.vec(g) for g in t["generators"])
                terms.append(ConicDensityTerm(gens, MultiPoly.from_json(t["poly"], dim), scalar))
            elif kind == "point":
                coeffs = {}
                for key, c in t["coeffs"].items():
                    beta = tuple(int(k) for k in key.split(",")) if key else ()
                    if len(beta) != dim:
                        raise InputError(f"multi-index {key!r} has the wrong length")
                    coeffs[beta] = rq.as_fraction(c)
                terms.append(PointDerivativeTerm.make(coeffs, scalar))
            else:
                raise InputError(f"unknown term type {kind!r}")
        return cls(dim, pre, tuple(terms))


# ---------------------------------------------------------------------------
# constructors

def delta0(n: int) -> Distribution:
    """The delta function at the origin of Q^n."""
    return Distribution(n, ONE, (PointDerivativeTerm.make({(0,) * n: 1}),))


def lebesgue(n: int, prefactor: ScalarPrefactor = ONE) -> Distribution:
    """Lebesgue measure on Q^n as 2^n orthant cones."""
    terms = []
    for signs in itertools.product((1, -1), repeat=n):
        gens = tuple(tuple(Fraction(s if i == j else 0) for i in range(n)) for j, s in enumerate(signs))
        terms.append(ConicDensityTerm(gens, MultiPoly.constant(n, 1)))
    return Distribution(n, prefactor, tuple(terms))


def from_spline(S: SplineForm, prefactor: ScalarPrefactor = ONE) -> Distribution:
    terms = tuple(ConicDensityTerm(g, q) for g, q in S.conic_terms())
    return Distribution(S.weights.dim, prefactor, terms, S)


def spline_distribution(X: WeightList, prefactor: ScalarPrefactor = ONE) -> Distribution:
    return from_spline(build_spline(X), prefactor)


def fourier_of_polynomial(P: MultiPoly) -> Distribution:
    """The Fourier transform of a polynomial on the Lie algebra.

    With f(xi) = int e^{i<xi,x>} fhat(x) dx, the pairing
    ``int P(x) fhat(x) dx`` equals ``(P(-i d) f)(0)``; the monomial x^g
    becomes ``i^|g| d^g delta_0`` in the sign convention of
    :class:`PointDerivativeTerm`.
    """
    n = P.nvars
    by_phase: dict = {}
    for g, c in P.coeffs.items():
        by_phase.setdefault(sum(g) % 4, {})[g] = c
    terms = tuple(PointDerivativeTerm.make(coeffs, ScalarPrefactor.i_power(k))
                  for k, coeffs in sorted(by_phase.items()))
    if not terms:
        terms = ()
    return Distribution(n, ONE, terms)


# ---------------------------------------------------------------------------
# tensor product and convolution

def _block_columns(cols: Sequence, offset: int, total: int) -> tuple:
    return tuple((Fraction(0),) * offset + tuple(c) + (Fraction(0),) * (total - offset - len(c)) for c in cols)


def _tensor_terms(t1, t2, n1: int, n2: int):
    n = n1 + n2
    scalar = t1.scalar * t2.scalar
    if isinstance(t1, PointDerivativeTerm) and isinstance(t2, PointDerivativeTerm):
        coeffs = {b1 + b2: c1 * c2 for b1, c1 in t1.coeffs for b2, c2 in t2.coeffs}
        return PointDerivativeTerm.make(coeffs, scalar)
    if isinstance(t1, ConicDensityTerm) and isinstance(t2, ConicDensityTerm):
        gens = _block_columns(t1.generators, 0, n) + _block_columns(t2.generators, n1, n)
        return ConicDensityTerm(gens, t1.poly.embed(n, 0) * t2.poly.embed(n, n1), scalar)
    point, conic, conic_first = (t2, t1, True) if isinstance(t2, PointDerivativeTerm) else (t1, t2, False)
    if point.max_order() > 0:
        raise ClosedClassError("tensor of a density with a derivative of delta_0 has no conic form")
    c = sum((c for _, c in point.coeffs), Fraction(0))
    if conic_first:
        gens = _block_columns(conic.generators, 0, n)
        poly = conic.poly.embed(n, 0)
    else:
        gens = _block_columns(conic.generators, n1, n)
        poly = conic.poly.embed(n, n1)
    return ConicDensityTerm(gens, poly * c, scalar)


def tensor(D1: Distribution, D2: Distribution) -> Distribution:
    """External product on Q^{n1} x Q^{n2}."""
    n1, n2 = D1.dim, D2.dim
    prefactor = D1.prefactor * D2.prefactor
    if D1.spline is not None and D2.spline is not None:
        return from_spline(_tensor_spline(D1.spline, D2.spline), prefactor)
    terms = tuple(_tensor_terms(a, b, n1, n2) for a in D1.terms for b in D2.terms)
    return Distribution(n1 + n2, prefactor, terms)


def _tensor_spline(S1: SplineForm, S2: SplineForm) -> SplineForm:
    """T_X (x) T_Y = T_{X (+) Y}, with pieces taken as products of the factors' pieces."""
    X, Y = S1.weights, S2.weights
    Z = X.direct_sum(Y)
    # Jacobian between the carrier of Z and the product of the factors' carriers
    n1 = X.dim
    jac_rows = []
    for row in X.to_carrier_matrix:
        jac_rows.append(tuple(row) + (Fraction(0),) * Y.dim)
    for row in Y.to_carrier_matrix:
        jac_rows.append((Fraction(0),) * n1 + tuple(row))
    jac = abs(rq.det(rq.matmul(jac_rows, rq.columns_to_matrix(Z.carrier))))

    def evaluator(eta):
        xi = Z.from_carrier(eta)
        return jac * eval_spline_form(S1, xi[:n1]) * eval_spline_form(S2, xi[n1:])

    return build_spline(Z, evaluator)


def _is_scalar_delta(D: Distribution) -> bool:
    return D.is_point() and all(sum(b) == 0 for t in D.terms for b, _ in t.coeffs)


def convolve(D1: Distribution, D2: Distribution) -> Distribution:
    """Convolution on the closed class used by the index calculus.

    spline * spline is the spline of the concatenated weights;
    derivatives of delta_0 act on spline densities chamberwise (when the
    pieces are smooth enough across walls); delta_0 is the identity.
    """
    if D1.dim != D2.dim:
        raise InputError("convolution needs distributions on the same space")
    prefactor = D1.prefactor * D2.prefactor
    if D1.spline is not None and D2.spline is not None:
        X = D1.spline.weights.concat(D2.spline.weights)
        return spline_distribution(X, prefactor)
    if D1.is_point() and D2.is_point():
        terms = []
        for t1 in D1.terms:
            for t2 in D2.terms:
                coeffs: dict = {}
                for b1, c1 in t1.coeffs:
                    for b2, c2 in t2.coeffs:
                        b = tuple(x + y for x, y in zip(b1, b2))
                        coeffs[b] = coeffs.get(b, Fraction(0)) + c1 * c2
                terms.append(PointDerivativeTerm.make(coeffs, t1.scalar * t2.scalar))
        return Distribution(D1.dim, prefactor, tuple(terms))
    if D1.is_point():
        point, dens = D1, D2
    elif D2.is_point():
        point, dens = D2, D1
    else:
        raise ClosedClassError("density * density outside the spline class")
    if _is_scalar_delta(point):
        total = ExactScalar.of(*[t.scalar * c for t in point.terms for _, c in t.coeffs])
        scalars = total.scalars()
        if len(scalars) == 1:
            return dens.scaled(point.prefactor * scalars[0])
        terms = tuple(replace(t, scalar=t.scalar * s) for s in scalars for t in dens.terms)
        return Distribution(dens.dim, prefactor, terms)
    S = dens.spline
    if S is None:
        raise ClosedClassError("derivatives of delta_0 only act on spline densities")
    if not S.weights.full_rank:
        raise ClosedClassError("derivatives of delta_0 need a full-dimensional spline")
    need = max(t.max_order() for t in point.terms)
    order = S.wall_agreement_order()
    if need - 1 > order:
        raise SmoothnessError(f"pieces agree to order {order} across walls, derivative order {need} needs {need - 1}")
    terms = []
    for t in point.terms:
        for chamber, piece in zip(S.complex.chambers, S.pieces):
            q = MultiPoly(S.weights.dim)
            for beta, c in t.coeffs:
                q = q + piece.partial(beta) * c
            if q.is_zero():
                continue
            for simplex in chamber.simplices:
                terms.append(ConicDensityTerm(simplex.generators, q * simplex.abs_det(), t.scalar))
    return Distribution(dens.dim, prefactor, tuple(terms))


# ---------------------------------------------------------------------------
# pushforward along linear maps

def _fiber_integral(ws: tuple, x0: tuple, dirs: tuple, degree: int) -> Fraction:
    """Exact ``int T(x0 + sum_l v_l dirs_l) dv`` over the whole fiber.

    Integrates out ``dirs[0]`` last: the inner integral is a piecewise
    polynomial in v_1 whose breakpoints are where the slice passes through
    a vertex of the arrangement restricted to the fiber.
    """
    if not dirs:
        return _spline_value(ws, x0)
    walls = _list_data(ws).walls
    j = len(dirs)
    k1 = dirs[0]
    cuts = set()
    for subset in itertools.combinations(walls, j):
        m = [[rq.dot(w, k) for k in dirs] for w in subset]
        rhs = [-rq.dot(w, x0) for w in subset]
        sol = rq.solve(m, rhs)
        if sol is not None:
            cuts.add(sol[0])
    for w in walls:
        if rq.dot(w, k1) != 0 and all(rq.dot(w, k) == 0 for k in dirs[1:]):
            cuts.add(-rq.dot(w, x0) / rq.dot(w, k1))
    if len(cuts) < 2:
        return Fraction(0)
    cuts = sorted(cuts)
    inner_degree = degree + j - 1
    rule = _open_newton_cotes(inner_degree)
    total = Fraction(0)
    for lo, hi in zip(cuts, cuts[1:]):
        h = hi - lo
        acc = Fraction(0)
        for x, wgt in rule:
            point = rq.add(x0, rq.scale(lo + h * x, k1))
            acc += wgt * _fiber_integral(ws, point, dirs[1:], degree)
        total += h * acc
    return total


def fiber_density(X: WeightList, p: Sequence[Sequence]):
    """Exact density of p_* T_X in the carrier coordinates of p(X).

    Returns (target WeightList, evaluator on target carrier coordinates).
    """
    Y = X.image(p)
    # map from carrier coords of X to carrier coords of Y
    pc = rq.matmul(Y.to_carrier_matrix, rq.matmul(p, rq.columns_to_matrix(X.carrier)))
    r_x, r_y = X.rank, Y.rank
    pct = rq.transpose(pc)
    split = rq.matmul(pct, rq.inverse(rq.matmul(pc, pct)))  # right inverse, r_x x r_y
    kernel = rq.nullspace(pc, r_x) if r_x > r_y else []
    frame = [tuple(col) for col in rq.transpose(split)] + list(kernel)
    jac = abs(rq.det(rq.columns_to_matrix(frame)))
    ws = X.carrier_weights
    degree = len(X) - r_x
    dirs = tuple(kernel)

    def evaluator(zeta):
        x0 = rq.matvec(split, zeta)
        return jac * _fiber_integral(ws, x0, dirs, degree)

    return Y, evaluator


def _check_fibers(X: WeightList, p) -> WeightList:
    Y_weights = [rq.matvec(p, a) for a in X.weights]
    for i, b in enumerate(Y_weights):
        if rq.is_zero(b):
            raise NotCompactAlongFibersError(f"p maps weight #{i} to 0")
    if not pointedness_check(Y_weights):
        raise NotCompactAlongFibersError("the projected weights do not span a pointed cone")
    return WeightList(Y_weights, len(p))


def pushforward(D: Distribution, p: Sequence[Sequence]) -> Distribution:
    """``<p_* D, f> = <D, f o p>`` for a rational linear map p (rows = target dim)."""
    p = tuple(rq.vec(r) for r in p)
    if any(len(r) != D.dim for r in p):
        raise InputError(f"map must have {D.dim} columns")
    k = len(p)
    if k == D.dim and p == rq.identity(k):
        return D
    if D.spline is not None:
        _check_fibers(D.spline.weights, p)
        Y, evaluator = fiber_density(D.spline.weights, p)
        return from_spline(build_spline(Y, evaluator), D.prefactor)
    terms = []
    for t in D.terms:
        if isinstance(t, PointDerivativeTerm):
            # d^b (f o p) = prod_j (sum_k p_kj d_k)^{b_j} f  o p
            op = MultiPoly(D.dim, dict(t.coeffs)).compose_linear(rq.transpose(p))
            terms.append(PointDerivativeTerm.make(dict(op.coeffs), t.scalar))
            continue
        image = tuple(rq.matvec(p, g) for g in t.generators)
        if rq.rank(image) < len(image):
            raise ClosedClassError("pushforward of a conic term along a non-injective direction")
        # q(Bu) as a function of (pB)u
        back = rq.matmul(t.matrix(), rq.left_inverse(image))
        terms.append(ConicDensityTerm(image, t.poly.compose_linear(back), t.scalar))
    return Distribution(k, D.prefactor, tuple(terms))


# ---------------------------------------------------------------------------
# induction from a quotient torus

def _validate_projection(p, splitting, kernel):
    p = tuple(rq.vec(r) for r in p)
    k, n = len(p), len(p[0])
    if rq.rank(p) != k:
        raise NotSurjectiveError(f"map of rank {rq.rank(p)} onto a {k}-dimensional space")
    s = tuple(rq.vec(r) for r in splitting)
    if len(s) != n or any(len(r) != k for r in s):
        raise InputError(f"splitting must be a {n} x {k} matrix")
    if rq.matmul(p, s) != rq.identity(k):
        raise InputError("splitting is not a right inverse of the projection")
    if kernel is None:
        kernel = rq.nullspace(p, n)
    kernel = [rq.vec(v) for v in kernel]
    if len(kernel) != n - k or any(not rq.is_zero(rq.matvec(p, v)) for v in kernel) or \
            (kernel and rq.rank(kernel) != n - k):
        raise InputError("kernel vectors must form a basis of ker p")
    return p, s, kernel, k, n


def induce(V: Distribution, p, splitting, kernel=None) -> Distribution:
    """Lift V on Q^k to Q^n: ``<Ind V, f> = <V, p_* f>``.

    ``p_* f(z) = J int f(s z + K v) dv`` with J = |det [s K]| so the fiber
    measure is the quotient of the two Lebesgue measures; the result does
    not depend on the splitting s or the kernel basis K.
    """
    p, s, kernel, k, n = _validate_projection(p, splitting, kernel)
    if V.dim != k:
        raise InputError(f"V lives on Q^{V.dim}, the projection targets Q^{k}")
    s_cols = rq.transpose(s)
    jac = abs(rq.det(rq.columns_to_matrix(list(s_cols) + kernel))) if n else Fraction(1)
    sign_patterns = list(itertools.product((1, -1), repeat=n - k))
    terms = []
    for t in V.terms:
        if isinstance(t, PointDerivativeTerm):
            if t.max_order() > 0:
                raise ClosedClassError("inducing derivatives of delta_0 leaves the conic class")
            base_gens: tuple = ()
            poly = MultiPoly.constant(n, sum((c for _, c in t.coeffs), Fraction(0)))
        else:
            base_gens = tuple(rq.matvec(s, g) for g in t.generators)
            poly = t.poly.compose_linear(p)
        for eps in sign_patterns:
            gens = base_gens + tuple(rq.scale(e, v) for e, v in zip(eps, kernel))
            terms.append(ConicDensityTerm(gens, poly * jac, t.scalar))
    return Distribution(n, V.prefactor, tuple(terms))


def infdex_induced(V: Distribution, p, splitting, kernel=None) -> Distribution:
    """Induction followed by the factor i^(dim G - dim L)."""
    D = induce(V, p, splitting, kernel)
    return D.scaled(ScalarPrefactor.i_power(D.dim - V.dim))


# ---------------------------------------------------------------------------
# pairing and evaluation

def pair(D: Distribution, f: TestFunction, cfg: QuadratureConfig = QuadratureConfig()) -> Estimate:
    """``<D, f>`` with an error estimate covering the quadrature terms."""
    if f.dim != D.dim:
        raise InputError(f"test function on R^{f.dim} paired with a distribution on Q^{D.dim}")
    total = Estimate(0j, 0.0)
    origin = np.zeros((1, D.dim))
    for i, t in enumerate(D.terms):
        if isinstance(t, PointDerivativeTerm):
            val = sum(float(c) * (-1) ** sum(b) * float(f.derivative(b, origin)[0]) for b, c in t.coeffs)
            est = Estimate(val, 1e-15 * abs(val))
        else:
            est = pair_term_numeric(t, f, replace(cfg, seed=cfg.seed + 7919 * i))
        total = total + est.scaled(complex(t.scalar))
    return total.scaled(complex(D.prefactor))


def eval_density_exact(D: Distribution, xi: Sequence) -> ExactScalar:
    """Exact density value at an off-wall point of a full-dimensional distribution."""
    xi = rq.vec(xi)
    if D.point_terms:
        raise InputError("distribution has point-supported terms; no density value")
    if D.spline is not None:
        return ExactScalar.of(D.prefactor * eval_spline_form(D.spline, xi))
    parts = []
    for t in D.terms:
        if len(t.generators) != D.dim:
            raise InputError("lower-dimensional conic term has no density value")
        coeffs = rq.solve(t.matrix(), xi)
        if any(c == 0 for c in coeffs) and all(c >= 0 for c in coeffs):
            raise OnWallError(f"point {tuple(map(str, xi))} lies on a cone boundary")
        if all(c > 0 for c in coeffs):
            parts.append(D.prefactor * t.scalar * (t.poly(xi) / abs(rq.det(t.matrix()))))
    return ExactScalar.of(*parts)


def eval_density(D: Distribution, xi: Sequence) -> complex:
    return complex(eval_density_exact(D, xi))
