"""Verification suites shared by the CLI and the acceptance tests.

Every check returns a ``CheckResult``.  Numerical comparisons pass when two
estimates differ by at most three combined standard errors and both
estimates are resolved to relative precision ``tol``.
"""
from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Callable

import numpy as np
from scipy import integrate

from . import rational as rq
from .distributions import (convolve, delta0, induce, pair, pushforward,
                            spline_distribution, tensor)
from .errors import NotCompactAlongFibersError, OnWallError
from .geometry import enumerate_chambers, in_closed_cone
from .models import (CircleCotangent, CotangentTorus, CutoffSpec, DiagonalModel, LinearTorus, Point,
                     PlaneRotation, ProductModel, brute_force_spline_pairing, cutoff_independence_scan,
                     expected_infdex, finite_s_pairing, stabilization_scan, stabilization_threshold)
from .poly import MultiPoly
from .spline import (WeightList, build_spline, eval_point_recursive, eval_spline_form, laplace_closed_form,
                     laplace_transform)
from .testfn import Estimate, PolyBump, PolyGaussian, QuadratureConfig

DEFAULT_TOL = 0.01


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str
    seconds: float = 0.0

    def line(self) -> str:
        return f"{'PASS' if self.passed else 'FAIL'} {self.name}: {self.detail} ({self.seconds:.1f}s)"

    def to_json(self) -> dict:
        return {"name": self.name, "passed": self.passed, "detail": self.detail, "seconds": round(self.seconds, 3)}


class _Tally:
    """Accumulates comparisons; remembers the worst one."""

    def __init__(self, tol: float):
        self.tol = tol
        self.count = 0
        self.failures: list[str] = []
        self.worst = 0.0

    def estimates(self, label: str, a: Estimate, b: Estimate) -> None:
        self.count += 1
        diff = abs(complex(a.value) - complex(b.value))
        scale = max(abs(complex(a.value)), abs(complex(b.value)))
        sigma = a.error + b.error + 1e-12 * scale + 1e-300
        z = diff / sigma
        self.worst = max(self.worst, z)
        if diff > 3.0 * sigma:
            self.failures.append(f"{label}: |diff| = {diff:.3g} > 3 x {sigma:.3g}")
        elif max(a.error, b.error) > self.tol * scale + 1e-12:
            self.failures.append(f"{label}: error {max(a.error, b.error):.3g} exceeds tol {self.tol} relative")

    def exact(self, label: str, a, b) -> None:
        self.count += 1
        if a != b:
            self.failures.append(f"{label}: {a} != {b}")

    def flag(self, label: str, ok: bool, why: str = "") -> None:
        self.count += 1
        if not ok:
            self.failures.append(f"{label}: {why}" if why else label)

    def result(self, name: str, t0: float, stat: bool = True) -> CheckResult:
        detail = f"{self.count} comparisons"
        if stat:
            detail += f", worst |diff|/sigma = {self.worst:.2f}"
        if self.failures:
            detail += "; " + "; ".join(self.failures[:3])
        return CheckResult(name, not self.failures, detail, time.perf_counter() - t0)


def _quad(fun: Callable[[float], float], a: float, b: float) -> Estimate:
    val, err = integrate.quad(fun, a, b, limit=400, epsabs=1e-13, epsrel=1e-12)
    return Estimate(val, err)


def _dblquad(fun: Callable[[float, float], float], xa, xb, ya, yb) -> Estimate:
    val, err = integrate.dblquad(lambda y, x: fun(x, y), xa, xb, ya, yb, epsabs=1e-10, epsrel=1e-8)
    return Estimate(val, err)


def _pt(f, *xs) -> float:
    return float(f(np.array([xs], dtype=float))[0])


def _range(f, i: int) -> tuple[float, float]:
    center, radius = f.support_ball()
    return float(center[i]) - radius, float(center[i]) + radius


# ---------------------------------------------------------------------------
# test function families

def _testfns_1d():
    return [PolyGaussian(1, (Fraction(3, 10),)),
            PolyBump(2, center=(Fraction(1, 2),)),
            PolyGaussian(Fraction(7, 10), (Fraction(-1, 5),), MultiPoly.from_json({"0": 1, "1": 1}, 1))]


def _testfns_2d():
    return [PolyGaussian(1, (Fraction(3, 10), Fraction(1, 5))),
            PolyBump(2, center=(Fraction(1, 2), Fraction(1, 2))),
            PolyGaussian(Fraction(4, 5), (Fraction(-1, 5), Fraction(2, 5)),
                         MultiPoly.from_json({"0,0": 1, "1,0": Fraction(1, 2)}, 2))]


# ---------------------------------------------------------------------------
# 1. closed-form catalog against hand-coded integrals

def check_catalog(cfg: QuadratureConfig = QuadratureConfig(), tol: float = DEFAULT_TOL) -> CheckResult:
    t0 = time.perf_counter()
    tally = _Tally(tol)
    tp = 2j * math.pi
    X3 = WeightList([(1, 0), (0, 1), (1, 1)])

    def hand_point(f):
        v = _pt(f, 0.0)
        return Estimate(v, 0.0)

    def hand_heaviside(f):
        lo, hi = _range(f, 0)
        return _quad(lambda t: _pt(f, t), max(lo, 0.0), max(hi, 0.0)).scaled(tp)

    def hand_lebesgue(f):
        lo, hi = _range(f, 0)
        return _quad(lambda t: _pt(f, t), lo, hi).scaled(tp)

    def hand_linear(f):
        (xa, xb), (ya, yb) = _range(f, 0), _range(f, 1)
        return _dblquad(lambda x, y: min(x, y) * _pt(f, x, y), max(xa, 0.0), max(xb, 0.0),
                        max(ya, 0.0), max(yb, 0.0)).scaled(tp ** 3)

    def hand_antidiagonal(f):
        lo, hi = _range(f, 0)
        return _quad(lambda z: _pt(f, z, -z), lo, hi).scaled(1j)

    cases = [("point", Point(1), hand_point, _testfns_1d()),
             ("plane rotation", PlaneRotation(), hand_heaviside, _testfns_1d()),
             ("circle cotangent", CircleCotangent(), hand_lebesgue, _testfns_1d()),
             ("linear torus", LinearTorus(X3), hand_linear, _testfns_2d()),
             ("cotangent torus", CotangentTorus(1), hand_antidiagonal, _testfns_2d())]
    for label, model, hand, fns in cases:
        D = expected_infdex(model)
        for j, f in enumerate(fns):
            tally.estimates(f"{label} f{j}", pair(D, f, cfg), hand(f))
    return tally.result("closed-form catalog", t0)


# ---------------------------------------------------------------------------
# 2. Laplace identity

LAPLACE_LISTS = {
    "[1]": [(1,)],
    "[1,1]": [(1,), (1,)],
    "[1,1,1]": [(1,), (1,), (1,)],
    "[e1,e2]": [(1, 0), (0, 1)],
    "[e1,e2,e1+e2]": [(1, 0), (0, 1), (1, 1)],
    "[e1,e2,e1+e2,e1+2e2]": [(1, 0), (0, 1), (1, 1), (1, 2)],
}


def random_dual_point(X: WeightList, rng: random.Random) -> rq.Vec:
    """A random rational z with <a, z> > 0 for every weight."""
    while True:
        z = tuple(Fraction(rng.randint(-9, 9), rng.randint(1, 7)) for _ in range(X.dim))
        if all(rq.dot(a, z) > 0 for a in X.weights):
            return z


def check_laplace(seed: int = 0, count: int = 20) -> CheckResult:
    t0 = time.perf_counter()
    tally = _Tally(0.0)
    rng = random.Random(seed)
    for label, ws in LAPLACE_LISTS.items():
        X = WeightList(ws)
        S = build_spline(X, seed=seed)
        for _ in range(count):
            z = random_dual_point(X, rng)
            tally.exact(f"{label} at z={tuple(map(str, z))}", laplace_transform(S, z), laplace_closed_form(X, z))
    return tally.result("Laplace identity", t0, stat=False)


# ---------------------------------------------------------------------------
# 3. spline values against narrow-bump brute force

def _bump_mass(f: PolyBump) -> float:
    R = float(f.radius)
    prof = lambda r: math.exp(1.0 - 1.0 / (1.0 - (r / R) ** 2)) if r < R else 0.0
    if f.dim == 1:
        return integrate.quad(prof, -R, R, epsabs=1e-14)[0]
    return 2 * math.pi * integrate.quad(lambda r: r * prof(r), 0, R, epsabs=1e-14)[0]


def check_spline_values(cfg: QuadratureConfig = QuadratureConfig(), tol: float = DEFAULT_TOL,
                        seed: int = 0) -> CheckResult:
    """Exact values, then brute-force orthant quadrature against bumps narrow enough
    to sit inside one chamber, where the linear density integrates to
    value x mass by symmetry of the bump.  The bumps fill a small part of
    the sampling shell, hence eight times the configured sample count."""
    t0 = time.perf_counter()
    cfg = replace(cfg, samples=8 * cfg.samples)
    tally = _Tally(tol)
    rng = random.Random(seed)
    X1 = WeightList([(1,), (1,)])
    S1 = build_spline(X1)
    for k in range(10):
        x = Fraction(rng.randint(1, 40), 10)
        tally.exact(f"T[1,1]({x})", eval_spline_form(S1, (x,)), x)
        r = Fraction(1, 10)
        f = PolyBump(r, center=(x,))
        est = brute_force_spline_pairing(X1, f, replace(cfg, seed=cfg.seed + k))
        tally.estimates(f"T[1,1] bump at {x}", est, Estimate(float(x) * _bump_mass(f), 1e-13))
    X2 = WeightList([(1, 0), (0, 1), (1, 1)])
    S2 = build_spline(X2)
    for k in range(10):
        while True:
            a, b = Fraction(rng.randint(3, 30), 10), Fraction(rng.randint(3, 30), 10)
            if abs(a - b) >= Fraction(3, 10):
                break
        tally.exact(f"T[e1,e2,e1+e2]({a},{b})", eval_spline_form(S2, (a, b)), min(a, b))
        r = min(Fraction(1, 10), abs(a - b) / 3)
        f = PolyBump(r, center=(a, b))
        est = brute_force_spline_pairing(X2, f, replace(cfg, seed=cfg.seed + 100 + k))
        tally.estimates(f"T[e1,e2,e1+e2] bump at ({a},{b})", est, Estimate(float(min(a, b)) * _bump_mass(f), 1e-13))
    return tally.result("spline values", t0)


# ---------------------------------------------------------------------------
# 4. stabilization

def check_stabilization(cfg: QuadratureConfig = QuadratureConfig(), tol: float = DEFAULT_TOL) -> CheckResult:
    t0 = time.perf_counter()
    tally = _Tally(tol)
    cutoff = CutoffSpec(1.0)
    one_d = [("T*S1", CircleCotangent()), ("[1]", PlaneRotation()), ]
    multi = [("[1,1]", LinearTorus(WeightList([(1,), (1,)]))),
             ("[1,2]", LinearTorus(WeightList([(1,), (2,)]))),
             ("[1,1,1]", LinearTorus(WeightList([(1,), (1,), (1,)]))),
             ("[e1,e2]", LinearTorus(WeightList([(1, 0), (0, 1)]))),
             ("[e1,e2,e1+e2]", LinearTorus(WeightList([(1, 0), (0, 1), (1, 1)])))]
    for label, model in one_d + multi:
        f = PolyBump(1, center=(Fraction(1, 5),) * model.dim)
        s0 = stabilization_threshold(model, f, cutoff)
        vals = stabilization_scan(model, f, [s0, 2 * s0, 4 * s0], cutoff, cfg=cfg)
        for j in (1, 2):
            tally.estimates(f"{label} s0 vs {2 ** j}s0", vals[0], vals[j])
            if (label, model) in one_d:
                rel = abs(vals[0].value - vals[j].value) / abs(vals[0].value)
                tally.flag(f"{label} 1-D relative agreement", rel <= 1e-10, f"{rel:.2e} > 1e-10")
        # below threshold the cutoff bites; the scan must notice
        small = finite_s_pairing(model, f, s0 / 8, cutoff, cfg=cfg)
        tally.flag(f"{label} s0/8 differs", abs(small.value - vals[0].value) > 3 * (small.error + vals[0].error),
                   "cutoff did not matter below s0")
    return tally.result("stabilization", t0)


# ---------------------------------------------------------------------------
# 5. cutoff independence

def catalog_models():
    return [("point", Point(1)),
            ("circle cotangent", CircleCotangent()),
            ("plane rotation", PlaneRotation()),
            ("linear [1,1]", LinearTorus(WeightList([(1,), (1,)]))),
            ("linear [e1,e2,e1+e2]", LinearTorus(WeightList([(1, 0), (0, 1), (1, 1)]))),
            ("cotangent torus", CotangentTorus(1)),
            ("product", ProductModel(PlaneRotation(), PlaneRotation())),
            ("diagonal", DiagonalModel(PlaneRotation(), LinearTorus(WeightList([(2,)]))))]


def check_cutoff(cfg: QuadratureConfig = QuadratureConfig(), tol: float = DEFAULT_TOL) -> CheckResult:
    t0 = time.perf_counter()
    tally = _Tally(tol)
    cutoffs = [CutoffSpec(1.0), CutoffSpec(2.0), CutoffSpec(5.0)]
    for label, model in catalog_models():
        if isinstance(model, Point):
            f = PolyGaussian(1, (Fraction(2, 5),))
        else:
            f = PolyBump(1, center=(Fraction(1, 5),) * model.dim)
        s = 2 * max(stabilization_threshold(model, f, c) for c in cutoffs)
        vals = cutoff_independence_scan(model, f, cutoffs, s, cfg=cfg)
        for j in (1, 2):
            tally.estimates(f"{label} R0={cutoffs[0].radius} vs {cutoffs[j].radius}", vals[0], vals[j])
    return tally.result("cutoff independence", t0)


# ---------------------------------------------------------------------------
# 6. restriction and 7. convolution

RESTRICTION_CASES = [
    ([(1, 0), (0, 1)], [(1, 1)]),
    ([(1, 0), (0, 1), (1, 1)], [(1, 2)]),
    ([(1, 0), (0, 1), (1, 1), (1, 2)], [(2, 1)]),
    ([(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1)], [(1, 0, 1), (0, 1, 1)]),
    ([(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 0)], [(1, 0, 0), (0, 1, 1)]),
]
INADMISSIBLE_CASES = [
    ([(1, 0), (1, 1)], [(0, 1)]),
    ([(1, 0), (-1, 1)], [(1, 0)]),
]


def random_off_wall_points(S, count: int, rng: random.Random, box: int = 5) -> list:
    """Random rational points avoiding every wall; mostly inside the support."""
    pts = []
    rays = [r for ch in S.complex.chambers for r in ch.rays] if S.complex else []
    while len(pts) < count:
        if rays and rng.random() < 0.8:
            p = tuple(sum((Fraction(rng.randint(1, 30), 7) * r[i] for r in rng.sample(rays, min(len(rays), 3))),
                          Fraction(0)) for i in range(len(rays[0])))
            p = S.weights.from_carrier(p)
        else:
            p = tuple(Fraction(rng.randint(-box * 7, box * 7), 7) for _ in range(S.weights.dim))
        try:
            eval_spline_form(S, p)
        except OnWallError:
            continue
        pts.append(p)
    return pts


def check_restriction(seed: int = 0) -> CheckResult:
    t0 = time.perf_counter()
    tally = _Tally(0.0)
    rng = random.Random(seed)
    for ws, p in RESTRICTION_CASES:
        X = WeightList(ws)
        pushed = pushforward(spline_distribution(X), p)
        direct = build_spline(X.image(p))
        for pt in random_off_wall_points(direct, 10, rng):
            tally.exact(f"X={ws} p={p} at {tuple(map(str, pt))}",
                        eval_spline_form(pushed.spline, pt), eval_spline_form(direct, pt))
    for ws, p in INADMISSIBLE_CASES:
        try:
            pushforward(spline_distribution(WeightList(ws)), p)
            tally.flag(f"X={ws} p={p} rejected", False, "no error raised")
        except NotCompactAlongFibersError as e:
            tally.flag(f"X={ws} p={p} names precondition", "not compactly supported along fibers" in str(e))
    return tally.result("restriction", t0, stat=False)


CONVOLUTION_CASES = [
    ([(1,)], [(1,)]),
    ([(1,), (1,)], [(2,)]),
    ([(1, 0)], [(0, 1)]),
    ([(1, 0), (0, 1)], [(1, 1)]),
    ([(1, 0), (1, 1)], [(0, 1), (1, 2)]),
]


def check_convolution(seed: int = 0) -> CheckResult:
    t0 = time.perf_counter()
    tally = _Tally(0.0)
    rng = random.Random(seed)
    for xs, ys in CONVOLUTION_CASES:
        X, Y = WeightList(xs), WeightList(ys)
        conv = convolve(spline_distribution(X), spline_distribution(Y))
        n = X.dim
        add = [tuple(Fraction(int(j == i or j == i + n)) for j in range(2 * n)) for i in range(n)]
        via_push = pushforward(tensor(spline_distribution(X), spline_distribution(Y)), add)
        XY = X.concat(Y)
        for pt in random_off_wall_points(conv.spline, 10, rng):
            label = f"{xs} * {ys} at {tuple(map(str, pt))}"
            v = eval_spline_form(conv.spline, pt)
            tally.exact(label + " recursion", v, eval_point_recursive(XY, pt))
            tally.exact(label + " push(tensor)", eval_spline_form(via_push.spline, pt), v)
    return tally.result("convolution", t0, stat=False)


# ---------------------------------------------------------------------------
# 8. induction

def _pushed_density(f, p_row: tuple) -> Callable[[float], float]:
    """Hand-coded p_* f for p = (1, 0) or (1, 1) on R^2."""
    (xa, xb), (ya, yb) = _range(f, 0), _range(f, 1)
    if p_row == (1, 0):
        return lambda z: integrate.quad(lambda v: _pt(f, z, v), ya, yb, epsabs=1e-13, epsrel=1e-12)[0]
    return lambda z: integrate.quad(lambda v: _pt(f, v, z - v), xa, xb, epsabs=1e-13, epsrel=1e-12)[0]


def check_induction(cfg: QuadratureConfig = QuadratureConfig(), tol: float = DEFAULT_TOL) -> CheckResult:
    t0 = time.perf_counter()
    tally = _Tally(tol)
    f = PolyGaussian(1, (Fraction(3, 10), Fraction(-1, 5)))
    reach = 12.0
    spaces = {"delta0": (delta0(1), lambda g: Estimate(g(0.0), 0.0)),
              "T[1]": (spline_distribution(WeightList([(1,)])), lambda g: _quad(g, 0.0, reach)),
              "T[1,1]": (spline_distribution(WeightList([(1,), (1,)])), lambda g: _quad(lambda z: z * g(z), 0.0, reach))}
    projections = {(1, 0): [[(1,), (0,)], [(1,), (1,)]],
                   (1, 1): [[(1,), (0,)], [(0,), (1,)]]}
    for vname, (V, hand) in spaces.items():
        for p_row, splittings in projections.items():
            expected = hand(_pushed_density(f, p_row))
            got = []
            for s in splittings:
                est = pair(induce(V, [p_row], s), f, cfg)
                tally.estimates(f"{vname} p={p_row} s={s}", est, expected)
                got.append(est)
            tally.estimates(f"{vname} p={p_row} splittings", got[0], got[1])
    return tally.result("induction", t0)


# ---------------------------------------------------------------------------
# 9. Fourier convention

def check_fourier(tol: float = 1e-6) -> CheckResult:
    t0 = time.perf_counter()
    tally = _Tally(tol)
    c = 0.4
    f = PolyGaussian(1, (Fraction(2, 5),))
    g0 = math.exp(-c * c / 2)
    # f(x) = exp(-(x - c)^2 / 2): f'(0) = c f(0), f''(0) = (c^2 - 1) f(0)
    hand = {0: g0, 1: -1j * c * g0, 2: -(c * c - 1) * g0}
    x = MultiPoly.variable(1, 0)
    for k, P in enumerate([MultiPoly.constant(1, 1), x, x * x]):
        osc = finite_s_pairing(Point(1), f, 1.0, P=P)
        sym = pair(expected_infdex(Point(1), P), f)
        for label, est in (("oscillatory", osc), ("symbolic", sym)):
            rel = abs(est.value - hand[k]) / abs(hand[k])
            tally.flag(f"P=x^{k} {label}", rel <= tol, f"relative error {rel:.2e}")
    return tally.result("Fourier convention", t0, stat=False)


# ---------------------------------------------------------------------------
# 10. invariant suites

INVARIANT_LISTS = list(LAPLACE_LISTS.values()) + [
    [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1), (1, 1, 0)],
    [(1, 1), (2, 2)],
]


def check_invariants(seed: int = 0, cfg: QuadratureConfig = QuadratureConfig()) -> CheckResult:
    t0 = time.perf_counter()
    tally = _Tally(0.0)
    rng = random.Random(seed)
    for ws in INVARIANT_LISTS:
        X = WeightList(ws)
        S = build_spline(X, seed=seed)
        deg = len(X) - X.rank
        for pt in random_off_wall_points(S, 10, rng):
            v = eval_spline_form(S, pt)
            lam = Fraction(rng.randint(1, 20), rng.randint(1, 20))
            tally.exact(f"{ws} homogeneity", eval_spline_form(S, rq.scale(lam, pt)), lam ** deg * v)
            inside = in_closed_cone(X.weights, pt)
            if inside:
                tally.flag(f"{ws} nonnegative at {tuple(map(str, pt))}", v >= 0)
            else:
                tally.exact(f"{ws} support at {tuple(map(str, pt))}", v, 0)
            tally.exact(f"{ws} interpolation vs recursion", v, eval_point_recursive(X, pt))
            if X.full_rank and inside:
                hits = sum(1 for ch in S.complex.chambers
                           if all(s * rq.dot(w, pt) > 0 for s, w in zip(ch.sign_vector, S.complex.walls)))
                tally.exact(f"{ws} chamber coverage", hits, 1)
        if X.full_rank:
            cx = enumerate_chambers(X.weights)
            tally.flag(f"{ws} chambers inside cone",
                       all(in_closed_cone(X.weights, r) for ch in cx.chambers for r in ch.rays))
    # determinism under a fixed seed
    D = spline_distribution(WeightList([(1, 0), (0, 1), (1, 1)]))
    f = PolyBump(2, center=(Fraction(1, 2), Fraction(1, 2)))
    a, b = pair(D, f, cfg), pair(D, f, cfg)
    tally.flag("pairing bit-identical under fixed seed", a == b)
    m = LinearTorus(WeightList([(1, 0), (0, 1), (1, 1)]))
    a, b = finite_s_pairing(m, f, 8.0, cfg=cfg), finite_s_pairing(m, f, 8.0, cfg=cfg)
    tally.flag("finite-s pairing bit-identical under fixed seed", a == b)
    return tally.result("invariant suites", t0, stat=False)


# ---------------------------------------------------------------------------
# extra: finite-s oracle against the closed forms

def check_oracle_limit(cfg: QuadratureConfig = QuadratureConfig(), tol: float = DEFAULT_TOL) -> CheckResult:
    t0 = time.perf_counter()
    tally = _Tally(tol)
    for label, model in catalog_models():
        if isinstance(model, Point):
            fns = [PolyGaussian(1, (Fraction(2, 5),)), PolyGaussian(Fraction(1, 2), (Fraction(-1, 3),)),
                   PolyGaussian(2, (Fraction(1, 7),))]
        else:
            fns = _testfns_1d() if model.dim == 1 else _testfns_2d()
        D = expected_infdex(model)
        for j, f in enumerate(fns):
            s = 2 * stabilization_threshold(model, f, CutoffSpec())
            tally.estimates(f"{label} f{j}", finite_s_pairing(model, f, s, cfg=cfg), pair(D, f, cfg))
    return tally.result("finite-s oracle", t0)


ACCEPTANCE = [
    ("1 closed-form catalog", lambda seed, cfg, tol: check_catalog(cfg, tol)),
    ("2 Laplace identity", lambda seed, cfg, tol: check_laplace(seed)),
    ("3 spline values", lambda seed, cfg, tol: check_spline_values(cfg, tol, seed)),
    ("4 stabilization", lambda seed, cfg, tol: check_stabilization(cfg, tol)),
    ("5 cutoff independence", lambda seed, cfg, tol: check_cutoff(cfg, tol)),
    ("6 restriction", lambda seed, cfg, tol: check_restriction(seed)),
    ("7 convolution", lambda seed, cfg, tol: check_convolution(seed)),
    ("8 induction", lambda seed, cfg, tol: check_induction(cfg, tol)),
    ("9 Fourier convention", lambda seed, cfg, tol: check_fourier()),
    ("10 invariant suites", lambda seed, cfg, tol: check_invariants(seed, cfg)),
]

SUITES = {
    "laplace": [check_laplace],
    "oracle": [check_catalog, check_spline_values, check_fourier, check_oracle_limit],
    "stabilize": [check_stabilization],
    "cutoff": [check_cutoff],
    "restriction": [check_restriction, check_convolution],
    "induction": [check_induction],
}


def run_suite(name: str, seed: int = 0, samples: int = 100_000, tol: float = DEFAULT_TOL) -> list[CheckResult]:
    cfg = QuadratureConfig(samples=samples, seed=seed)
    table = {
        check_laplace: lambda: check_laplace(seed),
        check_catalog: lambda: check_catalog(cfg, tol),
        check_spline_values: lambda: check_spline_values(cfg, tol, seed),
        check_fourier: lambda: check_fourier(),
        check_oracle_limit: lambda: check_oracle_limit(cfg, tol),
        check_stabilization: lambda: check_stabilization(cfg, tol),
        check_cutoff: lambda: check_cutoff(cfg, tol),
        check_restriction: lambda: check_restriction(seed),
        check_convolution: lambda: check_convolution(seed),
        check_induction: lambda: check_induction(cfg, tol),
        check_invariants: lambda: check_invariants(seed, cfg),
    }
    if name == "all":
        order = [check_catalog, check_laplace, check_spline_values, check_stabilization, check_cutoff,
                 check_restriction, check_convolution, check_induction, check_fourier, check_invariants,
                 check_oracle_limit]
    else:
        order = SUITES[name]
    return [table[fn]() for fn in order]
