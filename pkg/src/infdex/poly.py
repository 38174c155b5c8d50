"""Sparse multivariate polynomials with exact rational coefficients."""
from __future__ import annotations

import itertools
import math
from fractions import Fraction
from typing import Mapping, Sequence

import numpy as np

from . import rational as rq
from .errors import InputError, InterpolationError


def monomials(nvars: int, degree: int, homogeneous: bool = False) -> list[tuple[int, ...]]:
    """Exponent tuples of total degree ``degree`` (or ``<= degree``), graded-lex."""
    out = []
    degrees = [degree] if homogeneous else range(degree + 1)
    for d in degrees:
        for combo in itertools.combinations_with_replacement(range(nvars), d):
            e = [0] * nvars
            for v in combo:
                e[v] += 1
            out.append(tuple(e))
    # combinations_with_replacement already yields a deterministic order
    return out


class MultiPoly:
    """Polynomial in ``nvars`` variables as ``{exponent tuple: Fraction}``.

    Zero coefficients are never stored.
    """

    __slots__ = ("nvars", "coeffs")

    def __init__(self, nvars: int, coeffs: Mapping[tuple[int, ...], object] | None = None):
        self.nvars = nvars
        clean: dict[tuple[int, ...], Fraction] = {}
        for e, c in (coeffs or {}).items():
            e = tuple(int(k) for k in e)
            if len(e) != nvars:
                raise ValueError(f"exponent {e} does not match nvars={nvars}")
            c = Fraction(c)
            if c != 0:
                clean[e] = clean.get(e, Fraction(0)) + c
                if clean[e] == 0:
                    del clean[e]
        self.coeffs = clean

    # -- constructors -----------------------------------------------------
    @classmethod
    def constant(cls, nvars: int, c=1) -> "MultiPoly":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def variable(cls, nvars: int, i: int) -> "MultiPoly":
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, {tuple(e): 1})

    @classmethod
    def linear_form(cls, coeffs: Sequence) -> "MultiPoly":
        n = len(coeffs)
        return cls(n, {tuple(int(i == j) for j in range(n)): c for i, c in enumerate(coeffs)})

    # -- basic protocol ---------------------------------------------------
    def __eq__(self, other) -> bool:
        if isinstance(other, MultiPoly):
            return self.nvars == other.nvars and self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self == MultiPoly.constant(self.nvars, other)
        return NotImplemented

    def __hash__(self):
        return hash((self.nvars, frozenset(self.coeffs.items())))

    def __repr__(self) -> str:
        if not self.coeffs:
            return "MultiPoly(0)"
        terms = []
        for e, c in sorted(self.coeffs.items()):
            mono = "*".join(f"x{i}^{k}" if k > 1 else f"x{i}" for i, k in enumerate(e) if k)
            terms.append(f"{c}" + (f"*{mono}" if mono else ""))
        return "MultiPoly(" + " + ".join(terms) + ")"

    def is_zero(self) -> bool:
        return not self.coeffs

    def degree(self) -> int:
        return max((sum(e) for e in self.coeffs), default=-1)

    def is_homogeneous(self, d: int | None = None) -> bool:
        degs = {sum(e) for e in self.coeffs}
        if not degs:
            return True
        return len(degs) == 1 and (d is None or degs == {d})

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other) -> "MultiPoly":
        other = self._coerce(other)
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out.get(e, Fraction(0)) + c
        return MultiPoly(self.nvars, out)

    __radd__ = __add__

    def __neg__(self) -> "MultiPoly":
        return MultiPoly(self.nvars, {e: -c for e, c in self.coeffs.items()})

    def __sub__(self, other) -> "MultiPoly":
        return self + (-self._coerce(other))

    def __mul__(self, other) -> "MultiPoly":
        if isinstance(other, (int, Fraction)):
            return MultiPoly(self.nvars, {e: c * other for e, c in self.coeffs.items()})
        other = self._coerce(other)
        out: dict = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, Fraction(0)) + c1 * c2
        return MultiPoly(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "MultiPoly":
        out = MultiPoly.constant(self.nvars, 1)
        for _ in range(k):
            out = out * self
        return out

    def _coerce(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            if other.nvars != self.nvars:
                raise ValueError("variable count mismatch")
            return other
        return MultiPoly.constant(self.nvars, other)

    # -- calculus and substitution ---------------------------------------
    def partial(self, beta: Sequence[int]) -> "MultiPoly":
        """The derivative ``d^beta`` of this polynomial."""
        out = {}
        for e, c in self.coeffs.items():
            if any(k < b for k, b in zip(e, beta)):
                continue
            f = 1
            for k, b in zip(e, beta):
                f *= math.perm(k, b)
            out[tuple(k - b for k, b in zip(e, beta))] = c * f
        return MultiPoly(self.nvars, out)

    def compose_linear(self, m: Sequence[Sequence]) -> "MultiPoly":
        """The polynomial ``y -> self(m @ y)`` where ``m`` is nvars x k."""
        if len(m) != self.nvars:
            raise ValueError("substitution matrix has wrong row count")
        k = len(m[0]) if m else 0
        forms = [MultiPoly.linear_form(row) if k else MultiPoly(0) for row in m]
        out = MultiPoly(k)
        cache: dict = {}
        for e, c in self.coeffs.items():
            term = MultiPoly.constant(k, c)
            for i, p in enumerate(e):
                if p:
                    key = (i, p)
                    if key not in cache:
                        cache[key] = forms[i] ** p
                    term = term * cache[key]
            out = out + term
        return out

    def embed(self, total: int, offset: int) -> "MultiPoly":
        """View as a polynomial in ``total`` variables, occupying a block."""
        pre, post = offset, total - offset - self.nvars
        return MultiPoly(total, {(0,) * pre + e + (0,) * post: c for e, c in self.coeffs.items()})

    # -- evaluation --------------------------------------------------------
    def __call__(self, point: Sequence) -> Fraction:
        total = Fraction(0)
        for e, c in self.coeffs.items():
            term = c
            for x, k in zip(point, e):
                if k:
                    term *= Fraction(x) ** k
            total += term
        return total

    def eval_float(self, points: np.ndarray) -> np.ndarray:
        """Vectorized float evaluation at the rows of ``points`` (N x nvars)."""
        points = np.atleast_2d(np.asarray(points, dtype=float))
        out = np.zeros(points.shape[0])
        for e, c in self.coeffs.items():
            term = np.full(points.shape[0], float(c))
            for i, k in enumerate(e):
                if k:
                    term = term * points[:, i] ** k
            out += term
        return out

    def multiplicity_along(self, normal: Sequence) -> int | float:
        """Largest k with <normal, x>^k dividing this polynomial (inf for 0)."""
        if self.is_zero():
            return math.inf
        n = self.nvars
        tangent = rq.nullspace([normal], n)
        # coordinates (y_1..y_{n-1}, t) -> sum y_i tangent_i + t * normal
        cols = list(tangent) + [tuple(Fraction(x) for x in normal)]
        q = self.compose_linear(rq.columns_to_matrix(cols))
        return min(e[-1] for e in q.coeffs)

    # -- serialization -----------------------------------------------------
    def to_json(self) -> dict:
        return {",".join(map(str, e)): rq.fraction_to_json(c) for e, c in sorted(self.coeffs.items())}

    @classmethod
    def from_json(cls, data, nvars: int) -> "MultiPoly":
        if isinstance(data, (int, str)):
            return cls.constant(nvars, rq.as_fraction(data))
        if not isinstance(data, Mapping):
            raise InputError(f"malformed polynomial {data!r}")
        coeffs = {}
        for key, val in data.items():
            try:
                e = tuple(int(k) for k in str(key).split(",")) if str(key) else ()
            except ValueError as exc:
                raise InputError(f"malformed monomial key {key!r}") from exc
            if len(e) != nvars or any(k < 0 for k in e):
                raise InputError(f"monomial {key!r} does not have {nvars} nonnegative exponents")
            coeffs[e] = rq.as_fraction(val)
        return cls(nvars, coeffs)


def poly_interpolate(samples: Sequence[tuple[Sequence, object]], degree_bound: int,
                     homogeneous: bool = False) -> MultiPoly:
    """The unique polynomial of degree <= ``degree_bound`` through ``samples``.

    With ``homogeneous=True`` the search space is the homogeneous
    polynomials of exactly that degree.  The sample count must equal the
    dimension of the space; a singular configuration raises
    :class:`InterpolationError` so the caller can resample.
    """
    if not samples:
        raise InterpolationError("no samples")
    nvars = len(samples[0][0])
    basis = monomials(nvars, degree_bound, homogeneous)
    if len(samples) != len(basis):
        raise ValueError(f"need exactly {len(basis)} samples, got {len(samples)}")
    rows = []
    rhs = []
    for pt, val in samples:
        pt = rq.vec(pt)
        row = []
        for e in basis:
            v = Fraction(1)
            for x, k in zip(pt, e):
                if k:
                    v *= x ** k
            row.append(v)
        rows.append(row)
        rhs.append(Fraction(val))
    sol = rq.solve(rows, rhs)
    if sol is None:
        raise InterpolationError("sample configuration is singular")
    return MultiPoly(nvars, dict(zip(basis, sol)))


def interpolate_1d(nodes: Sequence[Fraction], values: Sequence[Fraction]) -> MultiPoly:
    return poly_interpolate([((t,), v) for t, v in zip(nodes, values)], len(nodes) - 1)


def integrate_1d(p: MultiPoly, lo: Fraction, hi: Fraction) -> Fraction:
    total = Fraction(0)
    for (k,), c in p.coeffs.items():
        total += c * (Fraction(hi) ** (k + 1) - Fraction(lo) ** (k + 1)) / (k + 1)
    return total

