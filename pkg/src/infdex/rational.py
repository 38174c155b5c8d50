"""Exact rational linear algebra.

Vectors are tuples of :class:`fractions.Fraction`; matrices are tuples of
row tuples.  Everything here is exact and side-effect free.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import InputError

Vec = tuple  # tuple[Fraction, ...]
Mat = tuple  # tuple[Vec, ...]


def as_fraction(x) -> Fraction:
    """Coerce an int, Fraction or ``"p/q"`` string to a Fraction.

    Floats are rejected: every value in this package is exact.
    """
    if isinstance(x, bool):
        raise InputError(f"not a rational number: {x!r}")
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"malformed rational {x!r}") from exc
    raise InputError(f"not a rational number: {x!r} (use an int or a 'p/q' string)")


def fraction_to_json(q: Fraction):
    q = Fraction(q)
    return q.numerator if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def vec(xs: Iterable) -> Vec:
    return tuple(as_fraction(x) for x in xs)


def parse_point(text: str) -> Vec:
    """Parse ``"p/q,r,..."`` into a vector."""
    parts = [p for p in text.replace(" ", "").split(",") if p]
    if not parts:
        raise InputError(f"empty point {text!r}")
    return vec(parts)


def dot(u: Sequence, v: Sequence) -> Fraction:
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def add(u: Sequence, v: Sequence) -> Vec:
    return tuple(a + b for a, b in zip(u, v))


def sub(u: Sequence, v: Sequence) -> Vec:
    return tuple(a - b for a, b in zip(u, v))


def scale(c, u: Sequence) -> Vec:
    return tuple(c * a for a in u)


def is_zero(u: Sequence) -> bool:
    return all(a == 0 for a in u)


def transpose(rows: Sequence[Sequence]) -> Mat:
    return tuple(zip(*rows)) if rows else ()


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> Mat:
    bt = transpose(b)
    return tuple(tuple(dot(r, c) for c in bt) for r in a)


def matvec(a: Sequence[Sequence], v: Sequence) -> Vec:
    return tuple(dot(r, v) for r in a)


def columns_to_matrix(cols: Sequence[Sequence]) -> Mat:
    """Stack column vectors into a row-major matrix."""
    return transpose(cols)


def identity(n: int) -> Mat:
    return tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))


def rref(rows: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form and pivot columns."""
    m = [list(map(Fraction, r)) for r in rows]
    if not m:
        return m, []
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def rank(rows: Sequence[Sequence]) -> int:
    return len(rref(rows)[1])


def nullspace(rows: Sequence[Sequence], ncols: int | None = None) -> list[Vec]:
    """Basis of {x : rows @ x = 0}."""
    if ncols is None:
        ncols = len(rows[0])
    if not rows:
        return [tuple(Fraction(int(i == j)) for i in range(ncols)) for j in range(ncols)]
    m, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fcol in free:
        x = [Fraction(0)] * ncols
        x[fcol] = Fraction(1)
        for i, pc in enumerate(pivots):
            x[pc] = -m[i][fcol]
        basis.append(tuple(x))
    return basis


def solve(a: Sequence[Sequence], b: Sequence) -> Vec | None:
    """Unique solution of ``a @ x = b`` or None if inconsistent or not unique."""
    ncols = len(a[0])
    aug = [list(r) + [bi] for r, bi in zip(a, b)]
    m, pivots = rref(aug)
    if ncols in pivots or len(pivots) != ncols:
        return None
    x = [Fraction(0)] * ncols
    for i, pc in enumerate(pivots):
        x[pc] = m[i][ncols]
    return tuple(x)


def det(a: Sequence[Sequence]) -> Fraction:
    n = len(a)
    m = [list(map(Fraction, r)) for r in a]
    d = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if m[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            m[c], m[p] = m[p], m[c]
            d = -d
        d *= m[c][c]
        for i in range(c + 1, n):
            if m[i][c] != 0:
                f = m[i][c] / m[c][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return d


def inverse(a: Sequence[Sequence]) -> Mat:
    n = len(a)
    aug = [list(r) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(a)]
    m, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return tuple(tuple(r[n:]) for r in m)


def independent_subset(vectors: Sequence[Sequence]) -> list[int]:
    """Greedy indices of a maximal linearly independent subset, in order."""
    chosen: list[int] = []
    rows: list = []
    for i, v in enumerate(vectors):
        if rank(rows + [v]) > len(rows):
            rows.append(v)
            chosen.append(i)
    return chosen


def left_inverse(cols: Sequence[Sequence]) -> Mat:
    """Matrix L with L @ C = I for C with the given independent columns."""
    c = columns_to_matrix(cols)  # n x r
    r = len(cols)
    idx = independent_subset(c)[:r]
    sub_inv = inverse([c[i] for i in idx])  # r x r
    n = len(c)
    out = [[Fraction(0)] * n for _ in range(r)]
    for i in range(r):
        for k, row_idx in enumerate(idx):
            out[i][row_idx] = sub_inv[i][k]
    return tuple(tuple(r_) for r_ in out)


def primitive(v: Sequence) -> Vec:
    """Scale to a primitive integer vector with positive leading nonzero entry."""
    v = [Fraction(x) for x in v]
    if all(x == 0 for x in v):
        raise ValueError("zero vector has no primitive form")
    lcm = 1
    for x in v:
        lcm = lcm * x.denominator // math.gcd(lcm, x.denominator)
    ints = [int(x * lcm) for x in v]
    g = 0
    for k in ints:
        g = math.gcd(g, k)
    ints = [k // g for k in ints]
    lead = next(k for k in ints if k != 0)
    if lead < 0:
        ints = [-k for k in ints]
    return tuple(Fraction(k) for k in ints)


def primitive_ray(v: Sequence) -> Vec:
    """Primitive integer vector on the same ray (direction kept)."""
    p = primitive(v)
    lead_v = next(x for x in v if x != 0)
    return p if lead_v > 0 else tuple(-x for x in p)


# ---------------------------------------------------------------------------
# strict feasibility of homogeneous systems

def _simplex_max(tab: list[list[Fraction]], basis: list[int], obj_col: int) -> None:
    """Maximize the variable ``obj_col`` in-place with Bland's rule.

    ``tab`` rows are ``[coeffs..., rhs]``; the last row is the objective
    row holding reduced costs (negative => entering candidate).
    """
    nrows = len(tab) - 1
    ncols = len(tab[0]) - 1
    z = tab[-1]
    while True:
        enter = next((j for j in range(ncols) if z[j] < 0), None)
        if enter is None:
            return
        best = None
        leave = None
        for i in range(nrows):
            a = tab[i][enter]
            if a > 0:
                ratio = tab[i][-1] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best, leave = ratio, i
        if leave is None:
            raise RuntimeError("unbounded LP (bounding box missing)")
        piv = tab[leave][enter]
        tab[leave] = [x / piv for x in tab[leave]]
        for i in range(len(tab)):
            if i != leave and tab[i][enter] != 0:
                f = tab[i][enter]
                row = tab[leave]
                tab[i] = [x - f * y for x, y in zip(tab[i], row)]
        basis[leave] = enter
        z = tab[-1]


def strictly_feasible_point(rows: Sequence[Sequence], dim: int | None = None) -> Vec | None:
    """A rational x with ``<r, x> > 0`` for every row r, or None.

    Solves max t s.t. <r, x> >= t, |x_j| <= 1, t <= 1 by an exact simplex
    method started at the feasible origin.  The system is feasible iff
    the optimum is positive.
    """
    rows = [tuple(map(Fraction, r)) for r in rows]
    if dim is None:
        if not rows:
            raise ValueError("dimension required for an empty system")
        dim = len(rows[0])
    if not rows:
        return tuple(Fraction(int(j == 0)) for j in range(dim))
    if any(is_zero(r) for r in rows):
        return None
    n = dim
    nvar = 2 * n + 1  # x+, x-, t
    cons: list[tuple[list[Fraction], Fraction]] = []
    for r in rows:
        cons.append(([-a for a in r] + [a for a in r] + [Fraction(1)], Fraction(0)))
    for j in range(2 * n + 1):
        e = [Fraction(0)] * nvar
        e[j] = Fraction(1)
        cons.append((e, Fraction(1)))
    ncons = len(cons)
    tab = []
    for i, (coeffs, rhs) in enumerate(cons):
        slack = [Fraction(0)] * ncons
        slack[i] = Fraction(1)
        tab.append(coeffs + slack + [rhs])
    zrow = [Fraction(0)] * (nvar + ncons + 1)
    zrow[2 * n] = Fraction(-1)
    tab.append(zrow)
    basis = [nvar + i for i in range(ncons)]
    _simplex_max(tab, basis, 2 * n)
    if tab[-1][-1] <= 0:
        return None
    values = [Fraction(0)] * (nvar + ncons)
    for i, b in enumerate(basis):
        values[b] = tab[i][-1]
    x = tuple(values[j] - values[n + j] for j in range(n))
    assert all(dot(r, x) > 0 for r in rows)
    return x
