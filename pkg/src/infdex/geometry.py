"""Cones, walls and chamber complexes of weight lists, all in exact arithmetic.

The chamber complex of a full-rank pointed list ``X`` in Q^n is the
decomposition of cone(X) cut out by the walls: hyperplanes spanned by the
rank n-1 subsets of ``X``.  Chambers are found by splitting cells one wall
at a time; every candidate sign vector is realized (or discarded) by an
exact strict-feasibility LP.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from . import rational as rq
from .errors import EmptyInteriorError, NotPointedError, OnWallError


def pointedness_check(vectors: Sequence[Sequence]) -> bool:
    """True iff no nonzero nonnegative combination of ``vectors`` vanishes.

    Equivalently (Gordan) some linear functional is strictly positive on
    every vector.  The empty list spans {0}, which is pointed.
    """
    vectors = [rq.vec(v) for v in vectors]
    if not vectors:
        return True
    return rq.strictly_feasible_point(vectors) is not None


def positive_functional(vectors: Sequence[Sequence]) -> rq.Vec:
    c = rq.strictly_feasible_point([rq.vec(v) for v in vectors])
    if c is None:
        raise NotPointedError("no functional is positive on all weights")
    return c


def in_closed_cone(generators: Sequence[Sequence], point: Sequence) -> bool:
    """Exact membership of ``point`` in cone(generators), by Caratheodory."""
    gens = [rq.vec(g) for g in generators]
    point = rq.vec(point)
    if rq.is_zero(point):
        return True
    if not gens:
        return False
    r = rq.rank(gens)
    if rq.rank(gens + [point]) > r:
        return False
    for subset in itertools.combinations(gens, r):
        if rq.rank(subset) < r:
            continue
        a = rq.columns_to_matrix(subset)
        # restricted to span: least-squares is exact since point is in span
        at = rq.transpose(a)
        coeffs = rq.solve(rq.matmul(at, a), rq.matvec(at, point))
        if coeffs is not None and all(t >= 0 for t in coeffs):
            return True
    return False


def enumerate_walls(vectors: Sequence[Sequence]) -> list[rq.Vec]:
    """Primitive normals of the hyperplanes spanned by rank n-1 subsets.

    ``vectors`` must span Q^n (callers reduce rank-deficient lists to
    coordinates of their span first).  For n = 1 the single wall is the
    point 0 with normal (1).
    """
    vectors = [rq.vec(v) for v in vectors]
    n = len(vectors[0])
    if n == 1:
        return [(Fraction(1),)]
    walls: dict[rq.Vec, None] = {}
    for subset in itertools.combinations(range(len(vectors)), n - 1):
        rows = [vectors[i] for i in subset]
        if rq.rank(rows) != n - 1:
            continue
        (normal,) = rq.nullspace(rows, n)
        walls.setdefault(rq.primitive(normal), None)
    return list(walls)


@dataclass(frozen=True)
class SimplicialCone:
    generators: tuple  # tuple of column vectors

    @property
    def dim(self) -> int:
        return len(self.generators)

    def matrix(self) -> rq.Mat:
        return rq.columns_to_matrix(self.generators)

    def abs_det(self) -> Fraction:
        return abs(rq.det(self.matrix()))


@dataclass(frozen=True)
class Chamber:
    sign_vector: tuple  # +1/-1 per wall of the complex
    rays: tuple  # primitive extreme rays
    simplices: tuple  # SimplicialCone triangulation without new rays


@dataclass(frozen=True)
class ChamberComplex:
    weights: tuple
    walls: tuple
    chambers: tuple
    _index: dict = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "_index", {c.sign_vector: i for i, c in enumerate(self.chambers)})

    @property
    def dim(self) -> int:
        return len(self.walls[0])

    def signs(self, point: Sequence) -> tuple:
        out = []
        for w in self.walls:
            v = rq.dot(w, point)
            if v == 0:
                raise OnWallError(f"point {tuple(map(str, point))} lies on wall {tuple(map(str, w))}")
            out.append(1 if v > 0 else -1)
        return tuple(out)

    def locate(self, point: Sequence) -> int | None:
        """Index of the chamber containing ``point``, None if outside the cone."""
        return self._index.get(self.signs(point))

    def chamber_by_signs(self, signs: tuple) -> int | None:
        return self._index.get(signs)

    def on_wall(self, point: Sequence) -> bool:
        return any(rq.dot(w, point) == 0 for w in self.walls)


def _candidate_rays(walls: Sequence[rq.Vec], n: int) -> list[rq.Vec]:
    if n == 1:
        return [(Fraction(1),), (Fraction(-1),)]
    rays: dict = {}
    for subset in itertools.combinations(walls, n - 1):
        if rq.rank(subset) != n - 1:
            continue
        (d,) = rq.nullspace(list(subset), n)
        p = rq.primitive(d)
        rays.setdefault(p, None)
        rays.setdefault(tuple(-x for x in p), None)
    return list(rays)


def _triangulate(rays: list, d: int, walls: Sequence[rq.Vec]) -> list[tuple]:
    """Pulling triangulation of the d-dimensional cone spanned by ``rays``."""
    if len(rays) == d:
        return [tuple(rays)]
    apex = rays[0]
    facets: dict = {}
    for w in walls:
        on = tuple(r for r in rays if rq.dot(w, r) == 0)
        if apex in on or len(on) < d - 1:
            continue
        if rq.rank(on) == d - 1:
            facets.setdefault(frozenset(on), on)
    out = []
    for on in facets.values():
        for simplex in _triangulate(list(on), d - 1, walls):
            out.append((apex,) + simplex)
    return out


def _split_regions(walls: Sequence[rq.Vec], start_constraints: list, start_witness) -> list[tuple]:
    """All cells of ``walls`` inside the open cone given by start_constraints.

    Returns (signs dict, witness) pairs.
    """
    regions = [({}, start_constraints, start_witness)]
    for wi, w in enumerate(walls):
        new_regions = []
        for signs, cons, wit in regions:
            if wi in signs:
                new_regions.append((signs, cons, wit))
                continue
            val = rq.dot(w, wit)
            for s in (1, -1):
                row = tuple(s * x for x in w)
                if val * s > 0:
                    witness = wit
                else:
                    witness = rq.strictly_feasible_point(cons + [row])
                if witness is not None:
                    new_regions.append(({**signs, wi: s}, cons + [row], witness))
        regions = new_regions
    return [(signs, wit) for signs, _, wit in regions]


@lru_cache(maxsize=256)
def _enumerate_chambers_cached(weights: tuple) -> ChamberComplex:
    n = len(weights[0])
    walls = enumerate_walls(weights)
    # facet walls have every weight on one side; they bound cone(X)
    start: list = []
    signs0: dict = {}
    for wi, w in enumerate(walls):
        vals = [rq.dot(w, a) for a in weights]
        if all(v >= 0 for v in vals):
            start.append(w)
            signs0[wi] = 1
        elif all(v <= 0 for v in vals):
            start.append(tuple(-x for x in w))
            signs0[wi] = -1
    witness = tuple(sum(col) for col in zip(*weights))
    rest = [w for wi, w in enumerate(walls) if wi not in signs0]
    rest_idx = [wi for wi in range(len(walls)) if wi not in signs0]
    cells = _split_regions(rest, start, witness)
    candidates = _candidate_rays(walls, n)
    chambers = []
    for signs, _ in cells:
        full = dict(signs0)
        for local, s in signs.items():
            full[rest_idx[local]] = s
        sv = tuple(full[i] for i in range(len(walls)))
        rays = tuple(r for r in candidates
                     if all(s * rq.dot(w, r) >= 0 for s, w in zip(sv, walls)))
        simplices = tuple(SimplicialCone(s) for s in _triangulate(list(rays), n, walls))
        chambers.append(Chamber(sv, rays, simplices))
    chambers.sort(key=lambda c: c.sign_vector)
    return ChamberComplex(weights=weights, walls=tuple(walls), chambers=tuple(chambers))


def enumerate_chambers(vectors: Sequence[Sequence]) -> ChamberComplex:
    """Chamber complex of a full-rank, pointed list of nonzero vectors."""
    weights = tuple(rq.vec(v) for v in vectors)
    if not weights or any(rq.is_zero(a) for a in weights):
        raise NotPointedError("chamber complex needs a nonempty list of nonzero vectors")
    if rq.rank(weights) != len(weights[0]):
        raise ValueError("enumerate_chambers expects a full-rank list; reduce to span coordinates first")
    if not pointedness_check(weights):
        raise NotPointedError("unbounded support")
    return _enumerate_chambers_cached(weights)


def interior_point(rays: Sequence[Sequence], walls: Sequence[Sequence] = ()) -> rq.Vec:
    """A rational point strictly inside cone(rays) and off every wall.

    The sum of all generators of a full-dimensional cone is interior; if it
    happens to sit on one of ``walls`` (possible only when the cone is not
    a chamber of those walls) it is nudged towards each generator in turn.
    """
    rays = [rq.vec(r) for r in rays]
    if not rays:
        raise EmptyInteriorError("no generators")
    n = len(rays[0])
    if rq.rank(rays) < n:
        raise EmptyInteriorError("cone is lower dimensional")
    base = tuple(sum(c) for c in zip(*rays))
    if not any(rq.dot(w, base) == 0 for w in walls):
        return base
    for k in range(1, 64):
        for r in rays:
            cand = rq.add(base, rq.scale(Fraction(1, k + 1), r))
            if not any(rq.dot(w, cand) == 0 for w in walls):
                return cand
    raise EmptyInteriorError("could not find an off-wall interior point")
