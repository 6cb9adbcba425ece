"""Finite grids on the non-negative orthant and set machinery on them.

A grid point is addressed by its index tuple; iteration order is
``itertools.product`` over the axes (last coordinate fastest), and every
"smallest witness" in the package refers to that order.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

import numpy as np

from .core import FIRST, INCOMPARABLE, INDIFFERENT, SECOND, Alternative, Oracle, Outcome
from .errors import BadGridSpec, IncompleteOracle
from .verdict import AxiomVerdict, Resolution, Status, make_witness

Index = tuple[int, ...]

# outcome codes used in relation matrices
CODE = {FIRST: 0, SECOND: 1, INDIFFERENT: 2, INCOMPARABLE: 3}
OUTCOMES = (FIRST, SECOND, INDIFFERENT, INCOMPARABLE)


@dataclass(frozen=True)
class Grid:
    n: int
    max: float
    h: float

    def __post_init__(self):
        if self.n < 1:
            raise BadGridSpec(f"grid dimension must be positive, got {self.n}")
        if not (self.max > 0 and self.h > 0):
            raise BadGridSpec(f"grid needs max > 0 and h > 0, got max={self.max}, h={self.h}")
        k = round(self.max / self.h)
        if k < 1 or not math.isclose(k * self.h, self.max, rel_tol=1e-12, abs_tol=0.0):
            raise BadGridSpec(f"max/h must be an integer, got {self.max}/{self.h}")

    @property
    def steps(self) -> int:
        return round(self.max / self.h)

    @property
    def levels(self) -> tuple[float, ...]:
        return tuple(i * self.h for i in range(self.steps + 1))

    @property
    def shape(self) -> tuple[int, ...]:
        return (self.steps + 1,) * self.n

    @property
    def size(self) -> int:
        return (self.steps + 1) ** self.n

    @property
    def spec(self) -> str:
        return f"{self.n}:{self.max:g}:{self.h:g}"

    def indices(self) -> Iterator[Index]:
        return itertools.product(range(self.steps + 1), repeat=self.n)

    def points(self) -> Iterator[Alternative]:
        levels = self.levels
        return itertools.product(levels, repeat=self.n)

    def point(self, idx: Index) -> Alternative:
        return tuple(i * self.h for i in idx)

    def index_of(self, point: Sequence[float]) -> Index:
        """Index of a grid point; ValueError when ``point`` is off the grid."""
        if len(point) != self.n:
            raise ValueError(f"point {tuple(point)} has wrong dimension for grid {self.spec}")
        out = []
        for c in point:
            k = round(c / self.h)
            if not 0 <= k <= self.steps or k * self.h != c:
                raise ValueError(f"{tuple(point)} is not a point of grid {self.spec}")
            out.append(k)
        return tuple(out)

    def flat(self, idx: Index) -> int:
        f = 0
        m = self.steps + 1
        for i in idx:
            f = f * m + i
        return f

    def contains(self, point: Sequence[float]) -> bool:
        try:
            self.index_of(point)
        except ValueError:
            return False
        return True

    def with_dimension(self, n: int) -> "Grid":
        return Grid(n, self.max, self.h)


def build_grid(n: int, max: float, h: float) -> Grid:
    return Grid(int(n), float(max), float(h))


def parse_grid(text: str) -> Grid:
    parts = text.split(":")
    if len(parts) != 3:
        raise BadGridSpec(f"grid spec must be n:max:h, got {text!r}")
    try:
        return build_grid(int(parts[0]), float(parts[1]), float(parts[2]))
    except ValueError as exc:
        if isinstance(exc, BadGridSpec):
            raise
        raise BadGridSpec(f"bad grid spec {text!r}") from exc


@dataclass(frozen=True)
class GridSet:
    grid: Grid
    members: frozenset[Index]

    @classmethod
    def from_points(cls, grid: Grid, points: Iterable[Sequence[float]]) -> "GridSet":
        return cls(grid, frozenset(grid.index_of(p) for p in points))

    @classmethod
    def where(cls, grid: Grid, pred) -> "GridSet":
        return cls(grid, frozenset(i for i in grid.indices() if pred(grid.point(i))))

    def __contains__(self, point: Sequence[float]) -> bool:
        try:
            return self.grid.index_of(point) in self.members
        except ValueError:
            return False

    def __len__(self) -> int:
        return len(self.members)

    def __le__(self, other: "GridSet") -> bool:
        return self.members <= other.members

    def points(self) -> list[Alternative]:
        return [self.grid.point(i) for i in sorted(self.members)]

    def complement(self) -> "GridSet":
        return GridSet(self.grid, frozenset(self.grid.indices()) - self.members)

    @property
    def is_full(self) -> bool:
        return len(self.members) == self.grid.size


def neighborhood(g: Grid, x: Sequence[float], eps: float) -> list[Alternative]:
    """Grid points at Euclidean distance strictly less than ``eps`` from x."""
    ranges = []
    for c in x:
        lo = max(0, math.ceil((c - eps) / g.h))
        hi = min(g.steps, math.floor((c + eps) / g.h))
        ranges.append(range(lo, hi + 1))
    out = []
    for idx in itertools.product(*ranges):
        p = g.point(idx)
        if math.dist(p, x) < eps:
            out.append(p)
    return out


def relation_matrix(oracle: Oracle, g: Grid) -> np.ndarray:
    """Outcome codes for every ordered pair of grid points (flat index order)."""
    return relation_matrix_for(oracle.fn, list(g.points()))


def relation_matrix_for(fn, pts: Sequence[Alternative]) -> np.ndarray:
    m = len(pts)
    out = np.empty((m, m), dtype=np.int8)
    first, second, indiff = FIRST, SECOND, INDIFFERENT
    for a, x in enumerate(pts):
        row = out[a]
        for b, y in enumerate(pts):
            r = fn(x, y)
            row[b] = 0 if r is first else 1 if r is second else 2 if r is indiff else 3
    return out


@dataclass(frozen=True)
class ContourBundle:
    anchor: Alternative
    lower: GridSet
    strict_lower: GridSet
    indiff: GridSet
    closure: GridSet


def _directions(n: int) -> list[tuple[float, ...]]:
    out = []
    for d in itertools.product((-1, 0, 1), repeat=n):
        if any(d):
            norm = math.sqrt(sum(c * c for c in d))
            out.append(tuple(c / norm for c in d))
    return out


def _weakly_below(fn, x: Alternative, q: Alternative) -> bool:
    r = fn(x, q)
    if r is INCOMPARABLE:
        raise IncompleteOracle(f"{x} and {q} are incomparable")
    return r is FIRST or r is INDIFFERENT


def _in_closure(fn, x: Alternative, p: Alternative, h: float, dirs) -> bool:
    # p is a limit point of L(x) at resolution h: at both probe radii some
    # nearby non-negative point is weakly below x
    for delta in (h / 8, h / 1024):
        hit = False
        for d in dirs:
            q = tuple(c + delta * e for c, e in zip(p, d))
            if min(q) < 0.0:
                continue
            if _weakly_below(fn, x, q):
                hit = True
                break
        if not hit:
            return False
    return True


def contours(oracle: Oracle, x: Sequence[float], g: Grid,
             matrix: np.ndarray | None = None) -> ContourBundle:
    """Lower, strict lower and indifference sets of x on g, plus the closure.

    The closure adds a grid point p outside L(x) when points weakly below x
    exist arbitrarily close to p; this is probed off the grid at distances
    h/8 and h/1024 along the axis and diagonal directions.
    """
    x = tuple(float(c) for c in x)
    fn = oracle.fn
    strict, indiff = set(), set()
    if matrix is not None and g.contains(x):
        row = matrix[g.flat(g.index_of(x))]
        if (row == 3).any():
            raise IncompleteOracle(f"{oracle.name} has incomparable pairs at {x}")
        for flat, idx in enumerate(g.indices()):
            if row[flat] == 0:
                strict.add(idx)
            elif row[flat] == 2:
                indiff.add(idx)
    else:
        for idx in g.indices():
            r = fn(x, g.point(idx))
            if r is INCOMPARABLE:
                raise IncompleteOracle(f"{x} and {g.point(idx)} are incomparable")
            if r is FIRST:
                strict.add(idx)
            elif r is INDIFFERENT:
                indiff.add(idx)
    lower = strict | indiff
    dirs = _directions(g.n)
    closure = set(lower)
    for idx in g.indices():
        if idx not in lower and _in_closure(fn, x, g.point(idx), g.h, dirs):
            closure.add(idx)
    return ContourBundle(
        anchor=x,
        lower=GridSet(g, frozenset(lower)),
        strict_lower=GridSet(g, frozenset(strict)),
        indiff=GridSet(g, frozenset(indiff)),
        closure=GridSet(g, frozenset(closure)),
    )


def is_unhappy(oracle: Oracle, a: GridSet, matrix: np.ndarray | None = None) -> AxiomVerdict:
    """Every grid point outside ``a`` must strictly beat every point inside."""
    g = a.grid
    inside = sorted(a.members)
    outside = [i for i in g.indices() if i not in a.members]
    queries = 0
    bad = None
    if matrix is not None:
        fin = np.array([g.flat(i) for i in inside], dtype=np.intp)
        for o in outside:
            row = matrix[g.flat(o)][fin]
            if (row == 3).any():
                raise IncompleteOracle(f"{oracle.name} has incomparable pairs at {g.point(o)}")
            miss = np.nonzero(row != 0)[0]
            if miss.size:
                bad = (o, inside[int(miss[0])])
                break
    else:
        fn = oracle.fn
        for o in outside:
            y = g.point(o)
            for i in inside:
                queries += 1
                r = fn(y, g.point(i))
                if r is INCOMPARABLE:
                    raise IncompleteOracle(f"{y} and {g.point(i)} are incomparable")
                if r is not FIRST:
                    bad = (o, i)
                    break
            if bad:
                break
    res = Resolution(g.spec)
    if bad is None:
        return AxiomVerdict("unhappy", Status.SATISFIED, None, res, queries)
    y, x = g.point(bad[0]), g.point(bad[1])
    w = make_witness(oracle, [("y_out", y), ("x_in", x)], [("y_out", "x_in")],
                     "a point outside the set does not strictly beat a point inside")
    return AxiomVerdict("unhappy", Status.VIOLATED, w, res, queries)


def fit_halfplane(a: GridSet) -> tuple[int, float] | None:
    """(i, alpha) when ``a`` is exactly {p : p_i <= alpha} on its grid."""
    g = a.grid
    if not a.members or a.is_full:
        return None
    for axis in range(g.n):
        top = max(i[axis] for i in a.members)
        expected = sum(1 for i in g.indices() if i[axis] <= top)
        if expected == len(a.members) and all(i[axis] <= top for i in a.members):
            return axis + 1, top * g.h
    return None


@dataclass(frozen=True)
class Candidate:
    anchor: Alternative
    members: GridSet


def candidate_unhappy_sets(oracle: Oracle, g: Grid,
                           matrix: np.ndarray | None = None) -> list[Candidate]:
    """Closed unhappy sets at resolution: closures of lower contours.

    Anchors are the strictly positive grid points in index order; duplicate
    sets keep their first anchor. Closures that fill the whole grid box are
    dropped, since they are not proper subsets at this resolution.
    """
    if matrix is None:
        matrix = relation_matrix(oracle, g)
    seen: set[frozenset[Index]] = set()
    out = []
    for idx in g.indices():
        if min(idx) == 0:
            continue
        x = g.point(idx)
        closure = contours(oracle, x, g, matrix).closure
        if closure.members in seen or closure.is_full:
            continue
        seen.add(closure.members)
        if is_unhappy(oracle, closure, matrix).satisfied:
            out.append(Candidate(x, closure))
    return out
