"""Alternatives, comparison oracles and the attribute-set helpers built on them.

Attributes are numbered from 1 in every public interface; tuples of floats
are indexed from 0 internally.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping, Sequence

from .errors import DimensionError, SubsetError

Alternative = tuple[float, ...]


class Outcome(str, enum.Enum):
    FIRST = "FirstStrict"
    SECOND = "SecondStrict"
    INDIFFERENT = "Indifferent"
    INCOMPARABLE = "Incomparable"

    def flipped(self) -> "Outcome":
        if self is Outcome.FIRST:
            return Outcome.SECOND
        if self is Outcome.SECOND:
            return Outcome.FIRST
        return self

    @property
    def weakly_first(self) -> bool:
        """True when the first argument is weakly preferred (x ≿ y)."""
        return self is Outcome.FIRST or self is Outcome.INDIFFERENT


FIRST = Outcome.FIRST
SECOND = Outcome.SECOND
INDIFFERENT = Outcome.INDIFFERENT
INCOMPARABLE = Outcome.INCOMPARABLE

Comparator = Callable[[Alternative, Alternative], Outcome]


def alternative(coords: Iterable[float]) -> Alternative:
    """Normalize ``coords`` to a tuple of floats, rejecting negative levels."""
    point = tuple(float(c) for c in coords)
    if not point:
        raise DimensionError("an alternative needs at least one attribute")
    for c in point:
        if not c >= 0.0:
            raise ValueError(f"attribute levels must be non-negative, got {c}")
    return point


@dataclass(frozen=True)
class Oracle:
    """A named deterministic comparator on pairs of alternatives.

    ``probes`` maps an axiom identifier to documented instances that the
    checkers try before their exhaustive scan (see :mod:`lexpref.axioms`).
    """

    name: str
    dimension: int
    fn: Comparator = field(repr=False, compare=False)
    declared_complete: bool = True
    declared_transitive: bool = True
    probes: Mapping[str, tuple[dict, ...]] = field(default_factory=dict, repr=False, compare=False)

    def compare(self, x: Sequence[float], y: Sequence[float]) -> Outcome:
        if len(x) != self.dimension or len(y) != self.dimension:
            raise DimensionError(
                f"{self.name} compares {self.dimension}-attribute alternatives, "
                f"got lengths {len(x)} and {len(y)}"
            )
        return self.fn(tuple(x), tuple(y))

    __call__ = compare


def compare(oracle: Oracle, x: Sequence[float], y: Sequence[float]) -> Outcome:
    return oracle.compare(x, y)


def _check_lengths(x: Sequence[float], y: Sequence[float]) -> None:
    if len(x) != len(y):
        raise DimensionError(f"length mismatch: {len(x)} vs {len(y)}")


def totally_different(x: Sequence[float], y: Sequence[float]) -> bool:
    """True iff ``x`` and ``y`` differ in every attribute."""
    _check_lengths(x, y)
    return all(a != b for a, b in zip(x, y))


def strict_sets(
    x: Sequence[float], y: Sequence[float]
) -> tuple[frozenset[int], frozenset[int], frozenset[int]]:
    """Split the attributes into (x better, y better, equal), 1-based."""
    _check_lengths(x, y)
    better_x, better_y, equal = set(), set(), set()
    for i, (a, b) in enumerate(zip(x, y), start=1):
        if a > b:
            better_x.add(i)
        elif b > a:
            better_y.add(i)
        else:
            equal.add(i)
    return frozenset(better_x), frozenset(better_y), frozenset(equal)


def sign_pattern(x: Sequence[float], y: Sequence[float]) -> tuple[int, ...]:
    """Per-attribute sign of x - y; equivalent to the pair (M(x,y), M(y,x))."""
    return tuple((a > b) - (a < b) for a, b in zip(x, y))


def attribute_subset(members: Iterable[int], n: int) -> tuple[int, ...]:
    """Validate a non-empty subset of {1..n} and return it sorted."""
    items = list(members)
    subset = tuple(sorted(set(items)))
    if not subset:
        raise SubsetError("attribute subset must be non-empty")
    if len(subset) != len(items):
        raise SubsetError(f"duplicate attributes in {items}")
    if subset[0] < 1 or subset[-1] > n:
        raise SubsetError(f"attributes {subset} not within 1..{n}")
    return subset


def embed(point: Sequence[float], subset: Sequence[int], n: int,
          fill: Sequence[float] | None = None) -> Alternative:
    """Place ``point`` at the 1-based ``subset`` coordinates of an n-vector.

    The remaining coordinates take ``fill`` in increasing attribute order,
    or zero when no fill is given.
    """
    out = [0.0] * n
    for i, v in zip(subset, point):
        out[i - 1] = v
    if fill is not None:
        rest = [i for i in range(n) if i + 1 not in subset]
        if len(fill) != len(rest):
            raise DimensionError(f"fill needs {len(rest)} levels, got {len(fill)}")
        for i, v in zip(rest, fill):
            out[i] = v
    return tuple(out)


def _subset_label(subset: Sequence[int]) -> str:
    return "{" + ",".join(str(i) for i in subset) + "}"


def induce(oracle: Oracle, subset: Iterable[int]) -> Oracle:
    """The induced preference on the attributes in ``subset``, others held at zero."""
    s = attribute_subset(subset, oracle.dimension)
    n = oracle.dimension
    if len(s) == n:
        return oracle
    positions = [i - 1 for i in s]
    parent = oracle.fn
    zeros = [0.0] * n

    def fn(x: Alternative, y: Alternative) -> Outcome:
        a = zeros[:]
        b = zeros[:]
        for p, u, v in zip(positions, x, y):
            a[p] = u
            b[p] = v
        return parent(tuple(a), tuple(b))

    probes = {}
    for axiom, instances in oracle.probes.items():
        kept = tuple(
            {k: v for k, v in inst.items() if k != "subset"}
            for inst in instances
            if tuple(inst.get("subset", ())) == s
        )
        if kept:
            probes[axiom] = kept
    return Oracle(
        name=f"{oracle.name}|{_subset_label(s)}",
        dimension=len(s),
        fn=fn,
        declared_complete=oracle.declared_complete,
        declared_transitive=oracle.declared_transitive,
        probes=probes,
    )
