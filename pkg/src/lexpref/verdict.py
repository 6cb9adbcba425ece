"""Verdicts, witnesses and the epsilon schedule shared by all checkers."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Sequence

from .core import Alternative, Oracle, Outcome
from .errors import SpecError


class Status(str, enum.Enum):
    SATISFIED = "SatisfiedAtResolution"
    VIOLATED = "Violated"


@dataclass(frozen=True)
class Comparison:
    first: str
    second: str
    outcome: Outcome


@dataclass(frozen=True)
class Witness:
    """Named points plus the recorded comparisons between them.

    ``subset`` is set when the points live on an induced preference; replay
    then goes through the induced oracle.
    """

    points: tuple[tuple[str, Alternative], ...]
    comparisons: tuple[Comparison, ...]
    note: str
    subset: tuple[int, ...] | None = None

    def point(self, name: str) -> Alternative:
        for key, p in self.points:
            if key == name:
                return p
        raise KeyError(name)

    def replay(self, oracle: Oracle) -> bool:
        """Re-run every recorded comparison; True iff all outcomes reproduce."""
        from .core import induce

        target = induce(oracle, self.subset) if self.subset else oracle
        return all(
            target.compare(self.point(c.first), self.point(c.second)) is c.outcome
            for c in self.comparisons
        )

    def to_dict(self) -> dict:
        return {
            "points": [{"name": k, "point": list(p)} for k, p in self.points],
            "comparisons": [
                {"pair": [c.first, c.second], "outcome": c.outcome.value}
                for c in self.comparisons
            ],
            "note": self.note,
            "subset": list(self.subset) if self.subset else None,
        }


def make_witness(oracle: Oracle, points: Sequence[tuple[str, Alternative]],
                 pairs: Sequence[tuple[str, str]], note: str,
                 subset: tuple[int, ...] | None = None) -> Witness:
    """Build a witness by evaluating ``pairs`` against ``oracle`` now."""
    named = dict(points)
    comps = tuple(Comparison(a, b, oracle.compare(named[a], named[b])) for a, b in pairs)
    pts = tuple((k, tuple(float(c) for c in p)) for k, p in points)
    return Witness(pts, comps, note, subset)


@dataclass(frozen=True)
class EpsSchedule:
    """Radii eps0, eps0*factor, ... down to and including ``floor``."""

    eps0: float
    factor: float
    floor: float

    def __post_init__(self):
        if not (self.eps0 > 0 and self.floor > 0 and 0 < self.factor < 1):
            raise SpecError(f"bad epsilon schedule {self.spec}")
        if self.eps0 < self.floor:
            raise SpecError(f"schedule starts below its floor: {self.spec}")

    @property
    def spec(self) -> str:
        return f"{self.eps0:g}:{self.factor:g}:{self.floor:g}"

    def radii(self) -> list[float]:
        out = []
        eps = self.eps0
        while eps > self.floor:
            out.append(eps)
            eps *= self.factor
        out.append(self.floor)
        return out

    @classmethod
    def parse(cls, text: str, h: float | None = None) -> "EpsSchedule":
        parts = text.split(":")
        if len(parts) != 3:
            raise SpecError(f"epsilon schedule must be eps0:factor:floor, got {text!r}")
        try:
            eps0, factor = float(parts[0]), float(parts[1])
            if parts[2] == "h":
                if h is None:
                    raise SpecError("floor 'h' needs a grid step")
                floor = h
            else:
                floor = float(parts[2])
        except ValueError as exc:
            raise SpecError(f"bad epsilon schedule {text!r}") from exc
        return cls(eps0, factor, floor)


@dataclass(frozen=True)
class Resolution:
    grid: str
    eps_schedule: str | None = None
    seed: int | None = None
    coverage: float = 1.0

    def to_dict(self) -> dict:
        return {
            "grid": self.grid,
            "eps_schedule": self.eps_schedule,
            "seed": self.seed,
            "coverage": round(self.coverage, 6),
        }


@dataclass(frozen=True)
class AxiomVerdict:
    axiom: str
    status: Status
    witness: Witness | None
    resolution: Resolution
    queries: int = 0
    details: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if (self.status is Status.VIOLATED) != (self.witness is not None):
            raise ValueError("a verdict is Violated exactly when it carries a witness")

    @property
    def satisfied(self) -> bool:
        return self.status is Status.SATISFIED

    @property
    def violated(self) -> bool:
        return self.status is Status.VIOLATED

    def to_dict(self) -> dict:
        return {
            "axiom": self.axiom,
            "status": self.status.value,
            "witness": self.witness.to_dict() if self.witness else None,
            "resolution": self.resolution.to_dict(),
            "queries": self.queries,
        }


class QueryCounter:
    """Wraps an oracle so that every comparison is counted."""

    def __init__(self, oracle: Oracle):
        self.count = 0
        self._fn = oracle.fn
        self.oracle = Oracle(oracle.name, oracle.dimension, self._counted,
                             oracle.declared_complete, oracle.declared_transitive,
                             oracle.probes)

    def _counted(self, x, y):
        self.count += 1
        return self._fn(x, y)
