"""Discrete-choice datasets: loading and auditing respondents for lexicographic
or single-attribute (dominant) choice behavior.

CSV layout (header required)::

    respondent_id,choice_set_id,alternative_id,chosen,<attr_1>,...,<attr_n>

``chosen`` is 0 or 1 with exactly one 1 per choice set of a respondent. The
schema file lists one ``name=higher`` or ``name=lower`` line per attribute
column; ``#`` starts a comment.
"""

from __future__ import annotations

import csv
import itertools
import math
import random
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from .core import FIRST, SECOND, Alternative
from .errors import DimensionTooLarge, ParseError, SchemaMismatch
from .zoo import lex_compare

HIGHER = "HigherBetter"
LOWER = "LowerBetter"
FIXED_COLUMNS = ("respondent_id", "choice_set_id", "alternative_id", "chosen")
MAX_EXHAUSTIVE = 8

LEX_CONSISTENT = "LexConsistent"
DOMINANT = "Dominant"
INCONSISTENT = "Inconsistent"


@dataclass(frozen=True)
class AttributeSchema:
    names: tuple[str, ...]
    orientation: tuple[str, ...]

    def __post_init__(self):
        if len(self.names) != len(self.orientation):
            raise SchemaMismatch("schema names and orientations differ in length")
        bad = [o for o in self.orientation if o not in (HIGHER, LOWER)]
        if bad:
            raise SchemaMismatch(f"unknown orientation {bad[0]!r}")

    @property
    def dimension(self) -> int:
        return len(self.names)


_ORIENT_WORDS = {"higher": HIGHER, "high": HIGHER, "higherbetter": HIGHER,
                 "lower": LOWER, "low": LOWER, "lowerbetter": LOWER}


def parse_schema(text: str) -> AttributeSchema:
    names, orient = [], []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ParseError(lineno, f"expected name=higher|lower, got {raw.strip()!r}")
        name, value = (s.strip() for s in line.split("=", 1))
        word = _ORIENT_WORDS.get(value.lower())
        if not name or word is None:
            raise ParseError(lineno, f"expected name=higher|lower, got {raw.strip()!r}")
        if name in names:
            raise ParseError(lineno, f"attribute {name!r} listed twice")
        names.append(name)
        orient.append(word)
    return AttributeSchema(tuple(names), tuple(orient))


def load_schema(path: str | Path) -> AttributeSchema:
    return parse_schema(Path(path).read_text())


@dataclass(frozen=True)
class ChoiceObservation:
    choice_set: tuple[Alternative, ...]
    chosen: int
    set_id: str = ""

    def __post_init__(self):
        if len(self.choice_set) < 2:
            raise ValueError("a choice set needs at least two alternatives")
        if not 0 <= self.chosen < len(self.choice_set):
            raise ValueError(f"chosen index {self.chosen} out of range")


@dataclass(frozen=True)
class RespondentRecord:
    id: str
    observations: tuple[ChoiceObservation, ...]

    @property
    def dimension(self) -> int:
        return len(self.observations[0].choice_set[0])


def _number(text: str, lineno: int, column: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise ParseError(lineno, f"{column}: {text!r} is not a number") from None
    if not math.isfinite(v) or v < 0:
        raise ParseError(lineno, f"{column}: attribute levels must be non-negative, got {text}")
    return v


def load_choices(path: str | Path, schema: AttributeSchema) -> list[RespondentRecord]:
    """Read a choice CSV, apply orientations, and group rows by respondent."""
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = [h.strip() for h in next(reader)]
        except StopIteration:
            raise ParseError(1, "missing header") from None
        if tuple(header[:4]) != FIXED_COLUMNS:
            raise ParseError(1, f"header must start with {','.join(FIXED_COLUMNS)}")
        attrs = tuple(header[4:])
        if not attrs:
            raise ParseError(1, "no attribute columns")
        if attrs != schema.names:
            raise SchemaMismatch(
                f"data attributes {list(attrs)} do not match schema {list(schema.names)}"
            )
        rows = []
        for lineno, row in enumerate(reader, start=2):
            if not row or all(not c.strip() for c in row):
                continue
            if len(row) != len(header):
                raise ParseError(lineno, f"expected {len(header)} fields, got {len(row)}")
            rid, sid, aid, chosen = (c.strip() for c in row[:4])
            if chosen not in ("0", "1"):
                raise ParseError(lineno, f"chosen must be 0 or 1, got {chosen!r}")
            levels = [_number(c.strip(), lineno, attrs[k]) for k, c in enumerate(row[4:])]
            rows.append((lineno, rid, sid, aid, chosen == "1", levels))

    tops = [max((r[5][k] for r in rows), default=0.0) for k in range(len(attrs))]
    groups: dict[str, dict[str, list]] = {}
    for lineno, rid, sid, aid, chosen, levels in rows:
        point = tuple(tops[k] - v if schema.orientation[k] == LOWER else v
                      for k, v in enumerate(levels))
        groups.setdefault(rid, {}).setdefault(sid, []).append((lineno, aid, chosen, point))

    records = []
    for rid in sorted(groups):
        obs = []
        for sid, alts in groups[rid].items():
            picks = [k for k, a in enumerate(alts) if a[2]]
            if len(picks) != 1:
                raise ParseError(alts[0][0], f"respondent {rid}, choice set {sid}: "
                                 f"expected exactly one chosen alternative, got {len(picks)}")
            if len(alts) < 2:
                raise ParseError(alts[0][0], f"respondent {rid}, choice set {sid}: "
                                 "a choice set needs at least two alternatives")
            obs.append(ChoiceObservation(tuple(a[3] for a in alts), picks[0], sid))
        records.append(RespondentRecord(rid, tuple(obs)))
    return records


# -- audit -----------------------------------------------------------------------------

def _consistent(order: Sequence[int], obs: ChoiceObservation) -> bool:
    # a tie means an exact duplicate of the chosen profile, which is not a violation
    chosen = obs.choice_set[obs.chosen]
    return all(lex_compare(order, chosen, alt) is not SECOND
               for k, alt in enumerate(obs.choice_set) if k != obs.chosen)


def consistent_orders(record: RespondentRecord) -> list[tuple[int, ...]]:
    """Every attribute order under which each choice is the lexicographic maximum.

    An alternative tied with the chosen one under the order is an exact
    duplicate, so the observation is non-discriminating rather than violated.
    """
    n = record.dimension
    if n > MAX_EXHAUSTIVE:
        raise DimensionTooLarge(f"{n} attributes exceed the exhaustive limit of {MAX_EXHAUSTIVE}")
    return [sigma for sigma in itertools.permutations(range(1, n + 1))
            if all(_consistent(sigma, o) for o in record.observations)]


def detect_dominant_behavior(record: RespondentRecord) -> int | None:
    """Attribute that the chosen alternative strictly maximizes in every choice set."""
    n = record.dimension
    for i in range(n):
        if all(all(o.choice_set[o.chosen][i] > alt[i]
                   for k, alt in enumerate(o.choice_set) if k != o.chosen)
               for o in record.observations):
            return i + 1
    return None


def _weak_dominant(record: RespondentRecord) -> int | None:
    n = record.dimension
    for i in range(n):
        if all(o.choice_set[o.chosen][i] == max(a[i] for a in o.choice_set)
               for o in record.observations):
            return i + 1
    return None


@dataclass(frozen=True)
class RespondentVerdict:
    id: str
    label: str
    orders: tuple[tuple[int, ...], ...] = ()
    dominant: int | None = None
    ambiguous: bool = False

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "class": self.label if self.label != DOMINANT else f"{DOMINANT}({self.dominant})",
            "orders": [list(o) for o in self.orders],
            "dominant": self.dominant,
            "ambiguous": self.ambiguous,
        }


def lex_consistency(record: RespondentRecord) -> RespondentVerdict:
    """LexConsistent with all surviving orders, else Dominant(i), else Inconsistent.

    A LexConsistent respondent whose choices also strictly maximize a single
    attribute is flagged ambiguous: such data cannot separate a dominant from
    a lexicographic preference. Dominant(i) without a surviving order means
    the chosen alternative always attains the maximum of attribute i but ties
    on i are not broken lexicographically.
    """
    orders = consistent_orders(record)
    if orders:
        dom = detect_dominant_behavior(record)
        return RespondentVerdict(record.id, LEX_CONSISTENT, tuple(orders), dom, dom is not None)
    dom = _weak_dominant(record)
    if dom is not None:
        return RespondentVerdict(record.id, DOMINANT, (), dom)
    return RespondentVerdict(record.id, INCONSISTENT)


@dataclass(frozen=True)
class AuditReport:
    respondents: tuple[RespondentVerdict, ...]
    attributes: tuple[str, ...] = ()

    @property
    def counts(self) -> dict[str, int]:
        labels = [r.label for r in self.respondents]
        return {
            "respondents": len(labels),
            "lex_consistent": labels.count(LEX_CONSISTENT),
            "dominant": labels.count(DOMINANT),
            "inconsistent": labels.count(INCONSISTENT),
            "ambiguous": sum(r.ambiguous for r in self.respondents),
        }

    def to_dict(self) -> dict:
        c = self.counts
        frac = c["lex_consistent"] / c["respondents"] if c["respondents"] else 0.0
        return {
            "attributes": list(self.attributes),
            "respondents": [r.to_dict() for r in self.respondents],
            "summary": {**c, "fraction_lex_consistent": round(frac, 6)},
        }


def audit(records: Sequence[RespondentRecord],
          schema: AttributeSchema | None = None) -> AuditReport:
    ordered = sorted(records, key=lambda r: r.id)
    return AuditReport(tuple(lex_consistency(r) for r in ordered),
                       schema.names if schema else ())


def simulate_lexicographic(order: Sequence[int], respondents: int, observations: int, *,
                           set_size: int = 3, levels: int = 5, seed: int = 0,
                           prefix: str = "r") -> list[RespondentRecord]:
    """Respondents choosing the lexicographic maximum under ``order``.

    Alternatives are drawn uniformly from {0..levels-1}^n; duplicate profiles
    inside one choice set are redrawn.
    """
    rng = random.Random(seed)
    n = len(order)
    out = []
    for r in range(respondents):
        obs = []
        for s in range(observations):
            alts: list[Alternative] = []
            while len(alts) < set_size:
                a = tuple(float(rng.randrange(levels)) for _ in range(n))
                if a not in alts:
                    alts.append(a)
            best = 0
            for k in range(1, set_size):
                if lex_compare(order, alts[k], alts[best]) is FIRST:
                    best = k
            obs.append(ChoiceObservation(tuple(alts), best, str(s + 1)))
        out.append(RespondentRecord(f"{prefix}{r + 1:03d}", tuple(obs)))
    return out


def write_choices(path: str | Path, records: Sequence[RespondentRecord],
                  names: Sequence[str]) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(list(FIXED_COLUMNS) + list(names))
        for rec in records:
            for o in rec.observations:
                for k, alt in enumerate(o.choice_set):
                    w.writerow([rec.id, o.set_id, k + 1, int(k == o.chosen)]
                               + [f"{v:g}" for v in alt])
