"""Importance extraction, attribute ordering and lexicographic classification."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .axioms import (DEFAULT_BUDGET, check_complete_transitive, check_imia,
                     check_mild_continuity, check_noncompensation, check_nraa,
                     check_strong_monotonicity, run_each_pair)
from .core import FIRST, INDIFFERENT, SECOND, Alternative, Oracle, Outcome, embed
from .errors import CycleError, IncompleteRelation, LinkFailure
from .grid import Grid, relation_matrix_for
from .verdict import AxiomVerdict, EpsSchedule, QueryCounter
from .zoo import lex_compare

LEXICOGRAPHIC = "Lexicographic"
PAIRWISE_ONLY = "PairwiseLexicographicOnly"
DOMINANT = "Dominant"
UNCLASSIFIED = "Unclassified"

VALIDATION_SAMPLE = 100_000


@dataclass(frozen=True)
class ImportanceRelation:
    """beats[i][j] is True when i >* j, False when not, None when unknown (0-based)."""

    n: int
    beats: tuple[tuple[bool | None, ...], ...]

    def get(self, i: int, j: int) -> bool | None:
        return self.beats[i - 1][j - 1]

    @classmethod
    def from_pairs(cls, n: int, pairs: Sequence[tuple[int, int]]) -> "ImportanceRelation":
        """Relation with exactly the given (i, j) meaning i >* j, 1-based."""
        beats = [[False] * n for _ in range(n)]
        for i, j in pairs:
            beats[i - 1][j - 1] = True
        return cls(n, tuple(tuple(r) for r in beats))

    def to_dict(self) -> dict:
        out = {}
        for i, j in itertools.combinations(range(1, self.n + 1), 2):
            a, b = self.get(i, j), self.get(j, i)
            if a is None or b is None:
                out[f"{i},{j}"] = "Unknown"
            elif a:
                out[f"{i},{j}"] = f"{i}>*{j}"
            elif b:
                out[f"{i},{j}"] = f"{j}>*{i}"
            else:
                out[f"{i},{j}"] = "None"
        return out


def _importance_probe(oracle: Oracle, i: int, j: int, a: float, b: float) -> Outcome:
    n = oracle.dimension
    x = embed((a, 0.0), (i, j), n)
    y = embed((0.0, b), (i, j), n)
    return oracle.compare(x, y)


def extract_importance(oracle: Oracle, g: Grid,
                       pair_ok: dict[tuple[int, int], bool] | None = None) -> ImportanceRelation:
    """Probe each pair {i, j} with (h vs max), (h vs h) and (max vs h).

    All three strict for i gives i >* j, all strict for j gives j >* i;
    anything else, or a pair failing its axioms per ``pair_ok``, is unknown.
    """
    n = oracle.dimension
    beats: list[list[bool | None]] = [[False] * n for _ in range(n)]
    mags = ((g.h, g.max), (g.h, g.h), (g.max, g.h))
    for i, j in itertools.combinations(range(1, n + 1), 2):
        if pair_ok is not None and not pair_ok.get((i, j), False):
            beats[i - 1][j - 1] = beats[j - 1][i - 1] = None
            continue
        outs = {_importance_probe(oracle, i, j, a, b) for a, b in mags}
        if outs == {FIRST}:
            beats[i - 1][j - 1] = True
        elif outs == {SECOND}:
            beats[j - 1][i - 1] = True
        else:
            beats[i - 1][j - 1] = beats[j - 1][i - 1] = None
    return ImportanceRelation(n, tuple(tuple(r) for r in beats))


@dataclass(frozen=True)
class LexOrder:
    order: tuple[int, ...]

    def compare(self, x: Sequence[float], y: Sequence[float]) -> Outcome:
        return lex_compare(self.order, x, y)

    def to_list(self) -> list[int]:
        return list(self.order)


def order_attributes(rel: ImportanceRelation) -> LexOrder:
    """Sort attributes by >*, most important first.

    The pivot is the attribute beating all others that remain; a 3-cycle is
    reported before any ordering is attempted.
    """
    n = rel.n
    for i, j in itertools.permutations(range(1, n + 1), 2):
        if rel.get(i, j) is None:
            raise IncompleteRelation(f"importance between {i} and {j} is unknown")
    for i, j, k in itertools.permutations(range(1, n + 1), 3):
        if rel.get(i, j) and rel.get(j, k) and rel.get(k, i):
            raise CycleError((i, j, k))
    remaining = list(range(1, n + 1))
    order = []
    while remaining:
        top = [i for i in remaining if all(rel.get(i, j) for j in remaining if j != i)]
        if not top:
            raise IncompleteRelation(f"no attribute among {remaining} beats all the others")
        order.append(top[0])
        remaining.remove(top[0])
    return LexOrder(tuple(order))


@dataclass(frozen=True)
class ChainWitness:
    points: tuple[Alternative, ...]
    links: tuple[Outcome, ...]
    position: int
    attribute: int
    before: tuple[int, ...]
    after: tuple[int, ...]

    def replay(self, oracle: Oracle) -> bool:
        return all(oracle.compare(a, b) is r
                   for a, b, r in zip(self.points, self.points[1:], self.links))


def chain_witness(oracle: Oracle, order: LexOrder | Sequence[int], x: Sequence[float],
                  y: Sequence[float], steps: int | None = None) -> ChainWitness:
    """Build x = z[0] > z[1] > ... > z[K] = y through the given order and check it.

    m is the first position in the order where x and y differ (x larger). The
    m-attribute level falls uniformly from x_m to y_m while step k copies the
    y-levels of the next k attributes in the order. K defaults to n - m (at
    least 1). Raises LinkFailure at the first link that is not strict.
    """
    seq = order.order if isinstance(order, LexOrder) else tuple(order)
    n = oracle.dimension
    x, y = tuple(float(c) for c in x), tuple(float(c) for c in y)
    pos = next((p for p, a in enumerate(seq, start=1) if x[a - 1] != y[a - 1]), None)
    if pos is None:
        raise ValueError("x and y are identical; there is no chain to build")
    attr = seq[pos - 1]
    if x[attr - 1] < y[attr - 1]:
        raise ValueError(f"x must exceed y on attribute {attr}, the first one where they differ")
    need = max(n - pos, 1)
    k_total = need if steps is None else int(steps)
    if k_total < need:
        raise ValueError(f"at least {need} steps are needed to reach y")
    hi, lo = x[attr - 1], y[attr - 1]
    points = [x]
    for k in range(1, k_total + 1):
        z = list(x)
        z[attr - 1] = lo if k == k_total else hi - k * (hi - lo) / k_total
        for p in range(pos + 1, min(pos + k, n) + 1):
            a = seq[p - 1]
            z[a - 1] = y[a - 1]
        points.append(tuple(z))
    links = []
    for k in range(1, len(points)):
        r = oracle.compare(points[k - 1], points[k])
        if r is not FIRST:
            raise LinkFailure(k, r, (points[k - 1], points[k]))
        links.append(r)
    return ChainWitness(tuple(points), tuple(links), pos, attr,
                        tuple(seq[: pos - 1]), tuple(seq[pos:]))


def _dominant_in_matrix(pts: Sequence[Alternative], mat: np.ndarray) -> int | None:
    arr = np.array(pts)
    for i in range(arr.shape[1]):
        col = arr[:, i]
        expect = np.where(col[:, None] > col[None, :], 0,
                          np.where(col[:, None] < col[None, :], 1, 2))
        if np.array_equal(expect, mat):
            return i + 1
    return None


def detect_dominant(oracle: Oracle, g: Grid, matrix: np.ndarray | None = None) -> int | None:
    """Attribute i whose comparison alone decides every grid pair, if any."""
    pts = list(g.points())
    if matrix is None:
        matrix = relation_matrix_for(oracle.fn, pts)
    return _dominant_in_matrix(pts, matrix)


# -- reports ---------------------------------------------------------------------------

def _lex_codes(pts: Sequence[Alternative], order: Sequence[int]) -> np.ndarray:
    arr = np.array(pts)
    m = len(pts)
    out = np.full((m, m), 2, dtype=np.int8)
    open_ = np.ones((m, m), dtype=bool)
    for a in order:
        col = arr[:, a - 1]
        gt = col[:, None] > col[None, :]
        lt = col[:, None] < col[None, :]
        out[open_ & gt] = 0
        out[open_ & lt] = 1
        open_ &= ~(gt | lt)
    return out


def _agreement(oracle: Oracle, g: Grid, order: LexOrder, matrix: np.ndarray | None,
               seed: int) -> tuple[float, int]:
    pts = list(g.points())
    if matrix is not None:
        same = _lex_codes(pts, order.order) == matrix
        return float(same.mean()), same.size
    rng = random.Random(seed)
    hits = 0
    for _ in range(VALIDATION_SAMPLE):
        x = pts[rng.randrange(len(pts))]
        y = pts[rng.randrange(len(pts))]
        hits += oracle.compare(x, y) is order.compare(x, y)
    return hits / VALIDATION_SAMPLE, VALIDATION_SAMPLE


def _family(verdicts: dict[tuple[int, int], AxiomVerdict]) -> bool:
    return all(v.satisfied for v in verdicts.values())


def _family_dict(verdicts: dict[tuple[int, int], AxiomVerdict]) -> dict:
    return {"{%d,%d}" % s: v.to_dict() for s, v in verdicts.items()}


@dataclass
class PairwiseReport:
    axiom1: dict[tuple[int, int], AxiomVerdict]
    axiom2: dict[tuple[int, int], AxiomVerdict]
    axiom3: dict[tuple[int, int], AxiomVerdict]
    axiom3_name: str
    most_important: dict[tuple[int, int], int | None]

    @property
    def pair_ok(self) -> dict[tuple[int, int], bool]:
        return {s: self.axiom1[s].satisfied and self.axiom2[s].satisfied
                and self.axiom3[s].satisfied for s in self.axiom1}

    @property
    def pairwise_lexicographic(self) -> bool:
        return all(self.pair_ok.values())

    @property
    def queries(self) -> int:
        return sum(v.queries for fam in (self.axiom1, self.axiom2, self.axiom3)
                   for v in fam.values())


def classify_pairwise_lex(oracle: Oracle, g: Grid, sched: EpsSchedule | None = None, *,
                          mode: str = "imia", seed: int = 0,
                          budget: int = DEFAULT_BUDGET) -> PairwiseReport:
    """Axioms 1-3 on every 2-attribute induced preference.

    ``mode`` "nc3a" replaces IMIA by noncompensation of the induced
    preferences. The most important attribute of each passing pair is read
    off the importance probes.
    """
    if mode not in ("imia", "nc3a"):
        raise ValueError(f"mode must be imia or nc3a, got {mode!r}")
    sched = sched or EpsSchedule(2.0, 0.5, g.h)
    a1 = run_each_pair(check_strong_monotonicity, oracle, g, seed=seed, budget=budget)
    a2 = run_each_pair(check_mild_continuity, oracle, g, sched=sched, seed=seed, budget=budget)
    if mode == "imia":
        a3 = run_each_pair(check_imia, oracle, g, seed=seed, require_monotone=False)
    else:
        a3 = run_each_pair(check_noncompensation, oracle, g, seed=seed, budget=budget)
    rep = PairwiseReport(a1, a2, a3, "axiom3" if mode == "imia" else "axiom3A", {})
    rel = extract_importance(oracle, g, rep.pair_ok)
    for i, j in a1:
        rep.most_important[(i, j)] = i if rel.get(i, j) else j if rel.get(j, i) else None
    return rep


@dataclass
class ClassificationReport:
    oracle: str
    mode: str
    grid: str
    eps_schedule: str
    seed: int
    completetrans: AxiomVerdict
    pairwise: PairwiseReport | None
    nraa: AxiomVerdict | None
    importance: ImportanceRelation | None
    order: LexOrder | None
    cls: str
    dominant: int | None = None
    agreement: float | None = None
    validation_pairs: int = 0
    queries: int = 0
    notes: list[str] = field(default_factory=list)

    @property
    def label(self) -> str:
        return f"{DOMINANT}({self.dominant})" if self.cls == DOMINANT else self.cls

    @property
    def statement(self) -> str:
        res = f"at resolution (grid {self.grid}, eps schedule {self.eps_schedule})"
        if self.cls == LEXICOGRAPHIC:
            order = ",".join(map(str, self.order.order))
            return f"consistent with lexicographic order ({order}) {res}"
        if self.cls == PAIRWISE_ONLY:
            return f"pairwise lexicographic but not lexicographic {res}"
        if self.cls == DOMINANT:
            return f"dominant preference for attribute {self.dominant} {res}"
        return f"no characterization applies {res}"

    def to_dict(self) -> dict:
        axioms = {"completetrans": self.completetrans.to_dict()}
        if self.pairwise is not None:
            axioms["axiom1"] = _family_dict(self.pairwise.axiom1)
            axioms["axiom2"] = _family_dict(self.pairwise.axiom2)
            axioms[self.pairwise.axiom3_name] = _family_dict(self.pairwise.axiom3)
        if self.nraa is not None:
            axioms["axiom4"] = self.nraa.to_dict()
        return {
            "oracle": self.oracle,
            "mode": self.mode,
            "class": self.label,
            "statement": self.statement,
            "order": self.order.to_list() if self.order else None,
            "agreement": None if self.agreement is None else round(self.agreement, 6),
            "validation_pairs": self.validation_pairs,
            "importance": self.importance.to_dict() if self.importance else None,
            "axioms": axioms,
            "resolution": {"grid": self.grid, "eps_schedule": self.eps_schedule,
                           "seed": self.seed},
            "notes": list(self.notes),
            "queries": self.queries,
        }


def classify_lexicographic(oracle: Oracle, g: Grid, sched: EpsSchedule | None = None, *,
                           mode: str = "imia", seed: int = 0,
                           budget: int = DEFAULT_BUDGET) -> ClassificationReport:
    """Full pipeline: complete/transitive, Axioms 1-3 (or 3A), NRAA, order, validation.

    A CycleError from ordering is propagated only when every axiom passed;
    then it signals an anomaly the characterization rules out.
    """
    sched = sched or EpsSchedule(2.0, 0.5, g.h)
    counter = QueryCounter(oracle)
    pts = list(g.points())
    matrix = None
    if len(pts) ** 2 <= budget:
        matrix = relation_matrix_for(counter.oracle.fn, pts)
    ct = check_complete_transitive(oracle, g, seed=seed, budget=budget, matrix=matrix)
    base = dict(oracle=oracle.name, mode=mode, grid=g.spec, eps_schedule=sched.spec, seed=seed)
    if ct.violated:
        return ClassificationReport(**base, completetrans=ct, pairwise=None, nraa=None,
                                    importance=None, order=None, cls=UNCLASSIFIED,
                                    queries=counter.count + ct.queries,
                                    notes=["not complete and transitive on the grid"])
    pw = classify_pairwise_lex(oracle, g, sched, mode=mode, seed=seed, budget=budget)
    nraa = check_nraa(oracle, g, seed=seed) if oracle.dimension >= 3 else None
    nraa_ok = nraa is None or nraa.satisfied
    queries = ct.queries + pw.queries + (nraa.queries if nraa else 0)
    rel = extract_importance(counter.oracle, g, pw.pair_ok)
    report = ClassificationReport(**base, completetrans=ct, pairwise=pw, nraa=nraa,
                                  importance=rel, order=None, cls=UNCLASSIFIED)

    if pw.pairwise_lexicographic:
        if nraa_ok:
            report.order = order_attributes(rel)
        else:
            try:
                report.order = order_attributes(rel)
            except (CycleError, IncompleteRelation) as exc:
                report.notes.append(f"no attribute order: {exc}")
        if report.order is not None:
            report.agreement, report.validation_pairs = _agreement(
                counter.oracle, g, report.order, matrix, seed)
        if nraa_ok and report.agreement == 1.0:
            report.cls = LEXICOGRAPHIC
        else:
            report.cls = PAIRWISE_ONLY
            if nraa_ok:
                report.notes.append("the reconstructed lexicographic order disagrees with the oracle")
    elif not _family(pw.axiom1):
        dom = (_dominant_in_matrix(pts, matrix) if matrix is not None
               else detect_dominant(counter.oracle, g))
        if dom is not None:
            report.cls = DOMINANT
            report.dominant = dom
            report.notes.append("strong monotonicity fails; one attribute decides every comparison")
    report.queries = queries + counter.count
    return report
