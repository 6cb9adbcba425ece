"""Axiom checkers with explicit witnesses.

Every checker quantifies over a finite grid and returns an
:class:`~lexpref.verdict.AxiomVerdict`. Instances attached to an oracle as
probes (or passed via ``probes=``) are tried before the exhaustive scan, so a
documented counterexample is reported when it applies; otherwise the witness
is the first one in grid-index order.

Quantifier budgets: a scan whose query count would exceed ``budget`` is run on
a seeded random sample and the verdict reports the covered fraction.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import replace
from typing import Callable, Sequence

import numpy as np

from .core import (FIRST, INCOMPARABLE, INDIFFERENT, SECOND, Alternative, Oracle,
                   embed, induce, totally_different)
from .errors import DimensionError, MonotonicityPrereqFailed
from .grid import Grid, candidate_unhappy_sets, contours, is_unhappy, relation_matrix_for
from .verdict import (AxiomVerdict, EpsSchedule, QueryCounter, Resolution, Status,
                      Witness, make_witness)

DEFAULT_BUDGET = 10**7

AXIOMS = ("monotone", "mildcont", "imia", "noncomp2", "noncompfull", "nraa",
          "independence", "completetrans")


def _probes(oracle: Oracle, axiom: str, probes) -> tuple[dict, ...]:
    if probes is not None:
        return tuple(probes)
    return tuple(oracle.probes.get(axiom, ()))


def _on_grid(g: Grid, *points: Sequence[float]) -> bool:
    return all(len(p) == g.n and g.contains(p) for p in points)


def _verdict(axiom: str, witness: Witness | None, res: Resolution, counter: QueryCounter,
             **details) -> AxiomVerdict:
    status = Status.VIOLATED if witness is not None else Status.SATISFIED
    return AxiomVerdict(axiom, status, witness, res, counter.count, details)


def _sample_points(g: Grid, budget: int, per_pair: int, seed: int):
    """All grid points, or a seeded subset small enough for ``budget``."""
    pts = list(g.points())
    if len(pts) ** 2 * per_pair <= budget:
        return pts, 1.0
    k = max(2, int(math.isqrt(budget // per_pair)))
    rng = random.Random(seed)
    chosen = sorted(rng.sample(range(len(pts)), k))
    return [pts[i] for i in chosen], k / len(pts)


# -- completeness and transitivity ------------------------------------------------

def check_complete_transitive(oracle: Oracle, g: Grid, *, seed: int = 0,
                              budget: int = DEFAULT_BUDGET,
                              matrix: np.ndarray | None = None) -> AxiomVerdict:
    """No incomparable grid pair and no triple x >= y >= z without x >= z.

    ``matrix`` may carry a precomputed relation matrix of the whole grid.
    """
    counter = QueryCounter(oracle)
    if matrix is not None:
        pts, frac = list(g.points()), 1.0
        mat = matrix
    else:
        pts, frac = _sample_points(g, budget, 1, seed)
        mat = relation_matrix_for(counter.oracle.fn, pts)
    res = Resolution(g.spec, None, seed, frac ** 2 if frac < 1 else 1.0)
    o = counter.oracle

    inc = np.argwhere(mat == 3)
    if inc.size:
        i, j = (int(v) for v in inc[0])
        w = make_witness(o, [("x", pts[i]), ("y", pts[j])], [("x", "y")],
                         "completeness fails: the pair is incomparable")
        return _verdict("completetrans", w, res, counter)

    weak = (mat == 0) | (mat == 2)
    wf = weak.astype(np.float32)
    # paths of length two that are not direct weak preferences
    reach = (wf @ wf) > 0
    bad = reach & ~weak
    if bad.any():
        rows = np.nonzero(bad.any(axis=1))[0]
        i = int(rows[0])
        for j in np.nonzero(weak[i])[0]:
            ks = np.nonzero(weak[j] & ~weak[i])[0]
            if ks.size:
                j, k = int(j), int(ks[0])
                break
        w = make_witness(o, [("x", pts[i]), ("y", pts[j]), ("z", pts[k])],
                         [("x", "y"), ("y", "z"), ("x", "z")],
                         "transitivity fails: x >= y and y >= z but not x >= z")
        return _verdict("completetrans", w, res, counter)
    return _verdict("completetrans", None, res, counter)


# -- strong monotonicity -----------------------------------------------------------

def check_strong_monotonicity(oracle: Oracle, g: Grid, *, seed: int = 0,
                              budget: int = DEFAULT_BUDGET) -> AxiomVerdict:
    """x >= y with x != y must give x strictly preferred, on every grid pair."""
    counter = QueryCounter(oracle)
    fn = counter.oracle.fn
    res = Resolution(g.spec, None, seed)
    for idx in g.indices():
        x = g.point(idx)
        for jdx in itertools.product(*(range(i + 1) for i in idx)):
            if jdx == idx:
                continue
            y = g.point(jdx)
            if fn(x, y) is not FIRST:
                w = make_witness(counter.oracle, [("x", x), ("y", y)], [("x", "y")],
                                 "x dominates y coordinatewise but is not strictly preferred")
                return _verdict("monotone", w, res, counter)
    return _verdict("monotone", None, res, counter)


# -- mild continuity --------------------------------------------------------------

def perturbations(p: Alternative, magnitude: float) -> list[Alternative]:
    """p itself, axis moves and diagonal corner moves of the given length."""
    n = len(p)
    out = [p]
    for i in range(n):
        for s in (1.0, -1.0):
            q = list(p)
            q[i] += s * magnitude
            out.append(tuple(q))
    step = magnitude / math.sqrt(n)
    if n > 1:
        for signs in itertools.product((1.0, -1.0), repeat=n):
            out.append(tuple(c + s * step for c, s in zip(p, signs)))
    return [q for q in out if min(q) >= 0.0]


def _reversal(fn, x: Alternative, y: Alternative, eps: float):
    """First perturbed pair within eps/32 that is not strictly ordered, or None."""
    m = eps / 32
    py = perturbations(y, m)
    for a in perturbations(x, m):
        for b in py:
            if fn(a, b) is not FIRST:
                return a, b
    return None


def _fails_everywhere(fn, x, y, radii: list[float]):
    """Reversing pair at the floor radius if every radius fails, else None."""
    floor_hit = _reversal(fn, x, y, radii[-1])
    if floor_hit is None:
        return None
    for eps in radii[:-1]:
        if _reversal(fn, x, y, eps) is None:
            return None
    return floor_hit


def _mildcont_witness(o: Oracle, x, y, hit, eps_floor: float) -> Witness:
    xt, yt = hit
    return make_witness(
        o, [("x", x), ("y", y), ("x_pert", xt), ("y_pert", yt)],
        [("x", "y"), ("x_pert", "y_pert")],
        f"x > y are totally different, yet perturbations within every scheduled "
        f"radius (floor {eps_floor:g}) break the strict preference",
    )


def check_mild_continuity(oracle: Oracle, g: Grid, sched: EpsSchedule | None = None, *,
                          seed: int = 0, budget: int = DEFAULT_BUDGET,
                          probes=None) -> AxiomVerdict:
    """Strict preference between totally different points survives small moves.

    A pair is accepted when some radius of the schedule (the floor first)
    keeps every perturbed pair strictly ordered; the check is Violated only
    when a pair fails at every scheduled radius.
    """
    sched = sched or EpsSchedule(2.0, 0.5, g.h)
    radii = sched.radii()
    counter = QueryCounter(oracle)
    o = counter.oracle
    fn = o.fn

    for probe in _probes(oracle, "mildcont", probes):
        x, y = tuple(probe["x"]), tuple(probe["y"])
        if not _on_grid(g, x, y) or not totally_different(x, y) or fn(x, y) is not FIRST:
            continue
        hit = _fails_everywhere(fn, x, y, radii)
        if hit is not None:
            res = Resolution(g.spec, sched.spec, seed)
            return _verdict("mildcont", _mildcont_witness(o, x, y, hit, radii[-1]), res, counter)

    pts = list(g.points())
    mat = relation_matrix_for(fn, pts)
    pairs = [(i, j) for i, j in zip(*np.nonzero(mat == 0))
             if totally_different(pts[i], pts[j])]
    per_pair = len(perturbations(pts[-1], 1.0)) ** 2
    coverage = 1.0
    if len(pairs) * per_pair > budget:
        k = max(1, budget // per_pair)
        rng = random.Random(seed)
        chosen = sorted(rng.sample(range(len(pairs)), k))
        coverage = k / len(pairs)
        pairs = [pairs[c] for c in chosen]
    res = Resolution(g.spec, sched.spec, seed, coverage)
    for i, j in pairs:
        x, y = pts[i], pts[j]
        hit = _fails_everywhere(fn, x, y, radii)
        if hit is not None:
            return _verdict("mildcont", _mildcont_witness(o, x, y, hit, radii[-1]), res, counter)
    return _verdict("mildcont", None, res, counter)


# -- IMIA ----------------------------------------------------------------------------

def _between(levels: Sequence[float], lo: float, hi: float) -> list[float]:
    return [v for v in levels if lo < v < hi]


def _imia_failure(members, levels, x: Alternative, y: Alternative):
    """Clause label and the missing improved points, or None when IMIA holds.

    Returns None as well when the open interval holds no grid level.
    """
    if y[0] > x[0] and y[1] > x[1]:
        xs, ys = _between(levels, x[0], y[0]), _between(levels, x[1], y[1])
        if not xs or not ys:
            return None
        cands = [(a, b) for a in xs for b in ys]
        if any(c in members for c in cands):
            return None
        return "(i)", cands
    if y[1] > x[1] and x[0] > y[0]:
        cands = [(x[0], t) for t in _between(levels, x[1], y[1])]
        if not cands or any(c in members for c in cands):
            return None
        return "(ii)", cands
    if y[0] > x[0] and x[1] > y[1]:
        cands = [(t, x[1]) for t in _between(levels, x[0], y[0])]
        if not cands or any(c in members for c in cands):
            return None
        return "(iii)", cands
    return None


def _imia_witness(o: Oracle, anchor, x, y, clause, missing) -> Witness:
    points = [("anchor", anchor), ("x", x), ("y", y)]
    pairs = [("anchor", "x"), ("anchor", "y")]
    for k, p in enumerate(missing):
        name = f"x_improved{k + 1}" if len(missing) > 1 else "x_improved"
        points.append((name, p))
        pairs.append(("anchor", name))
    return make_witness(
        o, points, pairs,
        f"IMIA clause {clause}: x and y lie in the closed lower contour set of the "
        f"anchor but no marginal improvement of x strictly between them does",
    )


def check_imia(oracle2d: Oracle, g: Grid, *, seed: int = 0, require_monotone: bool = True,
               probes=None) -> AxiomVerdict:
    """Every closed unhappy set (closed lower contour) includes marginal improvements.

    With ``require_monotone`` the oracle must first pass strong monotonicity,
    since the axiom is only stated for monotone preferences.
    """
    if oracle2d.dimension != 2 or g.n != 2:
        raise DimensionError("IMIA is checked on two-attribute preferences and 2D grids")
    if require_monotone:
        mono = check_strong_monotonicity(oracle2d, g, seed=seed)
        if mono.violated:
            raise MonotonicityPrereqFailed(
                f"{oracle2d.name} is not strongly monotone on {g.spec}; IMIA is undefined"
            )
    counter = QueryCounter(oracle2d)
    o = counter.oracle
    res = Resolution(g.spec, None, seed)
    levels = g.levels
    pts = list(g.points())
    mat = relation_matrix_for(o.fn, pts)

    for probe in _probes(oracle2d, "imia", probes):
        anchor, x, y = (tuple(probe[k]) for k in ("anchor", "x", "y"))
        if not _on_grid(g, anchor, x, y):
            continue
        closure = contours(o, anchor, g, mat).closure
        if closure.is_full or x not in closure or y not in closure:
            continue
        if not is_unhappy(o, closure, mat).satisfied:
            continue
        members = set(closure.points())
        fail = _imia_failure(members, levels, x, y)
        if fail:
            return _verdict("imia", _imia_witness(o, anchor, x, y, *fail), res, counter)

    for cand in candidate_unhappy_sets(o, g, mat):
        inside = cand.members.points()
        members = set(inside)
        for x in inside:
            for y in inside:
                if not totally_different(x, y):
                    continue
                fail = _imia_failure(members, levels, x, y)
                if fail:
                    w = _imia_witness(o, cand.anchor, x, y, *fail)
                    return _verdict("imia", w, res, counter)
    return _verdict("imia", None, res, counter)


# -- noncompensation ----------------------------------------------------------------

def _noncomp_scan(axiom: str, oracle: Oracle, g: Grid, seed: int, budget: int,
                  probes) -> AxiomVerdict:
    counter = QueryCounter(oracle)
    o = counter.oracle
    fn = o.fn
    note = ("x,y and z,w have the same sign pattern of coordinate differences, "
            "but the strict preferences differ")
    for probe in _probes(oracle, axiom, probes):
        x, y, z, w = (tuple(probe[k]) for k in "xyzw")
        if not _on_grid(g, x, y, z, w):
            continue
        same = [(a > b) - (a < b) for a, b in zip(x, y)] == [(a > b) - (a < b) for a, b in zip(z, w)]
        if not same:
            continue
        r1, r2 = fn(x, y), fn(z, w)
        if (r1 is FIRST) != (r2 is FIRST) or (r1 is SECOND) != (r2 is SECOND):
            wit = make_witness(o, [("x", x), ("y", y), ("z", z), ("w", w)],
                               [("x", "y"), ("z", "w")], note)
            return _verdict(axiom, wit, Resolution(g.spec, None, seed), counter)

    pts, frac = _sample_points(g, budget, 1, seed)
    res = Resolution(g.spec, None, seed, frac ** 2 if frac < 1 else 1.0)
    mat = relation_matrix_for(fn, pts)
    arr = np.array(pts)
    sign = np.sign(arr[:, None, :] - arr[None, :, :]).astype(np.int64) + 1
    code = np.zeros(sign.shape[:2], dtype=np.int64)
    for k in range(g.n):
        code = code * 3 + sign[:, :, k]
    bits = ((mat == 0).astype(np.int8) * 2 + (mat == 1).astype(np.int8)).ravel()
    flat = code.ravel()
    _, first, inverse = np.unique(flat, return_index=True, return_inverse=True)
    rep = first[inverse]
    conflict = np.nonzero(bits != bits[rep])[0]
    if conflict.size:
        c = int(conflict[0])
        r = int(rep[c])
        m = len(pts)
        x, y = pts[r // m], pts[r % m]
        z, w = pts[c // m], pts[c % m]
        wit = make_witness(o, [("x", x), ("y", y), ("z", z), ("w", w)],
                           [("x", "y"), ("z", "w")], note)
        return _verdict(axiom, wit, res, counter)
    return _verdict(axiom, None, res, counter)


def check_noncompensation(oracle2d: Oracle, g: Grid, *, seed: int = 0,
                          budget: int = DEFAULT_BUDGET, probes=None) -> AxiomVerdict:
    """Fishburn noncompensation for a two-attribute preference."""
    if oracle2d.dimension != 2 or g.n != 2:
        raise DimensionError("noncomp2 is checked on two-attribute preferences and 2D grids")
    return _noncomp_scan("noncomp2", oracle2d, g, seed, budget, probes)


def check_noncompensation_full(oracle: Oracle, g: Grid, *, seed: int = 0,
                               budget: int = DEFAULT_BUDGET, probes=None) -> AxiomVerdict:
    """Fishburn noncompensation on the full attribute space."""
    if oracle.dimension != g.n:
        raise DimensionError(f"grid {g.spec} does not match dimension {oracle.dimension}")
    return _noncomp_scan("noncompfull", oracle, g, seed, budget, probes)


# -- NRAA ------------------------------------------------------------------------------

def _nraa_witness(o: Oracle, s, x, y, fill, n) -> Witness:
    x0, y0 = embed(x, s, n), embed(y, s, n)
    xz, yz = embed(x, s, n, fill), embed(y, s, n, fill)
    return make_witness(
        o, [("x_S0", x0), ("y_S0", y0), ("y_Sz", yz), ("x_Sz", xz)],
        [("x_S0", "y_S0"), ("x_Sz", "y_Sz")],
        f"strict preference on attributes {list(s)} with the rest at zero is not "
        f"kept after adding the same levels {list(fill)} elsewhere",
    )


def check_nraa(oracle: Oracle, g: Grid, *, seed: int = 0, probes=None) -> AxiomVerdict:
    """Nonreversibility under additional attributes, over every 2-subset."""
    n = oracle.dimension
    if n < 3:
        raise DimensionError("NRAA needs at least three attributes")
    counter = QueryCounter(oracle)
    o = counter.oracle
    fn = o.fn
    res = Resolution(g.spec, None, seed)
    for probe in _probes(oracle, "nraa", probes):
        s, x, y, fill = (tuple(probe[k]) for k in ("subset", "x", "y", "fill"))
        if len(fill) != n - 2 or not all(v in g.levels for v in x + y + fill):
            continue
        if fn(embed(x, s, n), embed(y, s, n)) is FIRST and \
                fn(embed(x, s, n, fill), embed(y, s, n, fill)) is not FIRST:
            return _verdict("nraa", _nraa_witness(o, s, x, y, fill, n), res, counter)

    levels = g.levels
    plane = list(itertools.product(levels, repeat=2))
    fills = list(itertools.product(levels, repeat=n - 2))
    for s in itertools.combinations(range(1, n + 1), 2):
        for x in plane:
            x0 = embed(x, s, n)
            for y in plane:
                if fn(x0, embed(y, s, n)) is not FIRST:
                    continue
                for fill in fills:
                    if fn(embed(x, s, n, fill), embed(y, s, n, fill)) is not FIRST:
                        return _verdict("nraa", _nraa_witness(o, s, x, y, fill, n), res, counter)
    return _verdict("nraa", None, res, counter)


# -- independence ---------------------------------------------------------------------

def _splice(i: int, v: float, fill: Sequence[float]) -> Alternative:
    rest = list(fill)
    return tuple(rest[: i - 1] + [v] + rest[i - 1:])


def _independence_witness(o: Oracle, i, xi, yi, fill, alt) -> Witness:
    return make_witness(
        o, [("x_z", _splice(i, xi, fill)), ("y_z", _splice(i, yi, fill)),
            ("x_zalt", _splice(i, xi, alt)), ("y_zalt", _splice(i, yi, alt))],
        [("x_z", "y_z"), ("x_zalt", "y_zalt")],
        f"the strict preference between levels {xi:g} and {yi:g} of attribute {i} "
        f"depends on the levels of the other attributes",
    )


def check_independence(oracle: Oracle, g: Grid, *, seed: int = 0, probes=None) -> AxiomVerdict:
    """Strict preference on one attribute must not depend on the common rest."""
    n = oracle.dimension
    if n < 2:
        raise DimensionError("independence needs at least two attributes")
    counter = QueryCounter(oracle)
    o = counter.oracle
    fn = o.fn
    res = Resolution(g.spec, None, seed)
    for probe in _probes(oracle, "independence", probes):
        i, xi, yi = int(probe["attr"]), float(probe["xi"]), float(probe["yi"])
        fill, alt = tuple(probe["fill"]), tuple(probe["fill_alt"])
        if not all(v in g.levels for v in (xi, yi) + fill + alt):
            continue
        a = fn(_splice(i, xi, fill), _splice(i, yi, fill)) is FIRST
        b = fn(_splice(i, xi, alt), _splice(i, yi, alt)) is FIRST
        if a != b:
            return _verdict("independence", _independence_witness(o, i, xi, yi, fill, alt),
                            res, counter)

    levels = g.levels
    fills = list(itertools.product(levels, repeat=n - 1))
    for i in range(1, n + 1):
        for xi in levels:
            for yi in levels:
                first_fill, first_bit = None, None
                for fill in fills:
                    bit = fn(_splice(i, xi, fill), _splice(i, yi, fill)) is FIRST
                    if first_fill is None:
                        first_fill, first_bit = fill, bit
                    elif bit != first_bit:
                        w = _independence_witness(o, i, xi, yi, first_fill, fill)
                        return _verdict("independence", w, res, counter)
    return _verdict("independence", None, res, counter)


# -- families over 2-subsets ------------------------------------------------------------

def run_pairwise(check: Callable[..., AxiomVerdict], oracle: Oracle, g: Grid,
                 **kwargs) -> AxiomVerdict:
    """Run a two-attribute check on every 2-subset induced preference.

    The result is Violated at the first failing subset (in the order of
    ``itertools.combinations``) and its witness records that subset.
    """
    n = oracle.dimension
    plane = Grid(2, g.max, g.h)
    if n == 2:
        return check(oracle, plane, **kwargs)
    total = 0
    per_subset = {}
    first_bad = None
    resolution = None
    for s in itertools.combinations(range(1, n + 1), 2):
        v = check(induce(oracle, s), plane, **kwargs)
        total += v.queries
        per_subset["{%d,%d}" % s] = v.status.value
        resolution = resolution or v.resolution
        if v.violated and first_bad is None:
            first_bad = replace(v, witness=replace(v.witness, subset=s))
            resolution = v.resolution
            break
    res = replace(resolution, grid=g.spec)
    if first_bad is not None:
        return AxiomVerdict(first_bad.axiom, Status.VIOLATED, first_bad.witness, res, total,
                            {"subsets": per_subset})
    return AxiomVerdict(v.axiom, Status.SATISFIED, None, res, total, {"subsets": per_subset})


def run_each_pair(check: Callable[..., AxiomVerdict], oracle: Oracle, g: Grid,
                  **kwargs) -> dict[tuple[int, int], AxiomVerdict]:
    """Per-subset verdicts of a two-attribute check, witnesses tagged with the subset."""
    n = oracle.dimension
    plane = Grid(2, g.max, g.h)
    out = {}
    for s in itertools.combinations(range(1, n + 1), 2):
        v = check(induce(oracle, s), plane, **kwargs)
        if v.violated and n > 2:
            v = replace(v, witness=replace(v.witness, subset=s))
        out[s] = v
    return out


def check_axiom(axiom: str, oracle: Oracle, g: Grid, *, scope: str = "pairwise",
                sched: EpsSchedule | None = None, seed: int = 0,
                budget: int = DEFAULT_BUDGET) -> AxiomVerdict:
    """Dispatch by CLI axiom identifier.

    ``scope`` matters for monotone and mildcont: "pairwise" runs the check on
    every 2-attribute induced preference, "full" on the oracle itself.
    """
    if axiom not in AXIOMS:
        raise ValueError(f"unknown axiom {axiom!r}; expected one of {', '.join(AXIOMS)}")
    if scope not in ("pairwise", "full"):
        raise ValueError(f"scope must be pairwise or full, got {scope!r}")
    if g.n != oracle.dimension:
        raise DimensionError(f"grid {g.spec} does not match dimension {oracle.dimension}")
    if axiom == "monotone":
        if scope == "full":
            return check_strong_monotonicity(oracle, g, seed=seed, budget=budget)
        return run_pairwise(check_strong_monotonicity, oracle, g, seed=seed, budget=budget)
    if axiom == "mildcont":
        if scope == "full":
            return check_mild_continuity(oracle, g, sched, seed=seed, budget=budget)
        return run_pairwise(check_mild_continuity, oracle, g, sched=sched, seed=seed,
                            budget=budget)
    if axiom == "imia":
        return run_pairwise(check_imia, oracle, g, seed=seed,
                            require_monotone=oracle.dimension == 2)
    if axiom == "noncomp2":
        return run_pairwise(check_noncompensation, oracle, g, seed=seed, budget=budget)
    if axiom == "noncompfull":
        return check_noncompensation_full(oracle, g, seed=seed, budget=budget)
    if axiom == "nraa":
        return check_nraa(oracle, g, seed=seed)
    if axiom == "independence":
        return check_independence(oracle, g, seed=seed)
    return check_complete_transitive(oracle, g, seed=seed, budget=budget)
