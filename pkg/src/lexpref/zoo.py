"""Built-in preference oracles.

Every constructor returns an :class:`~lexpref.core.Oracle` whose name is the
identifier accepted by :func:`parse_oracle` (``lex:1,2,3``, ``ex2``, ...).
Oracles that come with documented counterexamples carry them as probes, so
checkers report those instances when they apply.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction
from typing import Callable, Sequence

from .core import FIRST, INCOMPARABLE, INDIFFERENT, SECOND, Alternative, Oracle, Outcome
from .errors import SpecError


def _by_value(u: Callable[[Alternative], float]):
    def fn(x: Alternative, y: Alternative) -> Outcome:
        a, b = u(x), u(y)
        if a > b:
            return FIRST
        if b > a:
            return SECOND
        return INDIFFERENT

    return fn


def _check_order(order: Sequence[int]) -> tuple[int, ...]:
    order = tuple(int(i) for i in order)
    if not order or sorted(order) != list(range(1, len(order) + 1)):
        raise SpecError(f"{order} is not a permutation of 1..{len(order)}")
    return order


def lex_compare(order: Sequence[int], x: Sequence[float], y: Sequence[float]) -> Outcome:
    """The first attribute in ``order`` on which x and y differ decides."""
    for i in order:
        a, b = x[i - 1], y[i - 1]
        if a > b:
            return FIRST
        if b > a:
            return SECOND
    return INDIFFERENT


def make_lexicographic(order: Sequence[int]) -> Oracle:
    order = _check_order(order)
    idx = tuple(i - 1 for i in order)

    def fn(x: Alternative, y: Alternative) -> Outcome:
        for i in idx:
            a = x[i]
            b = y[i]
            if a != b:
                return FIRST if a > b else SECOND
        return INDIFFERENT

    return Oracle(f"lex:{','.join(map(str, order))}", len(order), fn)


def make_leximax(n: int) -> Oracle:
    if n < 2:
        raise SpecError("leximax needs at least 2 attributes")

    def fn(x: Alternative, y: Alternative) -> Outcome:
        a = sorted(x, reverse=True)
        b = sorted(y, reverse=True)
        if a == b:
            return INDIFFERENT
        return FIRST if a > b else SECOND

    probes = {
        # x=(4,2) beats y=(1,4) but loses to (3,4), a pair with the same sign pattern
        "noncomp2": tuple(
            {"subset": s, "x": (4.0, 2.0), "y": (1.0, 4.0), "z": (4.0, 2.0), "w": (3.0, 4.0)}
            for s in itertools.combinations(range(1, n + 1), 2)
        ),
        "mildcont": tuple(
            {"subset": s, "x": (4.0, 2.0), "y": (1.0, 4.0)}
            for s in itertools.combinations(range(1, n + 1), 2)
        ),
    }
    if n == 2:
        probes = {k: tuple({kk: vv for kk, vv in p.items() if kk != "subset"} for p in v)
                  for k, v in probes.items()}
    return Oracle(f"leximax:{n}", n, fn, probes=probes)


def make_dominant(i: int, n: int = 3) -> Oracle:
    if not 1 <= i <= n:
        raise SpecError(f"dominant attribute {i} not within 1..{n}")
    k = i - 1
    return Oracle(f"dominant:{i}" if n == 3 else f"dominant:{i},n={n}", n,
                  _by_value(lambda x: x[k]))


def make_perfect_substitutes(n: int) -> Oracle:
    if n < 1:
        raise SpecError("perfect substitutes needs at least 1 attribute")
    if n == 2:
        probes = {"imia": ({"anchor": (1.0, 3.0), "x": (1.0, 3.0), "y": (3.0, 1.0)},)}
    else:
        probes = {"imia": tuple(
            {"subset": s, "anchor": (1.0, 3.0), "x": (1.0, 3.0), "y": (3.0, 1.0)}
            for s in itertools.combinations(range(1, n + 1), 2)
        )}
    return Oracle(f"perfsub:{n}", n, _by_value(math.fsum), probes=probes)


def make_min_multiplicative() -> Oracle:
    """u(x) = min(x1, x2) + min(x1, x2) * x3 on three attributes."""

    def u(x: Alternative) -> float:
        m = min(x[0], x[1])
        return m + m * x[2]

    probes = {"independence": (
        {"attr": 1, "xi": 4.0, "yi": 1.0, "fill": (2.0, 2.0), "fill_alt": (0.5, 3.0)},
    )}
    return Oracle("minmul", 3, _by_value(u), probes=probes)


def make_cobb_douglas(alpha: float) -> Oracle:
    """u(x1, x2) = x1**alpha * x2**(1 - alpha), compared exactly.

    ``alpha`` is approximated by a fraction p/q with q <= 100 and the
    comparison is made on x1**p * x2**(q - p) in rational arithmetic, so
    indifference between grid points is never lost to rounding.
    """
    if not 0.0 < alpha < 1.0:
        raise SpecError(f"Cobb-Douglas exponent must lie in (0, 1), got {alpha}")
    frac = Fraction(alpha).limit_denominator(100)
    p, q = frac.numerator, frac.denominator

    def u(x: Alternative) -> Fraction:
        return Fraction(x[0]) ** p * Fraction(x[1]) ** (q - p)

    return Oracle(f"cobb:{alpha:g}", 2, _by_value(u))


def make_pairwise_lex_ex2() -> Oracle:
    """Pairwise lexicographic but not lexicographic, on three attributes.

    (a) a larger first attribute wins; with equal first attributes at zero the
    comparison is lexicographic on (2, 3); with an equal positive first
    attribute the sum of attributes 2 and 3 decides and equal sums are
    indifferent.
    """

    def fn(x: Alternative, y: Alternative) -> Outcome:
        if x[0] != y[0]:
            return FIRST if x[0] > y[0] else SECOND
        if x[0] == 0.0:
            for i in (1, 2):
                if x[i] != y[i]:
                    return FIRST if x[i] > y[i] else SECOND
            return INDIFFERENT
        a, b = x[1] + x[2], y[1] + y[2]
        if a == b:
            return INDIFFERENT
        return FIRST if a > b else SECOND

    probes = {
        "noncompfull": ({"x": (0.0, 6.0, 1.0), "y": (0.0, 4.0, 8.0),
                         "z": (1.0, 5.0, 4.0), "w": (1.0, 4.0, 7.0)},),
        "nraa": ({"subset": (2, 3), "x": (6.0, 4.0), "y": (3.0, 8.0), "fill": (1.0,)},),
    }
    return Oracle("ex2", 3, fn, probes=probes)


def _sum_cmp(a: float, b: float) -> Outcome:
    if a == b:
        return INDIFFERENT
    return FIRST if a > b else SECOND


def _min_then_sum(mx: float, my: float, sx: float, sy: float) -> Outcome:
    if mx > 0.0 and my > 0.0:
        return _sum_cmp(sx, sy)
    if mx > 0.0:
        return FIRST
    if my > 0.0:
        return SECOND
    return INDIFFERENT


def make_ex0() -> Oracle:
    """Induced preferences mildly continuous, the preference itself not.

    When some attribute is zero in both alternatives the total sums are
    compared (this is what each of the three zero-attribute rules reduces to).
    Otherwise a positive minimum beats a zero minimum, two zero minima are
    indifferent, and two positive minima compare by sum.
    """

    def fn(x: Alternative, y: Alternative) -> Outcome:
        sx, sy = x[0] + x[1] + x[2], y[0] + y[1] + y[2]
        if any(a == 0.0 and b == 0.0 for a, b in zip(x, y)):
            return _sum_cmp(sx, sy)
        return _min_then_sum(min(x), min(y), sx, sy)

    probes = {"mildcont": ({"x": (2.0, 1.0, 1.0), "y": (0.0, 2.0, 2.0)},)}
    return Oracle("ex0", 3, fn, declared_transitive=False, probes=probes)


def make_ex01() -> Oracle:
    """The preference is mildly continuous, no two-attribute induced one is.

    Cases are split exactly as stated: a shared zero attribute k selects the
    rule for S = N minus k (min over S first, then the sum over S); without a
    shared zero the total sums are compared.
    """

    def fn(x: Alternative, y: Alternative) -> Outcome:
        for k in range(3):
            if x[k] == 0.0 and y[k] == 0.0:
                rest = [i for i in range(3) if i != k]
                xs = [x[i] for i in rest]
                ys = [y[i] for i in rest]
                return _min_then_sum(min(xs), min(ys), xs[0] + xs[1], ys[0] + ys[1])
        return _sum_cmp(x[0] + x[1] + x[2], y[0] + y[1] + y[2])

    probes = {"mildcont": tuple(
        {"subset": s, "x": (1.0, 1.0), "y": (0.0, 2.0)}
        for s in ((1, 2), (1, 3), (2, 3))
    )}
    return Oracle("ex01", 3, fn, declared_transitive=False, probes=probes)


def make_lex_semiorder(eps: float, order: Sequence[int] = (1, 2)) -> Oracle:
    """Two-attribute lexicographic semiorder with threshold ``eps``.

    The top attribute decides only when the difference exceeds ``eps``;
    otherwise the second attribute decides, and if that ties too the top
    attribute breaks the tie by plain comparison.
    """
    if not eps > 0.0:
        raise SpecError(f"semiorder threshold must be positive, got {eps}")
    order = _check_order(order)
    if len(order) != 2:
        raise SpecError("the lexicographic semiorder is defined for two attributes")
    top, second = order[0] - 1, order[1] - 1

    def fn(x: Alternative, y: Alternative) -> Outcome:
        d = x[top] - y[top]
        if d > eps:
            return FIRST
        if -d > eps:
            return SECOND
        if x[second] != y[second]:
            return FIRST if x[second] > y[second] else SECOND
        if d != 0.0:
            return FIRST if d > 0 else SECOND
        return INDIFFERENT

    name = f"semiorder:eps={eps:g}" + ("" if order == (1, 2) else f",order={order[0]},{order[1]}")
    return Oracle(name, 2, fn, declared_transitive=False)


def _noncomparable(x: Alternative, y: Alternative) -> bool:
    up = down = False
    for a, b in zip(x, y):
        if a > b:
            up = True
        elif b > a:
            down = True
    return up and down


def _dominance(x: Alternative, y: Alternative) -> Outcome:
    # only called on comparable pairs
    if x == y:
        return INDIFFERENT
    return FIRST if all(a >= b for a, b in zip(x, y)) else SECOND


def make_noncomparable_indifferent(n: int = 3) -> Oracle:
    """Strong monotone; non-comparable pairs are indifferent (complete, intransitive)."""

    def fn(x: Alternative, y: Alternative) -> Outcome:
        return INDIFFERENT if _noncomparable(x, y) else _dominance(x, y)

    return Oracle(f"ncindiff:{n}", n, fn, declared_transitive=False)


def make_noncomparable_incomplete(n: int = 3) -> Oracle:
    """Strong monotone; non-comparable pairs are incomparable (transitive, incomplete)."""

    def fn(x: Alternative, y: Alternative) -> Outcome:
        return INCOMPARABLE if _noncomparable(x, y) else _dominance(x, y)

    return Oracle(f"ncincomplete:{n}", n, fn, declared_complete=False)


def make_utility_preference(kind: str, param: float | int | None = None, n: int = 3) -> Oracle:
    """Utility-represented oracles: ``dominant``, ``perfsub``, ``minmul``, ``cobb``."""
    if kind == "dominant":
        return make_dominant(int(param if param is not None else 1), n)
    if kind == "perfsub":
        return make_perfect_substitutes(int(param if param is not None else n))
    if kind == "minmul":
        return make_min_multiplicative()
    if kind == "cobb":
        return make_cobb_douglas(float(param if param is not None else 0.5))
    raise SpecError(f"unknown utility preference {kind!r}")


def make_special(kind: str, **params) -> Oracle:
    """Case-rule oracles: ``ex2``, ``ex0``, ``ex01``, ``semiorder``, ``ncindiff``, ``ncincomplete``."""
    if kind == "ex2":
        return make_pairwise_lex_ex2()
    if kind == "ex0":
        return make_ex0()
    if kind == "ex01":
        return make_ex01()
    if kind == "semiorder":
        return make_lex_semiorder(params.get("eps", 1.0), params.get("order", (1, 2)))
    if kind == "ncindiff":
        return make_noncomparable_indifferent(params.get("n", 3))
    if kind == "ncincomplete":
        return make_noncomparable_incomplete(params.get("n", 3))
    raise SpecError(f"unknown special preference {kind!r}")


ZOO_IDS = {
    "lex:<order>": "lexicographic, most important attribute first (e.g. lex:2,1,3)",
    "leximax:<n>": "lexicographic on descending order statistics",
    "ex2": "pairwise lexicographic but not lexicographic (3 attributes)",
    "dominant:<i>[,n=<n>]": "utility x_i only (default n=3)",
    "perfsub:<n>": "perfect substitutes, utility is the attribute sum",
    "minmul": "u = min(x1,x2) + min(x1,x2)*x3",
    "ex0": "induced preferences mildly continuous, preference not (3 attributes)",
    "ex01": "preference mildly continuous, induced preferences not (3 attributes)",
    "cobb:<alpha>": "Cobb-Douglas on 2 attributes",
    "semiorder:eps=<e>[,order=<i>,<j>]": "two-attribute lexicographic semiorder",
    "ncindiff:<n>": "non-comparable pairs indifferent (complete, not transitive)",
    "ncincomplete:<n>": "non-comparable pairs incomparable (transitive, not complete)",
}


def _ints(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError as exc:
        raise SpecError(f"expected comma-separated integers, got {text!r}") from exc


def _kv(text: str) -> dict[str, str]:
    """Parse ``a=1,b=2,3`` where a bare value continues the previous key."""
    out: dict[str, list[str]] = {}
    key = None
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        if "=" in part:
            key, value = part.split("=", 1)
            out[key.strip()] = [value.strip()]
        elif key is not None:
            out[key].append(part)
        else:
            out.setdefault("", []).append(part)
    return {k: ",".join(v) for k, v in out.items()}


def parse_oracle(spec: str) -> Oracle:
    """Build a zoo oracle from its CLI identifier."""
    head, _, rest = spec.strip().partition(":")
    try:
        if head == "lex":
            return make_lexicographic(_ints(rest))
        if head == "leximax":
            return make_leximax(int(rest))
        if head == "perfsub":
            return make_perfect_substitutes(int(rest))
        if head == "dominant":
            kv = _kv(rest)
            return make_dominant(int(kv.get("", "1")), int(kv.get("n", "3")))
        if head == "cobb":
            return make_cobb_douglas(float(rest or 0.5))
        if head == "semiorder":
            kv = _kv(rest)
            eps = float(kv.get("eps", kv.get("", "1")))
            order = _ints(kv["order"]) if "order" in kv else (1, 2)
            return make_lex_semiorder(eps, order)
        if head in ("ncindiff", "ncincomplete"):
            n = int(rest) if rest else 3
            return make_special(head, n=n)
        if head in ("ex2", "ex0", "ex01") and not rest:
            return make_special(head)
        if head == "minmul" and not rest:
            return make_min_multiplicative()
    except (ValueError, KeyError) as exc:
        if isinstance(exc, SpecError):
            raise
        raise SpecError(f"bad oracle identifier {spec!r}: {exc}") from exc
    raise SpecError(f"unknown oracle identifier {spec!r}")


def all_zoo(n: int = 3) -> list[Oracle]:
    """One instance of every zoo kind, used as a test corpus."""
    return [
        make_lexicographic(tuple(range(1, n + 1))),
        make_leximax(n),
        make_pairwise_lex_ex2(),
        make_dominant(1, 3),
        make_perfect_substitutes(n),
        make_min_multiplicative(),
        make_ex0(),
        make_ex01(),
        make_cobb_douglas(0.5),
        make_lex_semiorder(1.0),
        make_noncomparable_indifferent(3),
        make_noncomparable_incomplete(3),
    ]
