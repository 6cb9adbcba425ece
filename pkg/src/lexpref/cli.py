"""Command-line interface: ``lexpref check|classify|audit|demo|zoo``.

Every command prints one JSON document (or writes it to ``--output``);
``--pretty`` renders the same object as indented text instead.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from .axioms import (AXIOMS, check_axiom, check_complete_transitive, check_imia,
                     check_mild_continuity, check_noncompensation, check_noncompensation_full,
                     check_nraa, check_strong_monotonicity, run_pairwise)
from .choicedata import audit, load_choices, load_schema
from .classify import DOMINANT, LEXICOGRAPHIC, PAIRWISE_ONLY, classify_lexicographic
from .core import alternative
from .errors import CycleError, LexprefError
from .grid import Grid, build_grid, parse_grid
from .verdict import EpsSchedule, Status
from .zoo import ZOO_IDS, make_lex_semiorder, parse_oracle

EXIT_USAGE = 2
CLASS_EXIT = {LEXICOGRAPHIC: 0, PAIRWISE_ONLY: 3, DOMINANT: 4}


class UsageError(Exception):
    pass


def default_grid(n: int) -> Grid:
    return build_grid(n, 8 if n <= 3 else 4, 1)


def _grid_for(args, n: int) -> Grid:
    g = parse_grid(args.grid) if args.grid else default_grid(n)
    if g.n != n:
        raise UsageError(f"grid {g.spec} has dimension {g.n}, oracle has {n}")
    return g


def _emit(obj, args) -> None:
    if getattr(args, "pretty", False):
        text = _pretty(obj)
    else:
        text = json.dumps(obj, indent=2)
    if getattr(args, "output", None):
        with open(args.output, "w") as fh:
            fh.write(text + "\n")
    else:
        sys.stdout.write(text + "\n")


def _pretty(obj, indent: int = 0) -> str:
    pad = "  " * indent
    if isinstance(obj, dict):
        lines = []
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v and not _flat_list(v):
                lines.append(f"{pad}{k}:")
                lines.append(_pretty(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {_scalar(v)}")
        return "\n".join(lines)
    if isinstance(obj, list):
        if all(not isinstance(v, (dict, list)) or _flat_list(v) for v in obj):
            return "\n".join(f"{pad}- {_scalar(v)}" for v in obj)
        return "\n".join(f"{pad}-\n{_pretty(v, indent + 1)}" for v in obj)
    return pad + _scalar(obj)


def _flat_list(v) -> bool:
    return isinstance(v, list) and all(not isinstance(c, (dict, list)) for c in v)


def _scalar(v) -> str:
    if isinstance(v, list):
        return "(" + ", ".join(_scalar(c) for c in v) + ")"
    if v is None:
        return "-"
    if isinstance(v, float):
        return f"{v:g}"
    return str(v)


# -- commands ----------------------------------------------------------------------------

def cmd_check(args) -> int:
    oracle = parse_oracle(args.oracle)
    g = _grid_for(args, oracle.dimension)
    sched = EpsSchedule.parse(args.eps, g.h)
    verdict = check_axiom(args.axiom, oracle, g, scope=args.scope, sched=sched, seed=args.seed)
    out = {"oracle": oracle.name, "scope": args.scope, **verdict.to_dict()}
    if "subsets" in verdict.details:
        out["subsets"] = verdict.details["subsets"]
    _emit(out, args)
    return 0 if verdict.status is Status.SATISFIED else 1


def cmd_classify(args) -> int:
    oracle = parse_oracle(args.oracle)
    g = _grid_for(args, oracle.dimension)
    sched = EpsSchedule.parse(args.eps, g.h)
    try:
        report = classify_lexicographic(oracle, g, sched, mode=args.mode, seed=args.seed)
    except CycleError as exc:
        _emit({"oracle": oracle.name, "mode": args.mode, "class": "Unclassified",
               "error": str(exc), "cycle": list(exc.triple)}, args)
        return 5
    _emit(report.to_dict(), args)
    return CLASS_EXIT.get(report.cls, 5)


def cmd_audit(args) -> int:
    schema = load_schema(args.schema)
    records = load_choices(args.data, schema)
    _emit(audit(records, schema).to_dict(), args)
    return 0


def demo_semiorder_cycle() -> dict:
    o = make_lex_semiorder(1.0)
    a, b, c = alternative((1, 3)), alternative((1.5, 2)), alternative((2.5, 1))
    links = [("a", "b", o.compare(a, b)), ("b", "c", o.compare(b, c)), ("c", "a", o.compare(c, a))]
    g = build_grid(2, 3, 0.5)
    ct = check_complete_transitive(o, g)
    cycle = all(r.value == "FirstStrict" for *_, r in links)
    return {
        "demo": "semiorder-cycle",
        "oracle": o.name,
        "points": {"a": list(a), "b": list(b), "c": list(c)},
        "links": [{"pair": [x, y], "outcome": r.value} for x, y, r in links],
        "cycle": cycle,
        "completetrans": ct.to_dict(),
        "witness_replays": bool(ct.witness and ct.witness.replay(o)),
    }


TABLE1_ORACLES = ("lex:1,2,3", "ex2", "leximax:3")
TABLE1_ROWS = ("noncompfull", "noncomp2", "imia")
ROBUSTNESS_ORACLES = ("ex2", "dominant:1", "perfsub:3", "leximax:3")
ROBUSTNESS_AXIOMS = ("axiom1", "axiom2", "axiom3", "axiom4")


def table1(g: Grid | None = None) -> dict:
    """Three noncompensation conditions for lex, ex2 and leximax."""
    g = g or build_grid(3, 8, 1)
    matrix, witnesses = {}, {}
    for spec in TABLE1_ORACLES:
        o = parse_oracle(spec)
        row = {}
        for axiom in TABLE1_ROWS:
            if axiom == "noncompfull":
                v = check_noncompensation_full(o, g)
            elif axiom == "noncomp2":
                v = run_pairwise(check_noncompensation, o, g)
            else:
                v = run_pairwise(check_imia, o, g, require_monotone=False)
            row[axiom] = v.satisfied
            if v.violated:
                witnesses[f"{spec} {axiom}"] = v.witness.to_dict()
        matrix[spec] = row
    return {"demo": "table1", "grid": g.spec, "matrix": matrix, "witnesses": witnesses}


def robustness(g: Grid | None = None, sched: EpsSchedule | None = None) -> dict:
    """Axioms 1-4 on the four drop-one-axiom examples."""
    g = g or build_grid(3, 8, 1)
    sched = sched or EpsSchedule(2.0, 0.5, 1.0)
    matrix, failed, witnesses = {}, {}, {}
    for spec in ROBUSTNESS_ORACLES:
        o = parse_oracle(spec)
        verdicts = {
            "axiom1": run_pairwise(check_strong_monotonicity, o, g),
            "axiom2": run_pairwise(check_mild_continuity, o, g, sched=sched),
            "axiom3": run_pairwise(check_imia, o, g, require_monotone=False),
            "axiom4": check_nraa(o, g),
        }
        matrix[spec] = {k: v.satisfied for k, v in verdicts.items()}
        failed[spec] = [k for k, v in verdicts.items() if v.violated]
        for k, v in verdicts.items():
            if v.violated:
                witnesses[f"{spec} {k}"] = v.witness.to_dict()
    return {"demo": "robustness", "grid": g.spec, "eps_schedule": sched.spec,
            "matrix": matrix, "failed": failed, "witnesses": witnesses}


DEMOS = {"semiorder-cycle": demo_semiorder_cycle, "table1": table1, "robustness": robustness}


def cmd_demo(args) -> int:
    _emit(DEMOS[args.name](), args)
    return 0


def cmd_zoo(args) -> int:
    _emit([{"id": k, "description": v} for k, v in ZOO_IDS.items()], args)
    return 0


# -- parser ------------------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="lexpref", description="Check, classify and audit lexicographic preferences.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, grid=True):
        if grid:
            sp.add_argument("--oracle", required=True, help="zoo identifier, see `zoo list`")
            sp.add_argument("--grid", help="n:max:h (default n:8:1, or n:4:1 for n >= 4)")
            sp.add_argument("--eps", default="2:0.5:h", help="eps0:factor:floor (default 2:0.5:h)")
            sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--output", help="write JSON here instead of stdout")
        sp.add_argument("--pretty", action="store_true", help="indented text rendering")

    c = sub.add_parser("check", help="run one axiom checker")
    common(c)
    c.add_argument("--axiom", required=True, choices=AXIOMS)
    c.add_argument("--scope", choices=("pairwise", "full"), default="pairwise",
                   help="monotone/mildcont on 2-attribute induced preferences or the full oracle")
    c.set_defaults(func=cmd_check)

    k = sub.add_parser("classify", help="run the full classification")
    common(k)
    k.add_argument("--mode", choices=("imia", "nc3a"), default="imia")
    k.set_defaults(func=cmd_classify)

    a = sub.add_parser("audit", help="audit a discrete-choice dataset")
    a.add_argument("data")
    a.add_argument("schema")
    common(a, grid=False)
    a.set_defaults(func=cmd_audit)

    d = sub.add_parser("demo", help="reproduce a worked example")
    d.add_argument("name", choices=tuple(DEMOS))
    common(d, grid=False)
    d.set_defaults(func=cmd_demo)

    z = sub.add_parser("zoo", help="list built-in oracles")
    z.add_argument("action", choices=("list",))
    common(z, grid=False)
    z.set_defaults(func=cmd_zoo)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        sys.stderr.write(f"lexpref: {exc}\n")
        return EXIT_USAGE
    except (LexprefError, ValueError, OSError) as exc:
        sys.stderr.write(f"lexpref: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
