"""Command-line front end: ``xfam <command> ...``.

Exit codes: 0 success, 1 a check failed, 2 usage or precondition error.
"""
from __future__ import annotations

import argparse
import csv
import hashlib
import io as _stringio
import json
import os
import sys
import time

from . import __version__, bounds, constructions
from .bounds import DomainError
from .family import (
    CrossPair,
    FamilyError,
    elements_of,
    is_cross_intersecting,
    is_initial,
    is_intersecting,
    is_non_trivial,
    is_star,
)
from .io import SchemaError, family_to_json, load_family, load_pair, pair_to_json, write_atomic, write_json
from .phi import verify_lemma_5_1
from .search import (
    BudgetError,
    Constraint,
    Objective,
    SearchConfig,
    Strategy,
    max_pair,
)
from .shifting import is_shifted_ad_extremis, shift_ad_extremis, shift_family, structure_report
from .transversal import is_saturated, saturate, transversal_family

OK, FAILED, USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _emit(obj, out: str | None) -> None:
    if out:
        write_json(out, obj)
    else:
        print(json.dumps(obj, indent=2))


def _jobs_default() -> int:
    raw = os.environ.get("XFAM_JOBS")
    if raw is None:
        return 1
    try:
        return max(1, int(raw))
    except ValueError:
        raise UsageError(f"XFAM_JOBS={raw!r} is not an integer")


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def cmd_bounds(args) -> int:
    row, notes = bounds.bound_table(args.n, args.k, args.l)
    buf = _stringio.StringIO()
    w = csv.DictWriter(buf, fieldnames=bounds.BOUND_COLUMNS, lineterminator="\n")
    w.writeheader()
    w.writerow({c: "" if row[c] is None else row[c] for c in bounds.BOUND_COLUMNS})
    if args.out:
        write_atomic(args.out, buf.getvalue())
    else:
        sys.stdout.write(buf.getvalue())
    for note in notes:
        print(note, file=sys.stderr)
    return OK


def _construct(args):
    name = args.name
    if name == "star":
        return constructions.full_star(args.n, args.k, args.center)
    if name == "hm":
        return constructions.hilton_milner(args.n, args.k)
    if name == "triangle":
        return constructions.triangle_family(args.n, args.k)
    if name == "star-pair":
        return constructions.star_pair(args.n)
    if args.l is None:
        raise UsageError(f"--l is required for {name}")
    if name == "disjoint-pair":
        return constructions.disjoint_pair_construction(args.n, args.k, args.l)
    if name == "initial-pair":
        return constructions.initial_extremal_pair(args.n, args.k, args.l)
    raise UsageError(f"unknown construction {name!r}")


def cmd_construct(args) -> int:
    if args.name == "k2-extras":
        obj = [pair_to_json(p) for p in constructions.k2_extra_optima(args.n)]
    else:
        made = _construct(args)
        obj = pair_to_json(made) if isinstance(made, CrossPair) else family_to_json(made)
    _emit(obj, args.out)
    return OK


FAMILY_PREDICATES = {
    "intersecting": is_intersecting,
    "non-trivial": is_non_trivial,
    "star": is_star,
    "initial": is_initial,
}
PAIR_PREDICATES = {
    "cross-intersecting": is_cross_intersecting,
    "saturated": is_saturated,
    "shifted-ad-extremis": is_shifted_ad_extremis,
    "non-trivial": lambda p: is_non_trivial(p.f) and is_non_trivial(p.g),
    "initial": lambda p: is_initial(p.f) and is_initial(p.g),
}


def cmd_check(args) -> int:
    if (args.family is None) == (args.pair is None):
        raise UsageError("give exactly one of --family and --pair")
    if args.family is not None:
        table, obj = FAMILY_PREDICATES, load_family(args.family)
    else:
        table, obj = PAIR_PREDICATES, load_pair(args.pair)
    if args.predicate not in table:
        raise UsageError(f"predicate {args.predicate!r} not available; choose from {', '.join(table)}")
    ok = bool(table[args.predicate](obj))
    print("true" if ok else "false")
    return OK if ok else FAILED


def cmd_shift(args) -> int:
    if (args.family is None) == (args.pair is None):
        raise UsageError("give exactly one of --family and --pair")
    if args.family is not None:
        obj = family_to_json(shift_family(load_family(args.family), args.i, args.j))
    else:
        p = load_pair(args.pair)
        obj = pair_to_json(CrossPair(shift_family(p.f, args.i, args.j), shift_family(p.g, args.i, args.j)))
    _emit(obj, args.out)
    return OK


def cmd_adextremis(args) -> int:
    p = load_pair(args.pair)
    if not is_cross_intersecting(p) or not (is_non_trivial(p.f) and is_non_trivial(p.g)):
        raise UsageError("ad extremis shifting needs a non-trivial cross-intersecting pair")
    r = shift_ad_extremis(p)
    _emit(pair_to_json(r.final_pair), args.out)
    if args.report:
        rep = {
            "shifts_applied": [list(s) for s in r.shifts_applied],
            "skipped": [{"i": s.i, "j": s.j, "stars": list(s.stars)} for s in r.skipped],
            "classification": {f"{i},{j}": t.value for (i, j), t in sorted(r.classification.items())},
            "potential_trace": list(r.potential_trace),
            "rounds": r.rounds,
            "structure": [_structure_json(s) for s in structure_report(r)],
        }
        write_json(args.report, rep)
    return OK


def _structure_json(s) -> dict:
    d = {"i": s.i, "j": s.j, "tag": s.tag.value, "status": s.status}
    if s.z is not None:
        d["z"] = s.z
    for name in ("K", "H", "Z"):
        v = getattr(s, name)
        if v is not None:
            d[name] = elements_of(v)
    if s.z_is_transversal is not None:
        d["z_is_transversal"] = s.z_is_transversal
    if s.xy_type is not None:
        d["xy_type"] = s.xy_type.value
    return d


def cmd_transversal(args) -> int:
    f = load_family(args.family)
    _emit(family_to_json(transversal_family(f, args.t, allow_empty=True)), args.out)
    return OK


def cmd_saturate(args) -> int:
    _emit(pair_to_json(saturate(load_pair(args.pair))), args.out)
    return OK


def cmd_phi(args) -> int:
    p = load_pair(args.pair)
    rep = verify_lemma_5_1(p)
    obj = {
        "p_values": {",".join(map(str, elements_of(g))): v for g, v in sorted(rep.p_values.items())},
        "swapped": rep.swapped,
        "sizes_ok": rep.sizes_ok,
        "injective": rep.injective,
        "disjoint_from_f": rep.disjoint_from_f,
        "meets_prefix": rep.meets_prefix,
        "zero_p_witness_ok": rep.zero_p_witness_ok,
        "violations": rep.violations,
        "ok": rep.ok,
    }
    _emit(obj, args.out)
    if args.verify and not rep.ok:
        return FAILED
    return OK


def result_json(r) -> dict:
    return {
        "config": r.config.to_json(),
        "best_value": r.best_value,
        "witnesses": [pair_to_json(w) for w in r.witnesses],
        "class_count": r.class_count,
        "raw_witness_count": r.raw_witness_count,
        "enumerated": r.enumerated,
        "complete": r.complete,
        "proof_of_exhaustiveness": r.proof_of_exhaustiveness,
        "wall_time_ms": round(r.wall_time_ms, 3),
    }


def cmd_search(args) -> int:
    cfg = SearchConfig(
        args.n, args.k, args.l,
        objective=Objective(args.objective),
        constraint=Constraint(args.constraint),
        strategy=Strategy(args.strategy),
        min_g=args.min_g,
        node_budget=args.node_budget,
        time_budget=args.time_budget,
        jobs=args.jobs,
    )
    r = max_pair(cfg)
    _emit(result_json(r), args.out)
    return OK


def cmd_verify_suite(args) -> int:
    from .suite import Context, format_table, outcome_dict, run_suite

    only = set(args.only.split(",")) if args.only else None
    start = time.monotonic()
    outcomes = run_suite(args.scale, Context(jobs=args.jobs, time_budget=args.time_budget), only=only)
    argv = ["xfam"] + list(args.argv)
    config = {"scale": args.scale, "jobs": args.jobs, "time_budget": args.time_budget, "only": args.only}
    manifest = {
        "command_line": " ".join(argv),
        "config_hash": hashlib.sha256(json.dumps(config, sort_keys=True).encode()).hexdigest()[:16],
        "version": __version__,
        "wall_time_s": round(time.monotonic() - start, 3),
        "outcomes": [outcome_dict(o) for o in outcomes],
    }
    print(format_table(outcomes))
    if args.out:
        write_json(args.out, manifest)
    return FAILED if any(o.status == "FAIL" for o in outcomes) else OK


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="xfam", description="Exact small-case tools for cross-intersecting families.")
    ap.add_argument("--version", action="version", version=f"xfam {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    s = sub.add_parser("bounds", help="closed-form bound table as CSV")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--l", type=int, required=True)
    s.add_argument("--out")
    s.set_defaults(func=cmd_bounds)

    s = sub.add_parser("construct", help="write a named construction")
    s.add_argument("--name", required=True, choices=constructions.CONSTRUCTIONS + ("star-pair",))
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--k", type=int, default=2)
    s.add_argument("--l", type=int)
    s.add_argument("--center", type=int, default=1)
    s.add_argument("--out")
    s.set_defaults(func=cmd_construct)

    s = sub.add_parser("check", help="test a predicate; exit 1 if it is false")
    s.add_argument("--family")
    s.add_argument("--pair")
    s.add_argument("--predicate", required=True)
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("shift", help="apply S_ij")
    s.add_argument("--family")
    s.add_argument("--pair")
    s.add_argument("--i", type=int, required=True)
    s.add_argument("--j", type=int, required=True)
    s.add_argument("--out")
    s.set_defaults(func=cmd_shift)

    s = sub.add_parser("adextremis", help="shift a non-trivial CI pair ad extremis")
    s.add_argument("--pair", required=True)
    s.add_argument("--out")
    s.add_argument("--report")
    s.set_defaults(func=cmd_adextremis)

    s = sub.add_parser("transversal", help="the t-uniform transversal family")
    s.add_argument("--family", required=True)
    s.add_argument("--t", type=int, required=True)
    s.add_argument("--out")
    s.set_defaults(func=cmd_transversal)

    s = sub.add_parser("saturate", help="replace F and G by their mutual transversals")
    s.add_argument("--pair", required=True)
    s.add_argument("--out")
    s.set_defaults(func=cmd_saturate)

    s = sub.add_parser("phi", help="the prefix-xor injection report for an initial CI pair")
    s.add_argument("--pair", required=True)
    s.add_argument("--verify", action="store_true", help="exit 1 on any violation")
    s.add_argument("--out")
    s.set_defaults(func=cmd_phi)

    s = sub.add_parser("search", help="exact maximisation over pairs")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--l", type=int, required=True)
    s.add_argument("--objective", choices=[o.value for o in Objective], default="sum")
    s.add_argument("--constraint", choices=[c.value for c in Constraint], default="nontrivial")
    s.add_argument("--strategy", choices=[x.value for x in Strategy], default="exhaustive-g")
    s.add_argument("--min-g", type=int, default=1)
    s.add_argument("--node-budget", type=int)
    s.add_argument("--time-budget", type=float)
    s.add_argument("--jobs", type=int)
    s.add_argument("--out")
    s.set_defaults(func=cmd_search)

    s = sub.add_parser("verify-suite", help="run the verification matrix")
    s.add_argument("--scale", choices=["small", "full"], default="small")
    s.add_argument("--only", help="comma-separated check ids, e.g. C1,C4")
    s.add_argument("--time-budget", type=float, help="seconds per stretch instance (FULL only)")
    s.add_argument("--jobs", type=int)
    s.add_argument("--out")
    s.set_defaults(func=cmd_verify_suite)
    return ap


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return USAGE if exc.code else OK
    args.argv = argv
    try:
        if getattr(args, "jobs", 0) is None:
            args.jobs = _jobs_default()
        return args.func(args)
    except (UsageError, SchemaError, FamilyError, DomainError, BudgetError, OSError) as exc:
        print(f"xfam: error: {exc}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
