"""The verification matrix run by ``xfam verify-suite``.

Every check returns a ``CheckOutcome``; the runner times it, turns
exceptions into FAIL and collects everything into a manifest.
"""
from __future__ import annotations

import math
import random
import time
from dataclasses import asdict, dataclass
from typing import Callable

from . import bounds, constructions
from .family import (
    CrossPair,
    Family,
    is_cross_intersecting,
    is_non_trivial,
    is_star,
    k_subsets,
    prefix,
)
from .phi import verify_lemma_5_1
from .sampling import (
    random_appropriate,
    random_ci_pair,
    random_cross_uniform_pair,
    random_family,
    zero_one_appropriate,
)
from .search import (
    Constraint,
    SearchConfig,
    Strategy,
    iter_downsets,
    max_pair,
    validate_witness,
)
from .shifting import classify_pair, shift_ad_extremis, shift_family, star_formation_witness
from .transversal import t2_graph


@dataclass
class CheckOutcome:
    id: str
    title: str
    status: str          # PASS, FAIL or SKIPPED
    detail: str = ""
    seconds: float = 0.0


@dataclass
class Context:
    jobs: int = 1
    seed: int = 20240617
    time_budget: float | None = None


def _outcome(cid: str, title: str, problems: list[str], notes: str = "") -> CheckOutcome:
    if problems:
        return CheckOutcome(cid, title, "FAIL", "; ".join(problems[:10]))
    return CheckOutcome(cid, title, "PASS", notes)


# ---------------------------------------------------------------------------
# C1..C11
# ---------------------------------------------------------------------------

FORMULA_TABLE = (
    ("ekr(7,3)", lambda: bounds.ekr_bound(7, 3), 15),
    ("hm(7,3)", lambda: bounds.hm_bound(7, 3), 13),
    ("h(7,3)", lambda: bounds.h_nk(7, 3), 29),
    ("h(7,3,2)", lambda: bounds.h_nkl(7, 3, 2), 18),
    ("h(6,3,2)", lambda: bounds.h_nkl(6, 3, 2), 14),
    ("g(7,3,2)", lambda: bounds.g_nkl(7, 3, 2), 16),
    ("g(7,3,3)", lambda: bounds.g_nkl(7, 3, 3), 26),
    ("initial(7,3)", lambda: bounds.initial_bound(7, 3), 26),
    ("ft(7,3,2)", lambda: bounds.ft_bound(7, 3, 2), 26),
    ("product(5,2)", lambda: bounds.product_bound(5, 2), 9),
)


def check_formula_table(ctx: Context) -> CheckOutcome:
    problems = [f"{name} = {fn()} != {want}" for name, fn, want in FORMULA_TABLE if fn() != want]
    return _outcome("C1", "closed-form bound table", problems)


SUM_INSTANCES = ((5, 2, 2), (6, 2, 2), (7, 2, 2), (6, 3, 2), (7, 3, 2))
CLASS_COUNTS = {(5, 2, 2): 3, (6, 2, 2): 3, (6, 3, 2): 1, (7, 3, 2): 1}

_sum_cache: dict = {}


def _sum_search(n: int, k: int, l: int, jobs: int):
    key = (n, k, l)
    if key not in _sum_cache:
        _sum_cache[key] = max_pair(SearchConfig(n, k, l, jobs=jobs))
    return _sum_cache[key]


def check_search_vs_formula(ctx: Context) -> CheckOutcome:
    problems = []
    notes = []
    for n, k, l in SUM_INSTANCES:
        r = _sum_search(n, k, l, ctx.jobs)
        want = bounds.h_nkl(n, k, l)
        notes.append(f"({n},{k},{l})={r.best_value} in {r.wall_time_ms / 1000:.1f}s")
        if not r.complete or r.best_value != want:
            problems.append(f"({n},{k},{l}): search {r.best_value} vs h_nkl {want}")
        for w in r.witnesses:
            problems += [f"({n},{k},{l}) witness: {p}" for p in validate_witness(w, r.config, r.best_value)]
    return _outcome("C2", "exhaustive search equals h(n,k,l)", problems, ", ".join(notes))


def check_uniqueness(ctx: Context) -> CheckOutcome:
    problems = []
    for (n, k, l), want in CLASS_COUNTS.items():
        r = _sum_search(n, k, l, ctx.jobs)
        if r.class_count != want:
            problems.append(f"({n},{k},{l}): {r.class_count} classes, expected {want}")
    if not problems:
        # the three k = l = 2 classes are the disjoint-pair, triangle and path constructions
        from .search import canonical_form

        expected = [constructions.disjoint_pair_construction(5, 2, 2)] + constructions.k2_extra_optima(5)
        got = {(w.f.members, w.g.members) for w in _sum_search(5, 2, 2, ctx.jobs).witnesses}
        for p in expected:
            c = canonical_form(p, allow_swap=True)
            if (c.f.members, c.g.members) not in got:
                problems.append(f"construction {p.f} / {p.g} not among the optima")
    return _outcome("C3", "uniqueness up to relabelling", problems)


def check_initial_bound(ctx: Context) -> CheckOutcome:
    problems = []
    start = time.monotonic()
    for n, k, l in ((6, 3, 3), (6, 3, 2)):
        cfg = SearchConfig(n, k, l, constraint=Constraint.NONTRIVIAL_BOTH_AND_INITIAL, strategy=Strategy.INITIAL_DOWNSETS)
        r = max_pair(cfg)
        want = bounds.g_nkl(n, k, l)
        if r.best_value != want:
            problems.append(f"({n},{k},{l}): down-set search {r.best_value} vs g {want}")
        for w in r.witnesses:
            problems += validate_witness(w, cfg, r.best_value)
    if bounds.g_nkl(6, 3, 3) != 20 or bounds.g_nkl(6, 3, 3) != bounds.initial_bound(6, 3):
        problems.append("g(6,3,3) != 20")
    if time.monotonic() - start > 120:
        problems.append("runtime above 2 min")
    return _outcome("C4", "initial pairs attain g(n,k,l)", problems)


def check_ft(ctx: Context) -> CheckOutcome:
    problems = []
    r = max_pair(SearchConfig(5, 3, 2, constraint=Constraint.CI_ONLY_WITH_MIN_G, min_g=1))
    if r.best_value != bounds.ft_bound(5, 3, 2) or r.best_value != 10:
        problems.append(f"(5,3,2): {r.best_value} vs ft 10")
    bigger = sorted({len(w.g) for w in r.witnesses if len(w.g) > 1})
    if bigger:
        problems.append(f"(5,3,2): optima with |G| in {bigger} (n = k + l admits them)")
    star = constructions.star_pair(4)
    if not is_cross_intersecting(star) or star.total() != bounds.ft_bound(4, 2, 2) or len(star.g) != 3:
        problems.append("(4,2,2): star pair does not attain the bound with |G| = n - 1")
    r4 = max_pair(SearchConfig(4, 2, 2, constraint=Constraint.CI_ONLY_WITH_MIN_G, min_g=1))
    if r4.best_value != 6:
        problems.append(f"(4,2,2): search {r4.best_value} != 6")
    return _outcome("C5", "cross-intersecting bound and strictness", problems)


def _initial_ci_pairs(n: int, k: int, l: int):
    fs = [Family(n, k, tuple(_members(n, k, b))) for b in iter_downsets(n, k) if b]
    gs = fs if k == l else [Family(n, l, tuple(_members(n, l, b))) for b in iter_downsets(n, l) if b]
    for g in gs:
        for f in fs:
            p = CrossPair(f, g)
            if is_cross_intersecting(p):
                yield p


def _members(n: int, t: int, bits: int) -> list[int]:
    sets = list(k_subsets(prefix(n), t))
    return [sets[i] for i in range(len(sets)) if bits >> i & 1]


def check_phi(ctx: Context) -> CheckOutcome:
    problems = []
    counts = []
    for n, k, l in ((6, 3, 2), (6, 3, 3)):
        c = 0
        for p in _initial_ci_pairs(n, k, l):
            c += 1
            rep = verify_lemma_5_1(p)
            if not rep.ok:
                problems.append(f"({n},{k},{l}) {p.f} / {p.g}: {rep.violations}")
        counts.append(f"({n},{k},{l}): {c} pairs")
    return _outcome("C6", "phi injection on all initial CI pairs", problems, ", ".join(counts))


def check_shifting(ctx: Context, trials: int = 10_000) -> CheckOutcome:
    rng = random.Random(ctx.seed)
    problems = []
    for _ in range(trials):
        p = random_ci_pair(rng, (3, 8))
        n = p.n
        i, j = rng.sample(range(1, n + 1), 2)
        sf, sg = shift_family(p.f, i, j), shift_family(p.g, i, j)
        if len(sf) != len(p.f) or len(sg) != len(p.g):
            problems.append(f"size changed under S_{i}{j}")
        if not is_cross_intersecting(CrossPair(sf, sg)):
            problems.append(f"CI lost under S_{i}{j}")
        if len(t2_graph(p.f)) > len(t2_graph(sf)):
            problems.append(f"|T2| dropped under S_{i}{j}")
        for fam, s in ((p.f, sf), (p.g, sg)):
            if is_non_trivial(fam) and is_star(s):
                d = star_formation_witness(fam, i, j)
                if not (d.forms_star and d.center == i and d.disjoint_links and d.all_meet_pair):
                    problems.append(f"star formation diagnostics fail for S_{i}{j} on {fam}")
    return _outcome("C7", "shifting preserves size, CI, |T2|; star formation", problems, f"{trials} pairs")


def check_ad_extremis(ctx: Context, trials: int = 1_000) -> CheckOutcome:
    rng = random.Random(ctx.seed + 1)
    problems = []
    for _ in range(trials):
        p = random_ci_pair(rng, (4, 7), nontrivial=True)
        r = shift_ad_extremis(p)
        q = r.final_pair
        tr = r.potential_trace
        if any(a <= b for a, b in zip(tr, tr[1:])):
            problems.append("potential not strictly decreasing")
        if len(r.shifts_applied) > tr[0] - tr[-1]:
            problems.append("more shifts than the potential allows")
        if not (is_non_trivial(q.f) and is_non_trivial(q.g)):
            problems.append("non-triviality lost")
        if not is_cross_intersecting(q):
            problems.append("CI lost")
        if (len(q.f), len(q.g)) != (len(p.f), len(p.g)):
            problems.append("sizes changed")
        pairs = [(i, j) for i in range(1, p.n + 1) for j in range(i + 1, p.n + 1)]
        if sorted(r.classification) != pairs:
            problems.append("classification not total")
        for (i, j), tag in r.classification.items():
            if classify_pair(q, i, j) is not tag:
                problems.append(f"tag of ({i},{j}) does not re-test")
    return _outcome("C8", "shifting ad extremis terminates with a total A/B/C classification", problems, f"{trials} pairs")


def noncover_sweep(l: int, r: int) -> tuple[int, int, int]:
    """Over all non-trivial G of l-subsets of [2l]: (families, violations, max t_r)."""
    n = 2 * l
    g_sets = list(k_subsets(prefix(n), l))
    r_sets = list(k_subsets(prefix(n), r))
    meets = []
    for g in g_sets:
        bits = 0
        for idx, h in enumerate(r_sets):
            if h & g:
                bits |= 1 << idx
        meets.append(bits)
    limit = math.comb(n, r) - 2 * math.comb(l, r)
    N = len(g_sets)
    stats = [0, 0, -1]

    def rec(idx: int, tmask: int, inter: int, count: int) -> None:
        if count and not inter:
            stats[0] += 1
            t = tmask.bit_count()
            if t > limit:
                stats[1] += 1
            if t > stats[2]:
                stats[2] = t
        for c in range(idx, N):
            rec(c + 1, tmask & meets[c], inter & g_sets[c], count + 1)

    rec(0, (1 << len(r_sets)) - 1, prefix(n), 0)
    return tuple(stats)


def check_noncover(ctx: Context) -> CheckOutcome:
    problems = []
    start = time.monotonic()
    if list(range(2, 2)):
        problems.append("l = 2 should give an empty r-range")
    fams, bad, top = noncover_sweep(3, 2)
    if bad:
        problems.append(f"{bad} non-trivial families with t_2 > 9")
    if top != 9:
        problems.append(f"max t_2 = {top}, expected equality 9")
    g0 = constructions.disjoint_pair_construction(6, 3, 3).g
    from .transversal import transversal_counts

    if transversal_counts(g0, prefix(6), 2).t(2) != 9:
        problems.append("G0 does not attain t_2 = 9")
    if time.monotonic() - start > 120:
        problems.append("runtime above 2 min")
    return _outcome("C9", "non-cover lower bound for r-transversals", problems, f"{fams} non-trivial families")


def check_inequalities(ctx: Context, trials: int = 10_000) -> CheckOutcome:
    rng = random.Random(ctx.seed + 2)
    problems = []
    from .bounds import AppropriateSequence, check_appropriate_inequality

    # 0-1 appropriate sequences, exhaustive
    cases = 0
    for q in range(2, 11):
        for p in range(0, q - 1):
            for a in zero_one_appropriate(q + 1):
                for b in zero_one_appropriate(p + 1):
                    A, B = AppropriateSequence(a), AppropriateSequence(b)
                    for u in range(0, q - p + 1):
                        for v in range(u + 1, q - p - u + 1):
                            cases += 1
                            if not check_appropriate_inequality(A, B, u, v):
                                problems.append(f"appropriate {a} {b} u={u} v={v}")
    for _ in range(trials):
        q = rng.randint(2, 10)
        p = rng.randint(0, q - 2)
        A = AppropriateSequence(random_appropriate(rng, q + 1))
        B = AppropriateSequence(random_appropriate(rng, p + 1))
        u = rng.randint(0, (q - p - 1) // 2)
        v = rng.randint(u + 1, q - p - u)
        if not check_appropriate_inequality(A, B, u, v):
            problems.append(f"appropriate (random) u={u} v={v}")
    sweep = 0
    for n in range(1, 15):
        for k in range(1, 7):
            for l in range(1, k + 1):
                if n < k + l + 1:
                    continue
                for t in range(1, l):
                    if 2 * t < l + 1:
                        continue
                    sweep += 1
                    if not bounds.check_binomial_sum_inequality(n, k, l, t):
                        problems.append(f"binomial sums fail at {(n, k, l, t)}")
    for _ in range(trials):
        a, b = random_cross_uniform_pair(rng)
        if not bounds.check_cross_density(a, b):
            problems.append(f"density sum > 1 for {a} / {b}")
    for _ in range(trials):
        n = rng.randint(1, 10)
        k = rng.randint(0, n)
        f = random_family(rng, n, k, rng.randint(0, 12))
        t = rng.randint(0, k)
        if not bounds.check_sperner_shadow(f, t):
            problems.append(f"shadow ratio fails for {f}, t={t}")
    return _outcome(
        "C10", "appropriate sequences, binomial sums, cross densities, shadows", problems,
        f"{cases} 0-1 cases, {sweep} binomial instances",
    )


def check_chain_identity(ctx: Context) -> CheckOutcome:
    problems = []
    for n, k, l in ((7, 3, 2), (6, 3, 3)):
        p = constructions.initial_extremal_pair(n, k, l)
        lhs = bounds.chain_sum(p)
        rhs = math.factorial(l + 1) * p.total()
        if lhs != rhs:
            problems.append(f"({n},{k},{l}): {lhs} != {rhs}")
    return _outcome("C11", "full-chain identity", problems)


# ---------------------------------------------------------------------------
# stretch instances (FULL scale, only with a time budget)
# ---------------------------------------------------------------------------

def check_stretch_initial_733(ctx: Context) -> CheckOutcome:
    cfg = SearchConfig(7, 3, 3, constraint=Constraint.NONTRIVIAL_BOTH_AND_INITIAL,
                       strategy=Strategy.INITIAL_DOWNSETS, time_budget=ctx.time_budget)
    r = max_pair(cfg)
    problems = [] if r.complete and r.best_value == bounds.g_nkl(7, 3, 3) else [f"got {r.best_value}"]
    return _outcome("S1", "initial pairs at (7,3,3)", problems)


def check_stretch_bnb_agreement(ctx: Context) -> CheckOutcome:
    problems = []
    for n, k, l in SUM_INSTANCES + ((4, 2, 2), (5, 3, 2), (6, 4, 2)):
        ex = _sum_search(n, k, l, ctx.jobs)
        bb = max_pair(SearchConfig(n, k, l, strategy=Strategy.BRANCH_AND_BOUND, time_budget=ctx.time_budget))
        if (ex.best_value, ex.class_count) != (bb.best_value, bb.class_count):
            problems.append(f"({n},{k},{l}): exhaustive {ex.best_value} vs bnb {bb.best_value}")
    return _outcome("S2", "branch and bound agrees with exhaustive enumeration (l = 2)", problems)


def check_stretch_832(ctx: Context) -> CheckOutcome:
    cfg = SearchConfig(8, 3, 2, strategy=Strategy.BRANCH_AND_BOUND, time_budget=ctx.time_budget)
    r = max_pair(cfg)
    if not r.complete:
        return CheckOutcome("S3", "branch and bound at (8,3,2)", "SKIPPED", "time budget exhausted")
    want = bounds.h_nkl(8, 3, 2)
    problems = [] if r.best_value == want and r.class_count == 1 else [f"got {r.best_value}/{r.class_count}"]
    return _outcome("S3", "branch and bound at (8,3,2)", problems)


SMALL: tuple[Callable[[Context], CheckOutcome], ...] = (
    check_formula_table,
    check_search_vs_formula,
    check_uniqueness,
    check_initial_bound,
    check_ft,
    check_phi,
    check_shifting,
    check_ad_extremis,
    check_noncover,
    check_inequalities,
    check_chain_identity,
)
STRETCH: tuple[Callable[[Context], CheckOutcome], ...] = (
    check_stretch_initial_733,
    check_stretch_bnb_agreement,
    check_stretch_832,
)
STRETCH_INFO = {
    "check_stretch_initial_733": ("S1", "initial pairs at (7,3,3)"),
    "check_stretch_bnb_agreement": ("S2", "branch and bound agrees with exhaustive enumeration (l = 2)"),
    "check_stretch_832": ("S3", "branch and bound at (8,3,2)"),
}


def _id_of(fn: Callable) -> str:
    if fn in SMALL:
        return f"C{SMALL.index(fn) + 1}"
    info = STRETCH_INFO.get(fn.__name__)
    return info[0] if info else fn.__name__


def run_check(fn: Callable[[Context], CheckOutcome], ctx: Context) -> CheckOutcome:
    start = time.monotonic()
    try:
        out = fn(ctx)
    except Exception as exc:  # a crashing check is a failed check
        out = CheckOutcome(_id_of(fn), fn.__name__, "FAIL", f"{type(exc).__name__}: {exc}")
    out.seconds = time.monotonic() - start
    return out


def run_suite(scale: str = "small", ctx: Context | None = None, only: set[str] | None = None) -> list[CheckOutcome]:
    """Run every check once, in order; stretch checks need ``scale="full"`` and a time budget."""
    if scale not in ("small", "full"):
        raise ValueError(f"unknown scale {scale!r}")
    ctx = ctx or Context()
    _sum_cache.clear()
    checks = list(SMALL) + (list(STRETCH) if scale == "full" else [])
    outcomes = []
    for fn in checks:
        if only is not None and _id_of(fn) not in only:
            continue
        if fn in STRETCH and ctx.time_budget is None:
            cid, title = STRETCH_INFO[fn.__name__]
            outcomes.append(CheckOutcome(cid, title, "SKIPPED", "no time budget given"))
            continue
        outcomes.append(run_check(fn, ctx))
    return outcomes


def outcome_dict(o: CheckOutcome) -> dict:
    d = asdict(o)
    d["seconds"] = round(d["seconds"], 3)
    return d


def format_table(outcomes: list[CheckOutcome]) -> str:
    lines = [f"{'id':<4} {'status':<8} {'time':>8}  check"]
    for o in outcomes:
        lines.append(f"{o.id:<4} {o.status:<8} {o.seconds:>7.1f}s  {o.title}")
        if o.detail:
            lines.append(f"{'':<23}{o.detail}")
    return "\n".join(lines)


__all__ = ["CheckOutcome", "Context", "run_suite", "format_table", "outcome_dict"]
