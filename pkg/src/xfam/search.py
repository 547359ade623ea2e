"""Exact maximisation of |F| + |G| (or |F||G|) over cross-intersecting pairs.

The outer loop runs over candidate families G of l-sets.  For a fixed G the
best partner is its full transversal family T^(k)(G): enlarging F never
breaks cross-intersection and can only shrink the common intersection, so an
optimal pair may always be taken saturated.  Transversal families are kept as
bitmasks over the list of all k-sets, which turns "add a set to G" into one
AND.
"""
from __future__ import annotations

import math
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from itertools import permutations
from typing import Callable, Iterator

from .family import (
    CrossPair,
    Family,
    FamilyError,
    elements_of,
    is_cross_intersecting,
    is_initial,
    is_non_trivial,
    k_subsets,
    prefix,
)
from .transversal import is_saturated

EXHAUSTIVE_LIMIT = 24
CANONICAL_LIMIT = 9


class Objective(str, Enum):
    SUM = "sum"
    PRODUCT = "product"


class Constraint(str, Enum):
    NONTRIVIAL_BOTH = "nontrivial"
    NONTRIVIAL_BOTH_AND_INITIAL = "nontrivial-initial"
    CI_ONLY_WITH_MIN_G = "ci-min-g"


class Strategy(str, Enum):
    EXHAUSTIVE_G = "exhaustive-g"
    INITIAL_DOWNSETS = "initial-downsets"
    BRANCH_AND_BOUND = "branch-and-bound"


class BudgetError(ValueError):
    """The requested search is outside the enumeration budget."""


@dataclass(frozen=True)
class SearchConfig:
    n: int
    k: int
    l: int
    objective: Objective = Objective.SUM
    constraint: Constraint = Constraint.NONTRIVIAL_BOTH
    strategy: Strategy = Strategy.EXHAUSTIVE_G
    min_g: int = 1
    node_budget: int | None = None
    time_budget: float | None = None
    jobs: int = 1

    def __post_init__(self) -> None:
        if not 1 <= self.l <= self.k <= self.n:
            raise FamilyError("need 1 <= l <= k <= n")
        if self.strategy is Strategy.EXHAUSTIVE_G and math.comb(self.n, self.l) > EXHAUSTIVE_LIMIT:
            raise BudgetError(
                f"exhaustive G-enumeration needs C(n, l) <= {EXHAUSTIVE_LIMIT} "
                f"(2^C(n,l) closure evaluations); C({self.n}, {self.l}) = {math.comb(self.n, self.l)}"
            )
        if self.strategy is Strategy.INITIAL_DOWNSETS and self.constraint is not Constraint.NONTRIVIAL_BOTH_AND_INITIAL:
            raise BudgetError("down-set enumeration only covers the initial-pair constraint")

    def to_json(self) -> dict:
        return {
            "n": self.n, "k": self.k, "l": self.l,
            "objective": self.objective.value,
            "constraint": self.constraint.value,
            "strategy": self.strategy.value,
            "min_g": self.min_g,
            "node_budget": self.node_budget,
            "time_budget": self.time_budget,
            "jobs": self.jobs,
        }


@dataclass
class SearchResult:
    config: SearchConfig
    best_value: int | None
    witnesses: list[CrossPair]
    class_count: int
    enumerated: int
    complete: bool
    raw_witness_count: int
    wall_time_ms: float
    stats: dict = field(default_factory=dict)

    @property
    def proof_of_exhaustiveness(self) -> str:
        if not self.complete:
            return "INCOMPLETE"
        return {
            Strategy.EXHAUSTIVE_G: "all families G of l-sets, partner T^(k)(G)",
            Strategy.INITIAL_DOWNSETS: "all down-sets G of the shifting order, partner = initial interior of T^(k)(G)",
            Strategy.BRANCH_AND_BOUND: "G-membership DFS with bound |G| + remaining + |T^(k)(G)|",
        }[self.config.strategy]


# ---------------------------------------------------------------------------
# tables
# ---------------------------------------------------------------------------

@dataclass
class _Tables:
    n: int
    k: int
    l: int
    g_sets: list[int]             # candidate l-sets, increasing
    k_sets: list[int]             # all k-sets, increasing
    meets: list[int]              # meets[c] = bitmask over k_sets meeting g_sets[c]
    k_star: list[int]             # k_star[x] = bitmask over k_sets containing element x
    k_all: int
    k_pred: list[int]             # bitmask over k_sets of elementary predecessors
    k_order: list[int]            # k_sets indices in a linear extension of the shifting order
    g_pred: list[int]             # bitmask over g_sets of elementary predecessors


def _preds(sets: list[int], ground: int) -> list[int]:
    from .family import elementary_predecessors

    index = {m: i for i, m in enumerate(sets)}
    out = []
    for m in sets:
        bits = 0
        for p in elementary_predecessors(m, ground):
            bits |= 1 << index[p]
        out.append(bits)
    return out


def _tables(n: int, k: int, l: int) -> _Tables:
    full = prefix(n)
    g_sets = list(k_subsets(full, l))
    k_sets = list(k_subsets(full, k))
    meets = []
    for g in g_sets:
        bits = 0
        for i, h in enumerate(k_sets):
            if h & g:
                bits |= 1 << i
        meets.append(bits)
    k_star = []
    for x in range(n):
        bits = 0
        for i, h in enumerate(k_sets):
            if h >> x & 1:
                bits |= 1 << i
        k_star.append(bits)
    order = sorted(range(len(k_sets)), key=lambda i: (sum(elements_of(k_sets[i])), k_sets[i]))
    return _Tables(
        n, k, l, g_sets, k_sets, meets, k_star, (1 << len(k_sets)) - 1,
        _preds(k_sets, full), order, _preds(g_sets, full),
    )


def _interior(t: _Tables, tmask: int) -> int:
    kept = 0
    for i in t.k_order:
        if tmask >> i & 1 and not t.k_pred[i] & ~kept:
            kept |= 1 << i
    return kept


def _f_nontrivial(t: _Tables, fmask: int) -> bool:
    if not fmask:
        return False
    for s in t.k_star:
        if not fmask & ~s:
            return False
    return True


# ---------------------------------------------------------------------------
# enumeration kernels
# ---------------------------------------------------------------------------

class _Stop(Exception):
    pass


@dataclass
class _Partial:
    best: int
    witnesses: list[tuple[int, int]]   # (bitmask over g_sets, bitmask over k_sets)
    nodes: int
    complete: bool = True
    trimmed: int = 0                   # initial mode: transversal family was not initial


def _score(objective: Objective, gcount: int, fcount: int) -> int:
    return gcount + fcount if objective is Objective.SUM else gcount * fcount


def _run_block(
    n: int, k: int, l: int,
    objective: Objective, constraint: Constraint, min_g: int,
    prune: bool, pattern: int, depth: int,
    node_budget: int | None, deadline: float | None,
) -> _Partial:
    """Subset-tree DFS over G; the first `depth` candidates are fixed by `pattern`."""
    t = _tables(n, k, l)
    N = len(t.g_sets)
    meets, g_sets, g_pred = t.meets, t.g_sets, t.g_pred
    k_star = t.k_star
    full_elems = prefix(n)
    sum_obj = objective is Objective.SUM
    nontrivial = constraint is not Constraint.CI_ONLY_WITH_MIN_G
    initial = constraint is Constraint.NONTRIVIAL_BOTH_AND_INITIAL
    out = _Partial(best=-1, witnesses=[], nodes=0)

    tmask, ginter, gbits, gcount = t.k_all, full_elems, 0, 0
    for c in range(depth):
        if pattern >> c & 1:
            tmask &= meets[c]
            ginter &= g_sets[c]
            gbits |= 1 << c
            gcount += 1

    def evaluate(tmask: int, ginter: int, gbits: int, gcount: int) -> None:
        if gcount < min_g:
            return
        if nontrivial and ginter:
            return
        if initial:
            if any(gbits >> c & 1 and g_pred[c] & ~gbits for c in range(N)):
                return
            tmask = _interior(t, tmask)
        fcount = tmask.bit_count()
        score = gcount + fcount if sum_obj else gcount * fcount
        if score < out.best or not tmask:
            return
        if nontrivial:
            for s in k_star:
                if not tmask & ~s:
                    return
        if score > out.best:
            out.best = score
            out.witnesses = []
        out.witnesses.append((gbits, tmask))

    def rec(idx: int, tmask: int, ginter: int, gbits: int, gcount: int) -> None:
        out.nodes += 1
        if node_budget is not None and out.nodes > node_budget:
            raise _Stop
        if deadline is not None and not out.nodes & 0xFFF and time.monotonic() > deadline:
            raise _Stop
        evaluate(tmask, ginter, gbits, gcount)
        if prune:
            if not tmask:
                return
            if nontrivial and not initial:
                for s in k_star:
                    if not tmask & ~s:
                        return
            top = gcount + N - idx
            fcount = tmask.bit_count()
            bound = top + fcount if sum_obj else top * fcount
            if bound < out.best:
                return
        for c in range(idx, N):
            rec(c + 1, tmask & meets[c], ginter & g_sets[c], gbits | 1 << c, gcount + 1)

    try:
        rec(depth, tmask, ginter, gbits, gcount)
    except _Stop:
        out.complete = False
    return out


def iter_downsets(n: int, t: int, limit: int | None = None) -> Iterator[int]:
    """Every initial family of t-subsets of [n], as a bitmask over k_subsets order.

    Candidates are visited in a linear extension of the shifting order; a set
    may be included only when all its elementary predecessors are.
    """
    sets = list(k_subsets(prefix(n), t))
    pred = _preds(sets, prefix(n))
    order = sorted(range(len(sets)), key=lambda i: (sum(elements_of(sets[i])), sets[i]))
    M = len(order)
    stack = [(0, 0)]
    produced = 0
    while stack:
        pos, chosen = stack.pop()
        if pos == M:
            yield chosen
            produced += 1
            if limit is not None and produced >= limit:
                return
            continue
        i = order[pos]
        stack.append((pos + 1, chosen))
        if not pred[i] & ~chosen:
            stack.append((pos + 1, chosen | 1 << i))


def initial_families(n: int, t: int) -> Iterator[Family]:
    sets = list(k_subsets(prefix(n), t))
    for bits in iter_downsets(n, t):
        yield Family(n, t, tuple(sets[i] for i in range(len(sets)) if bits >> i & 1))


def largest_initial_partner(g: Family, k: int) -> Family:
    """Largest initial family of k-sets cross-intersecting G."""
    t = _tables(g.n, k, g.k)
    index = {m: i for i, m in enumerate(t.g_sets)}
    tmask = t.k_all
    for m in g.members:
        tmask &= t.meets[index[m]]
    kept = _interior(t, tmask)
    return Family(g.n, k, tuple(t.k_sets[i] for i in range(len(t.k_sets)) if kept >> i & 1))


def _run_downsets(cfg: SearchConfig, deadline: float | None) -> _Partial:
    t = _tables(cfg.n, cfg.k, cfg.l)
    out = _Partial(best=-1, witnesses=[], nodes=0)
    g_sets = t.g_sets
    sum_obj = cfg.objective is Objective.SUM
    for gbits in iter_downsets(cfg.n, cfg.l):
        out.nodes += 1
        if cfg.node_budget is not None and out.nodes > cfg.node_budget:
            out.complete = False
            break
        if deadline is not None and time.monotonic() > deadline:
            out.complete = False
            break
        if not gbits:
            continue
        ginter = prefix(cfg.n)
        tmask = t.k_all
        gcount = 0
        for c in range(len(g_sets)):
            if gbits >> c & 1:
                ginter &= g_sets[c]
                tmask &= t.meets[c]
                gcount += 1
        if ginter:
            continue
        fmask = _interior(t, tmask)
        if fmask != tmask:
            out.trimmed += 1
        if not _f_nontrivial(t, fmask):
            continue
        fcount = fmask.bit_count()
        score = gcount + fcount if sum_obj else gcount * fcount
        if score > out.best:
            out.best, out.witnesses = score, []
        if score == out.best:
            out.witnesses.append((gbits, fmask))
    return out


# ---------------------------------------------------------------------------
# canonical forms
# ---------------------------------------------------------------------------

def _image(members: list[list[int]], perm_bits: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(sorted(sum(perm_bits[i] for i in idxs) for idxs in members))


def _bit_lists(f: Family) -> list[list[int]]:
    return [[x - 1 for x in elements_of(m)] for m in f.members]


def _orbit(p: CrossPair, allow_swap: bool) -> set[tuple[tuple[int, ...], tuple[int, ...]]]:
    n = p.n
    fb, gb = _bit_lists(p.f), _bit_lists(p.g)
    out = set()
    for perm in permutations(range(n)):
        bits = tuple(1 << perm[i] for i in range(n))
        fi, gi = _image(fb, bits), _image(gb, bits)
        out.add((fi, gi))
        if allow_swap:
            out.add((gi, fi))
    return out


def _check_canonical(p: CrossPair) -> None:
    if p.n > CANONICAL_LIMIT:
        raise BudgetError(f"canonical forms enumerate n! relabelings; n must be <= {CANONICAL_LIMIT}")


def canonical_form(p: CrossPair, allow_swap: bool = False) -> CrossPair:
    """Lexicographically least relabelling of (F, G) under permutations of [n].

    With ``allow_swap`` (only meaningful when k = l) the order of the two
    families is ignored as well.
    """
    _check_canonical(p)
    if allow_swap and p.k != p.l:
        raise FamilyError("swapping the families needs equal uniformities")
    fi, gi = min(_orbit(p, allow_swap))
    return CrossPair(Family(p.n, p.k, fi), Family(p.n, p.l, gi))


def classify_witnesses(pairs: list[CrossPair], allow_swap: bool = False) -> list[CrossPair]:
    """One canonical representative per isomorphism class, sorted."""
    seen: set = set()
    reps = []
    for p in pairs:
        key = (p.f.members, p.g.members)
        if key in seen:
            continue
        _check_canonical(p)
        orbit = _orbit(p, allow_swap)
        seen |= orbit
        fi, gi = min(orbit)
        reps.append(CrossPair(Family(p.n, p.k, fi), Family(p.n, p.l, gi)))
    reps.sort(key=lambda q: (q.f.members, q.g.members))
    return reps


# ---------------------------------------------------------------------------
# driver
# ---------------------------------------------------------------------------

def _block_job(args: tuple) -> _Partial:
    return _run_block(*args)


def _merge(parts: list[_Partial]) -> _Partial:
    best = max(p.best for p in parts)
    out = _Partial(best=best, witnesses=[], nodes=sum(p.nodes for p in parts))
    out.complete = all(p.complete for p in parts)
    out.trimmed = sum(p.trimmed for p in parts)
    for p in parts:
        if p.best == best:
            out.witnesses.extend(p.witnesses)
    return out


def _default_jobs() -> int:
    try:
        return max(1, int(os.environ.get("XFAM_JOBS", "1")))
    except ValueError:
        return 1


def max_pair(cfg: SearchConfig, allow_swap: bool | None = None) -> SearchResult:
    """Run the configured search and reduce its optima to isomorphism classes.

    ``allow_swap`` defaults to True when k = l: then (F, G) and (G, F) describe
    the same configuration and are counted as one class.
    """
    start = time.monotonic()
    deadline = start + cfg.time_budget if cfg.time_budget is not None else None
    if cfg.strategy is Strategy.INITIAL_DOWNSETS:
        part = _run_downsets(cfg, deadline)
    else:
        prune = cfg.strategy is Strategy.BRANCH_AND_BOUND
        N = math.comb(cfg.n, cfg.l)
        jobs = cfg.jobs
        common = (cfg.n, cfg.k, cfg.l, cfg.objective, cfg.constraint, cfg.min_g, prune)
        if jobs <= 1 or N < 8:
            part = _run_block(*common, 0, 0, cfg.node_budget, deadline)
        else:
            depth = min(N - 1, max(1, (4 * jobs - 1).bit_length()))
            tasks = [common + (pat, depth, cfg.node_budget, deadline) for pat in range(1 << depth)]
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                part = _merge(list(pool.map(_block_job, tasks)))

    t = _tables(cfg.n, cfg.k, cfg.l)
    pairs = [
        CrossPair(
            Family(cfg.n, cfg.k, tuple(t.k_sets[i] for i in range(len(t.k_sets)) if fb >> i & 1)),
            Family(cfg.n, cfg.l, tuple(t.g_sets[i] for i in range(len(t.g_sets)) if gb >> i & 1)),
        )
        for gb, fb in part.witnesses
    ]
    if allow_swap is None:
        allow_swap = cfg.k == cfg.l
    reps = classify_witnesses(pairs, allow_swap) if cfg.n <= CANONICAL_LIMIT else pairs
    best = part.best if part.best >= 0 else None
    stats = {"allow_swap": allow_swap}
    if cfg.strategy is Strategy.INITIAL_DOWNSETS:
        stats["non_initial_transversals"] = part.trimmed
    return SearchResult(
        config=cfg,
        best_value=best,
        witnesses=reps,
        class_count=len(reps),
        enumerated=part.nodes,
        complete=part.complete,
        raw_witness_count=len(pairs),
        wall_time_ms=(time.monotonic() - start) * 1000.0,
        stats=stats,
    )


def validate_witness(p: CrossPair, cfg: SearchConfig, value: int) -> list[str]:
    """Re-check a reported optimum from scratch; returns the list of problems."""
    problems = []
    if not is_cross_intersecting(p):
        problems.append("not cross-intersecting")
    if cfg.constraint is Constraint.CI_ONLY_WITH_MIN_G:
        if not p.f.members:
            problems.append("F empty")
        if len(p.g) < cfg.min_g:
            problems.append("|G| below minimum")
    else:
        if not (is_non_trivial(p.f) and is_non_trivial(p.g)):
            problems.append("a family is trivial")
        if cfg.constraint is Constraint.NONTRIVIAL_BOTH_AND_INITIAL and not (is_initial(p.f) and is_initial(p.g)):
            problems.append("a family is not initial")
    got = len(p.f) + len(p.g) if cfg.objective is Objective.SUM else len(p.f) * len(p.g)
    if got != value:
        problems.append(f"value {got} != {value}")
    if cfg.objective is Objective.SUM and cfg.constraint is Constraint.NONTRIVIAL_BOTH and not is_saturated(p):
        problems.append("optimum is not saturated")
    return problems


# ---------------------------------------------------------------------------
# theorem checks
# ---------------------------------------------------------------------------

@dataclass
class TheoremReport:
    theorem: str
    n: int
    k: int
    l: int
    status: str                 # PASS, FAIL or SKIPPED
    expected: int | None = None
    observed: int | None = None
    class_count: int | None = None
    detail: str = ""


def _expected(theorem: str, n: int, k: int, l: int) -> tuple[int, SearchConfig, Callable[[SearchResult], str]]:
    from . import bounds

    none: Callable[[SearchResult], str] = lambda r: ""

    def unique_unless_k2(r: SearchResult) -> str:
        want = 3 if k == l == 2 else 1
        return "" if r.class_count == want else f"class_count {r.class_count} != {want}"

    if theorem == "1.5":
        if k != l:
            raise BudgetError("h(n, k) concerns two k-uniform families")
        cfg = SearchConfig(n, k, k)
        return bounds.h_nk(n, k), cfg, unique_unless_k2
    if theorem == "4.1":
        if not (k >= l >= 2 and n > k + l):
            raise BudgetError("needs k >= l >= 2 and n > k + l")
        return bounds.h_nkl(n, k, l), SearchConfig(n, k, l), unique_unless_k2
    if theorem == "1.6":
        if k != l:
            raise BudgetError("concerns two k-uniform families")
        cfg = SearchConfig(n, k, k, constraint=Constraint.NONTRIVIAL_BOTH_AND_INITIAL, strategy=Strategy.INITIAL_DOWNSETS)
        return bounds.initial_bound(n, k), cfg, none
    if theorem == "3.3":
        if not k >= l >= 2:
            raise BudgetError("needs k >= l >= 2")
        cfg = SearchConfig(n, k, l, constraint=Constraint.NONTRIVIAL_BOTH_AND_INITIAL, strategy=Strategy.INITIAL_DOWNSETS)
        return bounds.g_nkl(n, k, l), cfg, none
    if theorem == "1.7":
        cfg = SearchConfig(n, k, l, constraint=Constraint.CI_ONLY_WITH_MIN_G, min_g=1)

        def strict(r: SearchResult) -> str:
            if n > k + l and (k, l) != (2, 2):
                big = [w for w in r.witnesses if len(w.g) > 1]
                if big:
                    return f"{len(big)} optimal classes with |G| > 1"
            return ""

        return bounds.ft_bound(n, k, l), cfg, strict
    if theorem == "6.1":
        if k != l:
            raise BudgetError("concerns two k-uniform families")
        cfg = SearchConfig(n, k, k, objective=Objective.PRODUCT)
        return bounds.product_bound(n, k), cfg, none
    raise BudgetError(f"unknown theorem id {theorem!r}")


THEOREMS = ("1.5", "1.6", "1.7", "3.3", "4.1", "6.1")


def verify_theorem(theorem: str, n: int, k: int, l: int, jobs: int = 1) -> TheoremReport:
    from .bounds import DomainError

    try:
        expected, cfg, extra = _expected(theorem, n, k, l)
        if jobs != 1:
            cfg = SearchConfig(**{**cfg.__dict__, "jobs": jobs})
    except (BudgetError, DomainError, FamilyError) as exc:
        return TheoremReport(theorem, n, k, l, "SKIPPED", detail=str(exc))
    r = max_pair(cfg)
    problems = []
    if not r.complete:
        problems.append("search incomplete")
    if r.best_value != expected:
        problems.append(f"search {r.best_value} != formula {expected}")
    for w in r.witnesses:
        problems += validate_witness(w, cfg, r.best_value)
    note = extra(r)
    if note:
        problems.append(note)
    status = "FAIL" if problems else "PASS"
    return TheoremReport(theorem, n, k, l, status, expected, r.best_value, r.class_count, "; ".join(problems))
