from __future__ import annotations

import random
from itertools import combinations

import pytest

from xfam.constructions import disjoint_pair_construction, k2_extra_optima, triangle_family
from xfam.family import CrossPair, Family, FamilyError, elements_of, is_initial, k_subsets, mask_of, prefix
from xfam.search import (
    BudgetError,
    Constraint,
    Objective,
    SearchConfig,
    Strategy,
    canonical_form,
    classify_witnesses,
    initial_families,
    iter_downsets,
    largest_initial_partner,
    max_pair,
    validate_witness,
    verify_theorem,
)


def brute_best(n, k, l, objective="sum", constraint="nontrivial", min_g=1):
    """Enumerate every pair of families directly (only for tiny n)."""
    ks = [frozenset(c) for c in combinations(range(1, n + 1), k)]
    ls = [frozenset(c) for c in combinations(range(1, n + 1), l)]

    def subsets(items):
        for r in range(len(items) + 1):
            yield from combinations(items, r)

    def nontrivial(fam):
        return bool(fam) and not frozenset.intersection(*fam)

    best = None
    for g in subsets(ls):
        if constraint == "ci-min-g" and len(g) < min_g:
            continue
        if constraint == "nontrivial" and not nontrivial(g):
            continue
        allowed = [a for a in ks if all(a & b for b in g)]
        for f in subsets(allowed):
            if constraint == "nontrivial" and not nontrivial(f):
                continue
            if constraint == "ci-min-g" and not f:
                continue
            v = len(f) + len(g) if objective == "sum" else len(f) * len(g)
            if best is None or v > best:
                best = v
    return best


@pytest.mark.parametrize(
    "n,k,l,objective,constraint",
    [
        (4, 2, 2, "sum", "nontrivial"),
        (4, 2, 2, "product", "nontrivial"),
        (4, 2, 2, "sum", "ci-min-g"),
        (5, 2, 1, "sum", "ci-min-g"),
        (5, 3, 2, "sum", "nontrivial"),
        (4, 3, 1, "sum", "ci-min-g"),
    ],
)
def test_search_matches_brute_force(n, k, l, objective, constraint):
    cfg = SearchConfig(n, k, l, objective=Objective(objective), constraint=Constraint(constraint))
    assert max_pair(cfg).best_value == brute_best(n, k, l, objective, constraint)


def test_worked_examples():
    r = max_pair(SearchConfig(5, 2, 2))
    assert (r.best_value, r.class_count) == (6, 3)
    r = max_pair(SearchConfig(6, 3, 2))
    assert (r.best_value, r.class_count) == (14, 1)
    r = max_pair(SearchConfig(6, 3, 3, constraint=Constraint.NONTRIVIAL_BOTH_AND_INITIAL,
                              strategy=Strategy.INITIAL_DOWNSETS))
    assert r.best_value == 20
    assert max_pair(SearchConfig(5, 2, 2, objective=Objective.PRODUCT)).best_value == 9


def test_classes_without_swap():
    r = max_pair(SearchConfig(5, 2, 2), allow_swap=False)
    assert r.class_count == 4


def test_unique_optimum_is_disjoint_construction():
    r = max_pair(SearchConfig(6, 3, 2))
    assert r.witnesses[0] == canonical_form(disjoint_pair_construction(6, 3, 2))


def test_witnesses_validate():
    for cfg in (SearchConfig(6, 3, 2), SearchConfig(5, 2, 2, objective=Objective.PRODUCT),
                SearchConfig(5, 3, 2, constraint=Constraint.CI_ONLY_WITH_MIN_G)):
        r = max_pair(cfg)
        assert r.complete and r.raw_witness_count >= r.class_count >= 1
        for w in r.witnesses:
            assert validate_witness(w, cfg, r.best_value) == []


def test_initial_constraint_both_strategies_agree():
    for n, k, l in ((6, 3, 2), (5, 2, 2), (6, 2, 2)):
        a = max_pair(SearchConfig(n, k, l, constraint=Constraint.NONTRIVIAL_BOTH_AND_INITIAL))
        b = max_pair(SearchConfig(n, k, l, constraint=Constraint.NONTRIVIAL_BOTH_AND_INITIAL,
                                  strategy=Strategy.INITIAL_DOWNSETS))
        assert a.best_value == b.best_value


@pytest.mark.parametrize("n,k,l", [(5, 2, 2), (6, 3, 2), (6, 2, 2), (5, 3, 2)])
def test_branch_and_bound_agrees(n, k, l):
    ex = max_pair(SearchConfig(n, k, l))
    bb = max_pair(SearchConfig(n, k, l, strategy=Strategy.BRANCH_AND_BOUND))
    assert (ex.best_value, ex.class_count) == (bb.best_value, bb.class_count)
    assert bb.enumerated <= ex.enumerated


def test_parallel_agrees():
    one = max_pair(SearchConfig(6, 3, 2))
    many = max_pair(SearchConfig(6, 3, 2, jobs=3))
    assert (one.best_value, one.class_count) == (many.best_value, many.class_count)
    assert [(w.f, w.g) for w in one.witnesses] == [(w.f, w.g) for w in many.witnesses]


def test_budget_rule():
    with pytest.raises(BudgetError, match=r"2\^C\(n,l\)"):
        SearchConfig(9, 3, 2)
    with pytest.raises(BudgetError):
        SearchConfig(6, 3, 2, strategy=Strategy.INITIAL_DOWNSETS)
    with pytest.raises(FamilyError):
        SearchConfig(6, 2, 3)


def test_node_budget_marks_incomplete():
    r = max_pair(SearchConfig(6, 3, 2, node_budget=50))
    assert not r.complete and r.proof_of_exhaustiveness == "INCOMPLETE"


def _downset_oracle(n, t):
    sets = list(k_subsets(prefix(n), t))

    def below(a, b):
        return all(x <= y for x, y in zip(elements_of(a), elements_of(b)))

    count = 0
    for bits in range(1 << len(sets)):
        chosen = [s for i, s in enumerate(sets) if bits >> i & 1]
        cs = set(chosen)
        if all(a in cs for b in chosen for a in sets if below(a, b)):
            count += 1
    return count


@pytest.mark.parametrize("n,t", [(4, 2), (5, 2), (6, 2), (5, 3), (4, 1)])
def test_downset_count_against_oracle(n, t):
    assert sum(1 for _ in iter_downsets(n, t)) == _downset_oracle(n, t)


def test_downset_counts():
    assert sum(1 for _ in iter_downsets(6, 3)) == 66
    assert sum(1 for _ in iter_downsets(7, 3)) == 352
    assert all(is_initial(f) for f in initial_families(6, 3))


def test_largest_initial_partner():
    g = Family.from_sets(6, 2, [(1, 2), (1, 3), (2, 3)])
    f = largest_initial_partner(g, 3)
    assert is_initial(f)
    assert all(all(a & b for b in g) for a in f)
    assert len(f) == sum(1 for m in k_subsets(prefix(6), 3) if (m & 0b111).bit_count() >= 2)


def test_canonical_form_invariance():
    p = disjoint_pair_construction(6, 3, 2)
    rng = random.Random(7)
    perm = list(range(1, 7))
    rng.shuffle(perm)

    def relabel(f):
        return Family(f.n, f.k, tuple(mask_of(perm[x - 1] for x in elements_of(m)) for m in f))

    q = CrossPair(relabel(p.f), relabel(p.g))
    assert canonical_form(q) == canonical_form(p)


def test_canonical_forms_distinguish_k2_exceptions():
    a, b = k2_extra_optima(5)
    assert canonical_form(a, allow_swap=True) != canonical_form(b, allow_swap=True)
    assert len(classify_witnesses([a, b, a], allow_swap=True)) == 2


def test_canonical_form_limits():
    t = triangle_family(10)
    with pytest.raises(BudgetError):
        canonical_form(CrossPair(t, t))
    with pytest.raises(FamilyError):
        canonical_form(disjoint_pair_construction(6, 3, 2), allow_swap=True)


def test_verify_theorem():
    r = verify_theorem("4.1", 6, 3, 2)
    assert (r.status, r.observed, r.class_count) == ("PASS", 14, 1)
    r = verify_theorem("1.5", 5, 2, 2)
    assert (r.status, r.class_count) == ("PASS", 3)
    assert verify_theorem("3.3", 6, 3, 2).status == "PASS"
    assert verify_theorem("1.6", 6, 3, 3).status == "PASS"
    assert verify_theorem("6.1", 5, 2, 2).status == "PASS"
    assert verify_theorem("1.7", 6, 3, 2).status == "PASS"
    assert verify_theorem("4.1", 9, 3, 2).status == "SKIPPED"
    assert verify_theorem("9.9", 5, 2, 2).status == "SKIPPED"


def test_verify_theorem_1_7_at_the_boundary():
    # n = k + l lies outside the strictness claim: optimum attained, extra optima allowed
    r = verify_theorem("1.7", 5, 3, 2)
    assert r.status == "PASS" and r.observed == 10
