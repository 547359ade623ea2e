from __future__ import annotations

import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from xfam.constructions import disjoint_pair_construction, initial_extremal_pair
from xfam.family import (
    CrossPair,
    Family,
    FamilyError,
    is_cross_intersecting,
    is_initial,
    is_non_trivial,
    mask_of,
)
from xfam.sampling import random_ci_pair
from xfam.shifting import (
    PairType,
    classify_pair,
    is_shifted_ad_extremis,
    potential,
    shift_ad_extremis,
    shift_family,
    shift_set,
    shift_to_initial,
    star_formation_witness,
    structure_report,
)
from xfam.transversal import t2_graph, transversal_family


def fam(n, k, *sets):
    return Family.from_sets(n, k, sets)


def test_shift_set_examples():
    s = mask_of([2, 3])
    assert shift_set(s, 1, 2, {s}) == mask_of([1, 3])
    assert shift_set(s, 1, 2, {mask_of([1, 3]), s}) == s
    assert shift_set(mask_of([1, 3]), 1, 2, set()) == mask_of([1, 3])
    with pytest.raises(FamilyError):
        shift_set(s, 2, 2, {s})


def test_shift_family_examples():
    assert shift_family(fam(4, 2, (2, 3)), 1, 2).to_sets() == [[1, 3]]
    blocked = fam(4, 2, (1, 3), (2, 3))
    assert shift_family(blocked, 1, 2).members == blocked.members


def test_shift_to_initial():
    out = shift_to_initial(fam(4, 2, (2, 4)))
    assert is_initial(out) and len(out) == 1
    two = shift_to_initial(fam(4, 2, (2, 3), (1, 4)))
    assert is_initial(two) and len(two) == 2
    init = fam(5, 2, (1, 2), (1, 3))
    assert shift_to_initial(init).members == init.members


def test_star_formation_examples():
    d = star_formation_witness(fam(4, 2, (1, 3), (2, 4)), 1, 2)
    assert d.forms_star and d.center == 1 and d.disjoint_links and d.all_meet_pair
    assert not star_formation_witness(fam(4, 2, (1, 3), (2, 3), (1, 4)), 1, 2).forms_star
    assert not star_formation_witness(fam(6, 3, (1, 2, 3), (4, 5, 6)), 1, 2).forms_star
    with pytest.raises(FamilyError):
        star_formation_witness(fam(4, 2, (1, 2), (1, 3)), 1, 2)


def test_classify_examples():
    p = initial_extremal_pair(6, 3, 2)
    assert all(classify_pair(p, i, j) is PairType.A for i in range(1, 7) for j in range(i + 1, 7))
    g = fam(4, 2, (1, 3), (2, 4))
    q = CrossPair(transversal_family(g, 2), g)
    assert classify_pair(q, 1, 2) is PairType.C
    with pytest.raises(FamilyError):
        classify_pair(q, 2, 1)


def test_classify_unfinished():
    # a pair where S_12 moves sets without creating a star
    g = fam(5, 2, (2, 3), (2, 4), (3, 4))
    f = transversal_family(g, 2)
    assert classify_pair(CrossPair(f, g), 1, 2) is None


def test_ad_extremis_on_initial_pair():
    r = shift_ad_extremis(initial_extremal_pair(7, 3, 2))
    assert r.shifts_applied == ()
    assert set(r.classification.values()) == {PairType.A}
    assert structure_report(r) == []


def test_ad_extremis_on_disjoint_pair():
    p = disjoint_pair_construction(7, 3, 2)
    r = shift_ad_extremis(p)
    q = r.final_pair
    assert (len(q.f), len(q.g)) == (16, 2)
    assert set(r.classification.values()) & {PairType.B, PairType.C}
    assert is_shifted_ad_extremis(q)
    rep = structure_report(r)
    assert rep and all(s.status == "star" for s in rep)
    assert all(s.Z == mask_of([1, 2, 3, 4]) and s.z_is_transversal for s in rep)


def test_ad_extremis_rejects_trivial():
    with pytest.raises(FamilyError):
        shift_ad_extremis(CrossPair(fam(5, 2, (1, 2), (1, 3)), fam(5, 2, (1, 2))))


@given(st.integers(0, 10**6))
def test_ad_extremis_postconditions(seed):
    rng = random.Random(seed)
    p = random_ci_pair(rng, (4, 7), nontrivial=True)
    r = shift_ad_extremis(p)
    q = r.final_pair
    assert r.potential_trace[0] == potential(p)
    assert r.potential_trace[-1] == potential(q)
    assert list(r.potential_trace) == sorted(set(r.potential_trace), reverse=True)
    assert is_cross_intersecting(q) and is_non_trivial(q.f) and is_non_trivial(q.g)
    assert (len(q.f), len(q.g)) == (len(p.f), len(p.g))
    assert all(tag is not None for tag in r.classification.values())
    assert is_shifted_ad_extremis(q)


@given(st.integers(0, 10**6))
def test_shift_preserves_ci_and_t2(seed):
    rng = random.Random(seed)
    p = random_ci_pair(rng, (3, 8))
    i, j = sorted(rng.sample(range(1, p.n + 1), 2))
    sf, sg = shift_family(p.f, i, j), shift_family(p.g, i, j)
    assert len(sf) == len(p.f) and len(sg) == len(p.g)
    assert is_cross_intersecting(CrossPair(sf, sg))
    assert len(t2_graph(p.f)) <= len(t2_graph(sf))
