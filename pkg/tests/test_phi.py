from __future__ import annotations

import pytest

from xfam.constructions import initial_extremal_pair, star_pair
from xfam.family import CrossPair, Family, FamilyError, is_cross_intersecting, mask_of
from xfam.phi import SwapRequired, compute_p, ft_counting_bound, phi, verify_lemma_5_1
from xfam.search import initial_families, largest_initial_partner


def test_p_examples():
    assert compute_p(mask_of([3, 5]), 2, 2) == 0
    assert compute_p(mask_of([1, 3]), 2, 2) == 2
    assert compute_p(mask_of([1, 3]), 3, 2) == 2
    with pytest.raises(FamilyError):
        compute_p(mask_of([1, 2, 3]), 2, 2)


def test_phi_examples():
    assert phi(mask_of([1, 3]), 2, 2) == mask_of([2, 4])
    assert phi(mask_of([1, 3]), 3, 2) == mask_of([2, 4, 5])
    with pytest.raises(SwapRequired, match="interchange"):
        phi(mask_of([3, 5]), 2, 2)


def test_phi_of_g_l_pattern():
    # G_l = [l+1] minus {l} has p = l and phi(G_l) = (l, l+2, ..., k+l)
    for k, l in ((3, 2), (4, 3), (5, 3), (4, 4), (6, 4)):
        g = mask_of([x for x in range(1, l + 2) if x != l])
        assert compute_p(g, k, l) == l
        assert phi(g, k, l) == mask_of([l] + list(range(l + 2, k + l + 1)))


def test_verify_on_extremal_pair():
    rep = verify_lemma_5_1(initial_extremal_pair(7, 3, 2))
    assert rep.ok and rep.injective and rep.disjoint_from_f and rep.meets_prefix


def test_verify_on_star_pair():
    p = star_pair(5)
    assert verify_lemma_5_1(p).ok
    assert ft_counting_bound(p) == 7 >= p.total() - 1


def test_counting_bound_extremal():
    p = initial_extremal_pair(7, 3, 2)
    assert p.total() - 1 <= ft_counting_bound(p)


def test_verify_rejects_bad_input():
    with pytest.raises(FamilyError):
        verify_lemma_5_1(CrossPair(Family.from_sets(5, 2, [(2, 3)]), Family.from_sets(5, 2, [(1, 2)])))
    with pytest.raises(FamilyError):
        verify_lemma_5_1(CrossPair(Family(5, 2, ()), Family.from_sets(5, 2, [(1, 2)])))


@pytest.mark.parametrize("n,k,l", [(6, 3, 2), (5, 2, 2), (7, 3, 2), (6, 3, 3)])
def test_every_initial_g_with_largest_partner(n, k, l):
    count = 0
    for g in initial_families(n, l):
        if not g.members:
            continue
        f = largest_initial_partner(g, k)
        if not f.members:
            continue
        p = CrossPair(f, g)
        assert is_cross_intersecting(p)
        rep = verify_lemma_5_1(p)
        assert rep.ok, rep.violations
        assert p.total() - 1 <= ft_counting_bound(p)
        count += 1
    assert count > 0
