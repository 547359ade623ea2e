from __future__ import annotations

import pytest

from xfam import bounds
from xfam.constructions import (
    disjoint_pair_construction,
    full_star,
    hilton_milner,
    initial_extremal_pair,
    k2_extra_optima,
    star_pair,
    triangle_family,
)
from xfam.family import (
    CrossPair,
    FamilyError,
    is_cross_intersecting,
    is_initial,
    is_intersecting,
    is_non_trivial,
    is_star,
    prefix,
)


def test_full_star():
    s = full_star(6, 3)
    assert len(s) == 10 and is_intersecting(s) and is_star(s)
    assert full_star(4, 4).members == (prefix(4),)
    assert len(full_star(6, 3, center=4)) == 10
    with pytest.raises(FamilyError):
        full_star(4, 2, center=5)


def test_hilton_milner():
    h = hilton_milner(7, 3)
    assert len(h) == 13 and is_intersecting(h) and is_non_trivial(h) and is_initial(h)
    with pytest.raises(FamilyError):
        hilton_milner(6, 3)


def test_triangle():
    t = triangle_family(7)
    assert len(t) == 13 == len(hilton_milner(7, 3))
    assert triangle_family(3).members == (prefix(3),)
    assert is_cross_intersecting(CrossPair(t, t)) and is_non_trivial(t)


def test_disjoint_pair():
    p = disjoint_pair_construction(7, 3, 2)
    assert p.total() == 18 and (len(p.f), len(p.g)) == (16, 2)
    assert disjoint_pair_construction(7, 3, 3).total() == 29
    assert is_cross_intersecting(p) and is_non_trivial(p.f) and is_non_trivial(p.g)


def test_initial_extremal_pair():
    for n, k, l in ((7, 3, 2), (6, 3, 3), (7, 3, 3), (8, 4, 2)):
        p = initial_extremal_pair(n, k, l)
        assert p.total() == bounds.g_nkl(n, k, l)
        assert is_initial(p.f) and is_initial(p.g) and is_cross_intersecting(p)
        assert is_non_trivial(p.f) and is_non_trivial(p.g)


def test_k2_extras():
    for p in k2_extra_optima(5):
        assert p.total() == 6 and is_cross_intersecting(p)
        assert is_non_trivial(p.f) and is_non_trivial(p.g)


def test_star_pair():
    p = star_pair(5)
    assert is_cross_intersecting(p) and len(p.g) == 4
    for n in range(4, 9):
        assert star_pair(n).total() == bounds.ft_bound(n, 2, 2)
