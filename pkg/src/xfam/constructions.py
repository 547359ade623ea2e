"""The named extremal families, in fixed canonical placements."""
from __future__ import annotations

from .family import CrossPair, Family, FamilyError, interval, k_subsets, mask_of, prefix


def full_star(n: int, k: int, center: int = 1) -> Family:
    if not 1 <= center <= n:
        raise FamilyError(f"center {center} outside [1, {n}]")
    c = 1 << (center - 1)
    return Family(n, k, tuple(m for m in k_subsets(prefix(n), k) if m & c))


def hilton_milner(n: int, k: int) -> Family:
    """Sets through 1 meeting [2, k+1], plus [2, k+1] itself."""
    if not (n > 2 * k and k >= 2):
        raise FamilyError("Hilton-Milner family needs n > 2k >= 4")
    block = interval(2, k + 1)
    members = [m for m in k_subsets(prefix(n), k) if m & 1 and m & block]
    members.append(block)
    return Family(n, k, tuple(members))


def triangle_family(n: int, k: int = 3) -> Family:
    """3-sets meeting [3] in at least two elements."""
    if k != 3:
        raise FamilyError("the triangle family is defined for k = 3")
    if n < 3:
        raise FamilyError("triangle family needs n >= 3")
    t = prefix(3)
    return Family(n, 3, tuple(m for m in k_subsets(prefix(n), 3) if (m & t).bit_count() >= 2))


def disjoint_pair_construction(n: int, k: int, l: int) -> CrossPair:
    """G0 = {[l], [l+1, 2l]}, F0 = every k-set meeting both."""
    if not k >= l >= 1:
        raise FamilyError("need k >= l >= 1")
    if n < k + l:
        raise FamilyError("need n >= k + l")
    u, v = prefix(l), interval(l + 1, 2 * l)
    f0 = Family(n, k, tuple(m for m in k_subsets(prefix(n), k) if m & u and m & v))
    return CrossPair(f0, Family(n, l, (u, v)))


def initial_extremal_pair(n: int, k: int, l: int) -> CrossPair:
    """G = all l-subsets of [l+1], F = k-sets meeting [l+1] in at least two elements."""
    if not k >= l >= 1:
        raise FamilyError("need k >= l >= 1")
    if n < k + l:
        raise FamilyError("need n >= k + l")
    w = prefix(l + 1)
    f = Family(n, k, tuple(m for m in k_subsets(prefix(n), k) if (m & w).bit_count() >= 2))
    return CrossPair(f, Family(n, l, tuple(k_subsets(w, l))))


def k2_extra_optima(n: int) -> list[CrossPair]:
    """The two extra optimal pairs for k = l = 2: the triangle twice, and a pair of paths."""
    if n < 4:
        raise FamilyError("need n >= 4")
    tri = Family(n, 2, tuple(k_subsets(prefix(3), 2)))
    f2 = Family(n, 2, tuple(mask_of(s) for s in ((1, 2), (2, 3), (3, 4))))
    g2 = Family(n, 2, tuple(mask_of(s) for s in ((1, 3), (2, 3), (2, 4))))
    return [CrossPair(tri, tri), CrossPair(f2, g2)]


def star_pair(n: int) -> CrossPair:
    """F = G = {(1, i) : 2 <= i <= n}."""
    s = full_star(n, 2, 1)
    return CrossPair(s, s)


CONSTRUCTIONS = ("star", "hm", "triangle", "disjoint-pair", "initial-pair", "k2-extras")
