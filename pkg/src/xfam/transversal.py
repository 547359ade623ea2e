"""Transversal families, saturation and r-transversal counts."""
from __future__ import annotations

from dataclasses import dataclass

from .bounds import binom
from .family import (
    CrossPair,
    Family,
    FamilyError,
    is_cross_intersecting,
    is_non_trivial,
    k_subsets,
    popcount,
    prefix,
)


def transversal_family(f: Family, t: int, ground: int | None = None, allow_empty: bool = False) -> Family:
    """T^(t)(F): every t-subset of `ground` meeting all members of F.

    With F empty every t-set qualifies vacuously; that case must be requested
    explicitly through ``allow_empty``.
    """
    if not f.members and not allow_empty:
        raise FamilyError("transversals of the empty family need allow_empty=True")
    g = prefix(f.n) if ground is None else ground
    ms = f.members
    out = tuple(h for h in k_subsets(g, t) if all(h & m for m in ms))
    return Family(f.n, t, out, g)


def saturate(p: CrossPair) -> CrossPair:
    """Enlarge F to T^(k)(G), then G to T^(l)(F)."""
    if not is_cross_intersecting(p):
        raise FamilyError("only cross-intersecting pairs can be saturated")
    f = transversal_family(p.g, p.k)
    g = transversal_family(f, p.l)
    out = CrossPair(f, g)
    assert is_saturated(out)
    return out


def is_saturated(p: CrossPair) -> bool:
    if not p.f.members or not p.g.members:
        return False
    return (
        transversal_family(p.g, p.k).members == p.f.members
        and transversal_family(p.f, p.l).members == p.g.members
    )


def t2_graph(f: Family) -> Family:
    """Pairs {i, j} met by every member of F (the edges of T_2(F))."""
    return transversal_family(f, 2, allow_empty=True)


@dataclass(frozen=True)
class TransversalCounts:
    counts: tuple[int, ...]   # counts[r-1] = t_r
    ground: int

    def t(self, r: int) -> int:
        return self.counts[r - 1]

    @property
    def ground_size(self) -> int:
        return popcount(self.ground)


def transversal_counts(g: Family, ground: int, up_to: int) -> TransversalCounts:
    """t_r = number of r-subsets of `ground` meeting every member of G, r = 1..up_to."""
    if not g.members:
        raise FamilyError("transversal counts need a nonempty family")
    if any(m & ~ground for m in g.members):
        raise FamilyError("members must lie inside the counting ground set")
    ms = g.members
    counts = tuple(
        sum(1 for h in k_subsets(ground, r) if all(h & m for m in ms))
        for r in range(1, up_to + 1)
    )
    return TransversalCounts(counts, ground)


def noncover_lower_bound_check(g: Family, r: int) -> bool:
    """For non-trivial G of l-subsets of [2l] and 2 <= r < l: C(2l, r) - t_r >= 2 C(l, r)."""
    l = g.k
    if not 2 <= r < l:
        raise FamilyError(f"r must satisfy 2 <= r < {l}, got {r}")
    ground = prefix(2 * l)
    if g.n < 2 * l or any(m & ~ground for m in g.members):
        raise FamilyError("G must consist of l-subsets of [2l]")
    if not is_non_trivial(g):
        raise FamilyError("G must be non-trivial")
    t_r = transversal_counts(g, ground, r).t(r)
    return binom(2 * l, r) - t_r >= 2 * binom(l, r)
