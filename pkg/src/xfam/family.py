"""Bitmask families of k-subsets of [n] and the set algebra on them.

Elements are labelled 1..n outside this module and stored as bit positions
0..n-1 inside a Python int.  A family is an immutable, sorted tuple of such
masks together with its ground set and uniformity.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator

MAX_N = 64


class FamilyError(ValueError):
    """Raised when a family operation is called outside its domain."""


# ---------------------------------------------------------------------------
# element-set helpers
# ---------------------------------------------------------------------------

def mask_of(elements: Iterable[int]) -> int:
    """Bitmask of a collection of 1-based elements."""
    m = 0
    for x in elements:
        if x < 1:
            raise FamilyError(f"element {x} is not a positive label")
        m |= 1 << (x - 1)
    return m


def elements_of(mask: int) -> list[int]:
    """Sorted 1-based elements of a bitmask."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length())
        mask ^= low
    return out


def interval(a: int, b: int) -> int:
    """Mask of [a, b] = {a, ..., b}; empty if b < a."""
    if b < a:
        return 0
    a = max(a, 1)
    return ((1 << b) - 1) ^ ((1 << (a - 1)) - 1)


def prefix(m: int) -> int:
    """Mask of [m] = {1, ..., m}."""
    return (1 << m) - 1 if m > 0 else 0


def popcount(mask: int) -> int:
    return mask.bit_count()


def k_subsets(ground: int, k: int) -> Iterator[int]:
    """All k-subsets of the element set `ground`, in increasing mask order."""
    bits = [1 << (x - 1) for x in elements_of(ground)]
    masks = [sum(c) for c in combinations(bits, k)] if 0 <= k <= len(bits) else []
    masks.sort()
    return iter(masks)


def format_set(mask: int) -> str:
    return "{" + ",".join(map(str, elements_of(mask))) + "}"


# ---------------------------------------------------------------------------
# Family
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Family:
    """A k-uniform family over a ground set contained in [n].

    ``ground`` defaults to all of [n]; restricted families such as F(A, B-bar)
    keep the original labels and shrink ``ground`` instead of relabelling.
    """

    n: int
    k: int
    members: tuple[int, ...]
    ground: int = -1

    def __post_init__(self) -> None:
        if not 1 <= self.n <= MAX_N:
            raise FamilyError(f"n must satisfy 1 <= n <= {MAX_N}, got {self.n}")
        full = prefix(self.n)
        ground = full if self.ground == -1 else self.ground
        if ground & ~full:
            raise FamilyError("ground set exceeds [n]")
        if not 0 <= self.k <= popcount(ground):
            raise FamilyError(f"uniformity {self.k} not in [0, {popcount(ground)}]")
        members = tuple(sorted(set(self.members)))
        for m in members:
            if m & ~ground:
                raise FamilyError(f"member {format_set(m)} leaves the ground set")
            if popcount(m) != self.k:
                raise FamilyError(f"member {format_set(m)} is not a {self.k}-set")
        object.__setattr__(self, "ground", ground)
        object.__setattr__(self, "members", members)

    @classmethod
    def from_sets(cls, n: int, k: int, sets: Iterable[Iterable[int]], ground: int = -1) -> Family:
        return cls(n, k, tuple(mask_of(s) for s in sets), ground)

    @classmethod
    def complete(cls, n: int, k: int, ground: int = -1) -> Family:
        """All k-subsets of the ground set."""
        g = prefix(n) if ground == -1 else ground
        return cls(n, k, tuple(k_subsets(g, k)), g)

    def to_sets(self) -> list[list[int]]:
        return [elements_of(m) for m in self.members]

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[int]:
        return iter(self.members)

    def __contains__(self, mask: object) -> bool:
        return mask in self._memberset

    @property
    def _memberset(self) -> frozenset[int]:
        cached = self.__dict__.get("_ms")
        if cached is None:
            cached = frozenset(self.members)
            object.__setattr__(self, "_ms", cached)
        return cached

    def with_members(self, members: Iterable[int]) -> Family:
        return Family(self.n, self.k, tuple(members), self.ground)

    def __str__(self) -> str:
        return "{" + ", ".join(format_set(m) for m in self.members) + "}"


@dataclass(frozen=True)
class CrossPair:
    """A pair (F, G) with F k-uniform, G l-uniform, k >= l, on a common [n]."""

    f: Family
    g: Family

    def __post_init__(self) -> None:
        if self.f.n != self.g.n:
            raise FamilyError("families live on different ground sets")
        if self.f.k < self.g.k:
            raise FamilyError("the first family must have the larger uniformity")

    @property
    def n(self) -> int:
        return self.f.n

    @property
    def k(self) -> int:
        return self.f.k

    @property
    def l(self) -> int:  # noqa: E743
        return self.g.k

    def total(self) -> int:
        return len(self.f) + len(self.g)


# ---------------------------------------------------------------------------
# predicates
# ---------------------------------------------------------------------------

def is_intersecting(f: Family) -> bool:
    ms = f.members
    for a in range(len(ms)):
        x = ms[a]
        if x == 0:
            return False
        for b in range(a + 1, len(ms)):
            if not x & ms[b]:
                return False
    return True


def families_cross_intersect(f: Iterable[int], g: Iterable[int]) -> bool:
    g = tuple(g)
    return all(x & y for x in f for y in g)


def is_cross_intersecting(p: CrossPair) -> bool:
    return families_cross_intersect(p.f.members, p.g.members)


def common_intersection(f: Family) -> int:
    """Intersection of all members; undefined (error) for the empty family."""
    if not f.members:
        raise FamilyError("undefined intersection of the empty family")
    acc = f.ground
    for m in f.members:
        acc &= m
    return acc


def is_star(f: Family) -> bool:
    return bool(f.members) and common_intersection(f) != 0


def is_non_trivial(f: Family) -> bool:
    """Nonempty with empty common intersection."""
    return bool(f.members) and common_intersection(f) == 0


def restrict(f: Family, a: int, b: int) -> Family:
    """F(A, B-bar): members containing A and avoiding B, with A removed.

    The result lives on ground set ground(F) minus (A u B) and has
    uniformity k - |A|.
    """
    if a & b:
        raise FamilyError("restrict needs disjoint include/exclude sets")
    if (a | b) & ~f.ground:
        raise FamilyError("restrict sets must lie in the ground set")
    members = tuple(m & ~a for m in f.members if m & a == a and not m & b)
    return Family(f.n, f.k - popcount(a), members, f.ground & ~(a | b))


def shadow(f: Family, t: int) -> Family:
    """All t-sets contained in some member."""
    if not 0 <= t <= f.k:
        raise FamilyError(f"shadow size {t} outside [0, {f.k}]")
    out: set[int] = set()
    for m in f.members:
        out.update(k_subsets(m, t))
    return Family(f.n, t, tuple(out), f.ground)


def shade(f: Family, t: int, forbidden: int = 0) -> Family:
    """All t-sets of ground(F) minus `forbidden` that contain a member of F."""
    allowed = f.ground & ~forbidden
    if t < f.k:
        raise FamilyError(f"shade size {t} below uniformity {f.k}")
    if t > popcount(allowed):
        raise FamilyError(f"shade size {t} exceeds the {popcount(allowed)} available elements")
    out: set[int] = set()
    for m in f.members:
        if m & forbidden:
            raise FamilyError(f"member {format_set(m)} meets the forbidden set")
        for extra in k_subsets(allowed & ~m, t - f.k):
            out.add(m | extra)
    return Family(f.n, t, tuple(out), allowed)


def precedes(a: int, b: int) -> bool:
    """A precedes B: with both sorted, the i-th element of A is <= that of B."""
    if popcount(a) != popcount(b):
        raise FamilyError("precedes compares sets of equal size")
    # i-th smallest of A <= i-th smallest of B  iff  |A n [x]| >= |B n [x]| for all x
    ca = cb = 0
    while a or b:
        ca += a & 1
        cb += b & 1
        if ca < cb:
            return False
        a >>= 1
        b >>= 1
    return True


def elementary_predecessors(m: int, ground: int) -> Iterator[int]:
    """Sets obtained from m by replacing one element y with y-1 (y-1 not in m).

    These generate the precedes order: A precedes B iff A is reachable from B
    by a sequence of such moves.
    """
    rest = m
    while rest:
        low = rest & -rest
        rest ^= low
        down = low >> 1
        if down and not m & down and down & ground:
            yield m ^ low ^ down


def is_initial(f: Family) -> bool:
    ms = f._memberset
    return all(p in ms for m in f.members for p in elementary_predecessors(m, f.ground))


def initial_interior(f: Family) -> Family:
    """Largest initial subfamily of F (every member keeps all predecessors)."""
    kept: set[int] = set()
    for m in sorted(f.members, key=lambda x: (_element_sum(x), x)):
        if all(p in kept for p in elementary_predecessors(m, f.ground)):
            kept.add(m)
    return f.with_members(kept)


def complement_family(f: Family) -> Family:
    """{ground \\ F : F in f}."""
    g = f.ground
    return Family(f.n, popcount(g) - f.k, tuple(g & ~m for m in f.members), g)


def _element_sum(mask: int) -> int:
    return sum(elements_of(mask))


def element_sum(f: Family) -> int:
    return sum(_element_sum(m) for m in f.members)
