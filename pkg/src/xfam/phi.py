"""The prefix-symmetric-difference injection from G into the k-sets meeting [l].

For an l-set G, p(G) is the largest p with |G n [2p + k - l]| >= p, and
phi(G) = G xor [2p(G) + k - l].  For shifted cross-intersecting F, G this
maps G \\ {[l]} injectively into k-sets meeting [l] that avoid F, which is the
counting argument behind the bound C(n, k) - C(n - l, k) + 1.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .bounds import binom
from .family import (
    CrossPair,
    Family,
    FamilyError,
    is_cross_intersecting,
    is_initial,
    mask_of,
    popcount,
    prefix,
)


class SwapRequired(FamilyError):
    """k = l and p(G) = 0: the roles of F and G have to be interchanged."""


def compute_p(g: int, k: int, l: int) -> int:
    if popcount(g) != l:
        raise FamilyError(f"expected an {l}-set")
    if k < l:
        raise FamilyError("need k >= l")
    best = 0
    for p in range(1, l + 1):
        if popcount(g & prefix(2 * p + k - l)) >= p:
            best = p
    return best


def phi(g: int, k: int, l: int) -> int:
    p = compute_p(g, k, l)
    if k == l and p == 0:
        raise SwapRequired("p(G) = 0 with k = l: interchange F and G first")
    image = g ^ prefix(2 * p + k - l)
    assert popcount(image) == k
    return image


@dataclass
class PhiReport:
    p_values: dict[int, int]
    swapped: bool
    sizes_ok: bool
    injective: bool
    disjoint_from_f: bool
    meets_prefix: bool
    zero_p_witness_ok: bool = True
    violations: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def _orient(pair: CrossPair) -> tuple[Family, Family, bool]:
    """Return (F, G, swapped) with p(G) > 0 on G whenever k = l."""
    f, g = pair.f, pair.g
    k, l = pair.k, pair.l
    if k == l and any(compute_p(x, k, l) == 0 for x in g.members):
        return g, f, True
    return f, g, False


def verify_lemma_5_1(pair: CrossPair) -> PhiReport:
    """Check |phi(G)| = k, injectivity, phi(G) not in F and phi(G) n [l] != {} (G != [l])."""
    if not pair.f.members or not pair.g.members:
        raise FamilyError("both families must be nonempty")
    if not (is_initial(pair.f) and is_initial(pair.g)):
        raise FamilyError("both families must be initial")
    if not is_cross_intersecting(pair):
        raise FamilyError("the pair must be cross-intersecting")
    k, l, n = pair.k, pair.l, pair.n
    if n < k + l:
        raise FamilyError("need n >= k + l")
    violations: list[str] = []

    zero_ok = True
    if k == l:
        odd = mask_of(range(3, 2 * l + 2, 2))
        for fam, name in ((pair.f, "F"), (pair.g, "G")):
            if any(compute_p(x, k, l) == 0 for x in fam.members):
                if odd not in fam:
                    zero_ok = False
                    violations.append(f"p = 0 in {name} but (3, 5, ..., 2l+1) missing")

    f, g, swapped = _orient(pair)
    p_values = {x: compute_p(x, k, l) for x in g.members}
    images: dict[int, int] = {}
    sizes_ok = injective = disjoint = meets = True
    first = prefix(l)
    for x in g.members:
        try:
            y = phi(x, k, l)
        except SwapRequired:
            sizes_ok = injective = disjoint = meets = False
            violations.append("p(G) = 0 on both sides")
            break
        if popcount(y) != k or y & ~prefix(n):
            sizes_ok = False
            violations.append(f"|phi({x:#x})| != k")
        if y in images:
            injective = False
            violations.append(f"phi not injective at {x:#x}")
        images[y] = x
        if y in f:
            disjoint = False
            violations.append(f"phi({x:#x}) lies in F")
        if x != first and not y & first:
            meets = False
            violations.append(f"phi({x:#x}) misses [l]")
    return PhiReport(p_values, swapped, sizes_ok, injective, disjoint, meets, zero_ok, violations)


def ft_counting_bound(pair: CrossPair) -> int:
    """|H| for H = k-sets meeting [l], after certifying F + phi(G \\ {[l]}) fits in H disjointly."""
    report = verify_lemma_5_1(pair)
    if not report.ok:
        raise FamilyError("injection certificate failed: " + "; ".join(report.violations))
    k, l, n = pair.k, pair.l, pair.n
    f, g, _ = _orient(pair)
    first = prefix(l)
    if first not in g:
        raise FamilyError("[l] is missing from the shifted family G")
    images = {phi(x, k, l) for x in g.members if x != first}
    assert all(y & first for y in images) and all(m & first for m in f.members)
    assert not images & set(f.members)
    h = binom(n, k) - binom(n - l, k)
    assert len(f) + len(images) <= h
    return h
