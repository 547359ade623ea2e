"""The shifting operator S_ij and simultaneous shifting of cross pairs.

``shift_ad_extremis`` keeps shifting a cross-intersecting pair, renouncing
any S_ij that would turn one of the families into a star, until every pair
1 <= i < j <= n is either fixed, F-star-forming or G-star-forming.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from .family import (
    CrossPair,
    Family,
    FamilyError,
    common_intersection,
    element_sum,
    elements_of,
    is_cross_intersecting,
    is_non_trivial,
    is_star,
    popcount,
    restrict,
)


class PairType(str, Enum):
    A = "A"  # S_ij fixes both families
    B = "B"  # S_ij(F) is a star
    C = "C"  # S_ij(G) is a star


def _bits(i: int, j: int) -> tuple[int, int]:
    if i == j:
        raise FamilyError("shifting needs i != j")
    return 1 << (i - 1), 1 << (j - 1)


def shift_set(s: int, i: int, j: int, home: Family | frozenset[int] | set[int]) -> int:
    """S_ij(s) relative to the family `home`."""
    bi, bj = _bits(i, j)
    if s & bi or not s & bj:
        return s
    moved = (s ^ bj) | bi
    return s if moved in home else moved


def shift_family(f: Family, i: int, j: int) -> Family:
    bi, bj = _bits(i, j)
    ms = f._memberset
    out = []
    for s in f.members:
        if s & bj and not s & bi:
            moved = (s ^ bj) | bi
            out.append(s if moved in ms else moved)
        else:
            out.append(s)
    return f.with_members(out)


def shift_to_initial(f: Family) -> Family:
    """Apply S_ij (i < j) until no shift moves anything."""
    n = f.n
    changed = True
    while changed:
        changed = False
        for i in range(1, n + 1):
            for j in range(i + 1, n + 1):
                s = shift_family(f, i, j)
                if s.members != f.members:
                    f = s
                    changed = True
    return f


@dataclass(frozen=True)
class StarDiagnostic:
    forms_star: bool
    center: int | None = None
    disjoint_links: bool | None = None   # F(i) and F(j) share no set
    all_meet_pair: bool | None = None    # every member meets {i, j}


def star_formation_witness(f: Family, i: int, j: int) -> StarDiagnostic:
    """Check whether S_ij makes the non-trivial family F a star, and if so why."""
    if not is_non_trivial(f):
        raise FamilyError("star formation is only meaningful for non-trivial families")
    s = shift_family(f, i, j)
    if not is_star(s):
        return StarDiagnostic(False)
    core = common_intersection(s)
    bi, bj = _bits(i, j)
    center = i if core & bi else elements_of(core)[0]
    fi = {m for m in restrict(f, bi, bj).members}
    fj = {m for m in restrict(f, bj, bi).members}
    return StarDiagnostic(
        True,
        center=center,
        disjoint_links=not (fi & fj),
        all_meet_pair=all(m & (bi | bj) for m in f.members),
    )


def classify_pair(p: CrossPair, i: int, j: int) -> PairType | None:
    """Tag (i, j) as A, B or C on the current pair; None if S_ij still moves sets."""
    if i >= j:
        raise FamilyError("classify_pair expects i < j")
    sf = shift_family(p.f, i, j)
    sg = shift_family(p.g, i, j)
    if sf.members == p.f.members and sg.members == p.g.members:
        return PairType.A
    if is_star(sf):
        return PairType.B
    if is_star(sg):
        return PairType.C
    return None


def potential(p: CrossPair) -> int:
    """Sum of all elements over all members of both families."""
    return element_sum(p.f) + element_sum(p.g)


@dataclass(frozen=True)
class SkippedShift:
    i: int
    j: int
    stars: tuple[str, ...]  # "F", "G" or both


@dataclass(frozen=True)
class AdExtremisReport:
    initial_pair: CrossPair
    final_pair: CrossPair
    shifts_applied: tuple[tuple[int, int], ...]
    skipped: tuple[SkippedShift, ...]
    classification: dict[tuple[int, int], PairType] = field(hash=False)
    potential_trace: tuple[int, ...]
    rounds: int


def shift_ad_extremis(p: CrossPair, max_rounds: int | None = None) -> AdExtremisReport:
    """Shift a non-trivial CI pair ad extremis.

    Pairs are swept in lexicographic order, in rounds; a round revisits every
    pair including the ones renounced earlier.  The process stops after the
    first round in which nothing was shifted.
    """
    if not is_cross_intersecting(p):
        raise FamilyError("shifting ad extremis needs a cross-intersecting pair")
    if not (is_non_trivial(p.f) and is_non_trivial(p.g)):
        raise FamilyError("shifting ad extremis needs two non-trivial families")
    n = p.n
    start = p
    f, g = p.f, p.g
    applied: list[tuple[int, int]] = []
    skipped: list[SkippedShift] = []
    trace = [potential(p)]
    rounds = 0
    while True:
        rounds += 1
        moved = False
        for i in range(1, n + 1):
            for j in range(i + 1, n + 1):
                sf = shift_family(f, i, j)
                sg = shift_family(g, i, j)
                if sf.members == f.members and sg.members == g.members:
                    continue
                stars = tuple(name for name, s in (("F", sf), ("G", sg)) if is_star(s))
                if stars:
                    skipped.append(SkippedShift(i, j, stars))
                    continue
                f, g = sf, sg
                applied.append((i, j))
                trace.append(element_sum(f) + element_sum(g))
                moved = True
        if not moved:
            break
        if max_rounds is not None and rounds >= max_rounds:
            raise RuntimeError("shifting ad extremis did not settle within the round limit")
    final = CrossPair(f, g)
    classification = {}
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            tag = classify_pair(final, i, j)
            # a full round with no shift means every pair is fixed or star-forming
            assert tag is not None, (i, j)
            classification[(i, j)] = tag
    return AdExtremisReport(
        initial_pair=start,
        final_pair=final,
        shifts_applied=tuple(applied),
        skipped=tuple(skipped),
        classification=classification,
        potential_trace=tuple(trace),
        rounds=rounds,
    )


def is_shifted_ad_extremis(p: CrossPair) -> bool:
    return all(
        classify_pair(p, i, j) is not None
        for i in range(1, p.n + 1)
        for j in range(i + 1, p.n + 1)
    )


@dataclass(frozen=True)
class PairStructure:
    i: int
    j: int
    tag: PairType
    status: str                 # "star", "empty" or "case-A-candidate"
    z: int | None = None        # element common to F(i-bar, j-bar)
    K: int | None = None
    H: int | None = None
    Z: int | None = None        # {i, j, x, y}
    z_is_transversal: bool | None = None
    xy_type: PairType | None = None


def structure_report(r: AdExtremisReport) -> list[PairStructure]:
    """Case-B style structure of every type-C pair of a finished run.

    For a type-C pair (i, j) the members of G split into those meeting
    {i, j} in i only and in j only; K, H are chosen from these two classes
    with |K n H| maximal, x in K \\ H and y in H \\ K, and Z = {i, j, x, y}.
    """
    p = r.final_pair
    out = []
    for (i, j), tag in sorted(r.classification.items()):
        if tag is not PairType.C:
            continue
        bi, bj = 1 << (i - 1), 1 << (j - 1)
        avoid = restrict(p.f, 0, bi | bj)
        if not avoid.members:
            status, z = "empty", None
        elif is_star(avoid):
            status, z = "star", elements_of(common_intersection(avoid))[0]
        else:
            status, z = "case-A-candidate", None
        ks = [m for m in p.g.members if m & bi and not m & bj]
        hs = [m for m in p.g.members if m & bj and not m & bi]
        K = H = Z = None
        z_transversal = None
        xy_type = None
        if ks and hs:
            K, H = max(((a, b) for a in ks for b in hs), key=lambda ab: (popcount(ab[0] & ab[1]), -ab[0], -ab[1]))
            xs = [x for x in elements_of(K & ~H) if x != i]
            ys = [y for y in elements_of(H & ~K) if y != j]
            if xs and ys:
                x, y = xs[0], ys[0]
                Z = bi | bj | 1 << (x - 1) | 1 << (y - 1)
                z_transversal = all(m & Z for m in p.f.members)
                a, b = min(x, y), max(x, y)
                xy_type = r.classification.get((a, b))
        out.append(PairStructure(i, j, tag, status, z, K, H, Z, z_transversal, xy_type))
    return out

