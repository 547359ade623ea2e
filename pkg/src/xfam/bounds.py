"""Closed-form extremal bounds and exact checkers for the inequalities behind them.

Everything here is integer or ``Fraction`` arithmetic; no floats are used on
a verification path.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations
from typing import TYPE_CHECKING, Sequence

if TYPE_CHECKING:
    from .family import CrossPair, Family


class DomainError(ValueError):
    """A bound was evaluated outside the parameter range it is stated for."""


def binom(n: int, k: int) -> int:
    """C(n, k), zero when k < 0, k > n or n < 0."""
    if k < 0 or n < 0 or k > n:
        return 0
    return math.comb(n, k)


def _require(cond: bool, what: str) -> None:
    if not cond:
        raise DomainError(f"constraint violated: {what}")


# ---------------------------------------------------------------------------
# closed forms
# ---------------------------------------------------------------------------

def ekr_bound(n: int, k: int) -> int:
    """Largest intersecting k-uniform family: C(n-1, k-1)."""
    _require(k >= 1 and n >= 2 * k, "n >= 2k")
    return binom(n - 1, k - 1)


def hm_bound(n: int, k: int) -> int:
    """Largest non-trivial intersecting family (Hilton-Milner)."""
    _require(k >= 1 and n > 2 * k, "n > 2k")
    return binom(n - 1, k - 1) - binom(n - k - 1, k - 1) + 1


def h_nk(n: int, k: int) -> int:
    """Max |F|+|G| for non-trivial cross-intersecting k-uniform F, G."""
    _require(k >= 1 and n > 2 * k, "n > 2k")
    return 2 + binom(n, k) - 2 * binom(n - k, k) + binom(n - 2 * k, k)


def initial_bound(n: int, k: int) -> int:
    """Max |F|+|G| for non-trivial cross-intersecting initial k-uniform F, G."""
    _require(k >= 1 and n >= 2 * k, "n >= 2k")
    return k + 1 + sum(binom(k + 1, i) * binom(n - k - 1, k - i) for i in range(2, k + 1))


def ft_bound(n: int, k: int, l: int) -> int:
    """Max |F|+|G| for nonempty cross-intersecting F (k-sets), G (l-sets)."""
    _require(k >= l > 0, "k >= l > 0")
    _require(n >= k + l, "n >= k + l")
    return binom(n, k) - binom(n - l, k) + 1


def h_nkl(n: int, k: int, l: int) -> int:
    """|F0|+|G0| for two disjoint l-sets and all k-sets meeting both."""
    _require(k >= l >= 1, "k >= l >= 1")
    _require(n >= k + l, "n >= k + l")
    return binom(n, k) - 2 * binom(n - l, k) + binom(n - 2 * l, k) + 2


def g_nkl(n: int, k: int, l: int) -> int:
    """Max |F|+|G| for non-trivial, shifted, cross-intersecting F (k-sets), G (l-sets)."""
    _require(k >= l >= 1, "k >= l >= 1")
    _require(n >= k + l, "n >= k + l")
    return sum(binom(l + 1, i) * binom(n - l - 1, k - i) for i in range(2, l + 2)) + binom(l + 1, l)


def product_bound(n: int, k: int) -> int:
    """(C(n-1,k-1) - C(n-k-1,k-1) + 1)^2, evaluated for any n, k."""
    return (binom(n - 1, k - 1) - binom(n - k - 1, k - 1) + 1) ** 2


def product_bound_proved(n: int, k: int) -> bool:
    """Whether (n, k) lies where the product bound is a theorem (k >= 6, n > 9k, or k = 2, n >= 4)."""
    return (k >= 6 and n > 9 * k) or (k == 2 and n >= 4)


def cross_family_size(n: int, k: int) -> int:
    """|B| for B = all k-sets meeting two fixed disjoint k-sets."""
    return binom(n, k) - 2 * binom(n - k, k) + binom(n - 2 * k, k)


BOUND_COLUMNS = ("n", "k", "l", "ekr", "hm", "ft", "h_nk", "h_nkl", "g_nkl", "initial", "product")


def bound_table(n: int, k: int, l: int) -> tuple[dict[str, int | None], list[str]]:
    """One row of every closed form; out-of-domain entries are None and noted."""
    row: dict[str, int | None] = {"n": n, "k": k, "l": l}
    notes: list[str] = []
    for name, fn, args in (
        ("ekr", ekr_bound, (n, k)),
        ("hm", hm_bound, (n, k)),
        ("ft", ft_bound, (n, k, l)),
        ("h_nk", h_nk, (n, k)),
        ("h_nkl", h_nkl, (n, k, l)),
        ("g_nkl", g_nkl, (n, k, l)),
        ("initial", initial_bound, (n, k)),
    ):
        try:
            row[name] = fn(*args)
        except DomainError as exc:
            row[name] = None
            notes.append(f"{name}: {exc}")
    row["product"] = product_bound(n, k)
    if not product_bound_proved(n, k):
        notes.append("product: evaluated outside the proved range (k >= 6, n > 9k; or k = 2)")
    return row, notes


# ---------------------------------------------------------------------------
# profiles and normalized densities
# ---------------------------------------------------------------------------

def _window(q: int) -> int:
    return (1 << q) - 1


def profile(f: Family, m: int) -> tuple[int, ...]:
    """(f_0, ..., f_k) with f_i = #{F : |F n [m]| = i}."""
    if not 1 <= m <= f.n:
        raise DomainError(f"window {m} outside [1, {f.n}]")
    w = _window(m)
    counts = [0] * (f.k + 1)
    for s in f.members:
        counts[(s & w).bit_count()] += 1
    return tuple(counts)


@dataclass(frozen=True)
class NormalizedDensity:
    value: Fraction
    p_set: int
    window: int


def trace_count(f: Family, p: int, q: int) -> int:
    """#{F in f : F n [q] = P}."""
    w = _window(q)
    return sum(1 for s in f.members if s & w == p)


def alpha_density(f: Family, p: int, q: int) -> NormalizedDensity:
    """|F(P, [q] \\ P bar)| / C(n - q, k - |P|) as an exact fraction."""
    w = _window(q)
    if p & ~w:
        raise DomainError("P must lie inside the window [q]")
    if p.bit_count() > f.k:
        raise DomainError("|P| exceeds the uniformity")
    denom = binom(f.n - q, f.k - p.bit_count())
    if denom == 0:
        raise DomainError(f"C({f.n - q}, {f.k - p.bit_count()}) = 0, density undefined")
    return NormalizedDensity(Fraction(trace_count(f, p, q), denom), p, q)


def check_initial_monotonicity(f: Family, p: int, r: int, q: int) -> bool:
    """For initial F and P <= R <= [q], |R| <= k: density(P) <= density(R)."""
    from .family import is_initial

    if not is_initial(f):
        raise DomainError("monotonicity of densities is stated for initial families")
    if not 1 <= q < f.n:
        raise DomainError("window must satisfy 1 <= q < n")
    if p & ~r or r & ~_window(q) or r.bit_count() > f.k:
        raise DomainError("need P <= R <= [q] and |R| <= k")
    return alpha_density(f, p, q).value <= alpha_density(f, r, q).value


def check_cross_density(a: Family, b: Family) -> bool:
    """|A|/C(m,a) + |B|/C(m,b) <= 1 for cross-intersecting A, B over [m], m >= a + b."""
    m = a.ground.bit_count()
    if a.ground != b.ground:
        raise DomainError("both families must share the ground set")
    if m < a.k + b.k:
        raise DomainError(f"m = {m} < a + b = {a.k + b.k}")
    return Fraction(len(a), binom(m, a.k)) + Fraction(len(b), binom(m, b.k)) <= 1


def check_sperner_shadow(f: Family, t: int) -> bool:
    """|shadow_t(F)| / C(n, t) >= |F| / C(n, k)."""
    from .family import shadow

    m = f.ground.bit_count()
    return Fraction(len(shadow(f, t)), binom(m, t)) >= Fraction(len(f), binom(m, f.k))


def check_disjoint_density_pairs(pair: CrossPair) -> list[tuple[int, int]]:
    """alpha(P) + beta(Q) <= 1 for disjoint P, Q of [k+1] with 2 <= |P|, |Q| <= k.

    Intended for initial, non-trivial, cross-intersecting k-uniform pairs.
    Returns the violating (P, Q); empty means the claim holds.
    """
    k, n = pair.k, pair.n
    if pair.l != k:
        raise DomainError("stated for two k-uniform families")
    q = k + 1
    if n <= q:
        raise DomainError("need n > k + 1")
    elems = [1 << i for i in range(q)]
    subsets = [sum(c) for s in range(2, k + 1) for c in combinations(elems, s)]
    bad = []
    for p in subsets:
        ap = alpha_density(pair.f, p, q).value
        for qq in subsets:
            if p & qq:
                continue
            if ap + alpha_density(pair.g, qq, q).value > 1:
                bad.append((p, qq))
    return bad


@dataclass(frozen=True)
class WindowComplementTerms:
    lhs: int
    rhs_display: int   # C(n-k-1, k-i) + C(n-k-1, i-1)
    rhs_proof: int     # C(n-k-1, k-i) + C(n-k-i, i-1)

    @property
    def holds(self) -> bool:
        return self.lhs <= self.rhs_display

    @property
    def readings_differ(self) -> bool:
        return (self.lhs <= self.rhs_display) != (self.lhs <= self.rhs_proof)


def window_complement_terms(pair: CrossPair, p: int, q: int) -> WindowComplementTerms:
    """|F(P)| + |G(Q)| + |G([k+1]\\P)| + |F([k+1]\\Q)| against both printed right sides."""
    k, n = pair.k, pair.n
    w = _window(k + 1)
    i = p.bit_count()
    if q.bit_count() != i or p & q or (p | q) & ~w:
        raise DomainError("P, Q must be disjoint i-subsets of [k+1]")
    lhs = (
        trace_count(pair.f, p, k + 1)
        + trace_count(pair.g, q, k + 1)
        + trace_count(pair.g, w & ~p, k + 1)
        + trace_count(pair.f, w & ~q, k + 1)
    )
    return WindowComplementTerms(
        lhs,
        binom(n - k - 1, k - i) + binom(n - k - 1, i - 1),
        binom(n - k - 1, k - i) + binom(n - k - i, i - 1),
    )


# ---------------------------------------------------------------------------
# appropriate sequences
# ---------------------------------------------------------------------------

def is_appropriate(c: Sequence[Fraction | int]) -> bool:
    """Symmetric, nonnegative, nondecreasing up to the middle."""
    m = len(c) - 1
    if m < 0:
        return False
    if any(c[i] != c[m - i] for i in range(m + 1)):
        return False
    half = c[: m // 2 + 1]
    return half[0] >= 0 and all(x <= y for x, y in zip(half, half[1:]))


@dataclass(frozen=True)
class AppropriateSequence:
    entries: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "entries", tuple(Fraction(x) for x in self.entries))
        if not is_appropriate(self.entries):
            raise DomainError(f"{self.entries} is not appropriate")

    def __len__(self) -> int:
        return len(self.entries)

    def __getitem__(self, i: int) -> Fraction:
        return self.entries[i]


def shifted_overlap(a: Sequence, b: Sequence, u: int) -> Fraction:
    return sum((a[i + u] * b[i] for i in range(len(b))), Fraction(0))


def check_appropriate_inequality(a: AppropriateSequence, b: AppropriateSequence, u: int, v: int) -> bool:
    """sum a_{i+u} b_i <= sum a_{i+v} b_i for q > p + 1, 0 <= u < v, u + v <= q - p."""
    q, p = len(a) - 1, len(b) - 1
    if not q > p + 1:
        raise DomainError("need q > p + 1")
    if not 0 <= u < v:
        raise DomainError("need 0 <= u < v")
    if u + v > q - p:
        raise DomainError("need u + v <= q - p")
    return shifted_overlap(a, b, u) <= shifted_overlap(a, b, v)


# ---------------------------------------------------------------------------
# chain identity and the binomial-sum inequality
# ---------------------------------------------------------------------------

MAX_CHAIN_SET = 8


def _weighted_trace(f: Family, s: int, q: int, weight: int) -> Fraction:
    """weight * |f(S, [q])| / C(n-q, |f| - |S|), with the vanishing term read as 0."""
    count = trace_count(f, s, q)
    denom = binom(f.n - q, f.k - s.bit_count())
    if denom == 0:
        assert count == 0
        return Fraction(0)
    return Fraction(weight * count, denom)


def chain_sum(pair: CrossPair, full_range: bool = True) -> Fraction:
    """Left side of the full-chain identity over the window [l+1].

    Each full chain A_0 < A_1 < ... < A_{l+1} of [l+1] with B_i = [l+1] \\ A_i
    contributes C(l+1, i) C(n-l-1, k-i) alpha(A_i) and
    C(l+1, l+1-i) C(n-l-1, i-1) beta(B_i).  With ``full_range`` the index
    runs over 0..l+1; otherwise only over 1..l, which drops the members of F
    that contain [l+1] (only possible when k > l).
    """
    n, k, l = pair.n, pair.k, pair.l
    q = l + 1
    if q > MAX_CHAIN_SET:
        raise DomainError(f"l + 1 = {q} exceeds the enumeration limit {MAX_CHAIN_SET}")
    if not pair.f.members or not pair.g.members:
        raise DomainError("the chain identity needs both families nonempty")
    if n < k + l:
        raise DomainError("need n >= k + l")
    w = _window(q)
    idx = range(0, q + 1) if full_range else range(1, l + 1)
    total = Fraction(0)
    for order in permutations(range(q)):
        a = 0
        prefixes = [0]
        for e in order:
            a |= 1 << e
            prefixes.append(a)
        for i in idx:
            ai = prefixes[i]
            bi = w & ~ai
            total += _weighted_trace(pair.f, ai, q, binom(q, i) * binom(n - q, k - i))
            if l - bi.bit_count() >= 0:
                total += _weighted_trace(pair.g, bi, q, binom(q, q - i) * binom(n - q, i - 1))
    return total


def check_chain_identity(pair: CrossPair, full_range: bool = True) -> bool:
    """chain_sum == (l+1)! (|F| + |G|)."""
    return chain_sum(pair, full_range) == math.factorial(pair.l + 1) * pair.total()


def binomial_sum_sides(n: int, k: int, l: int, t: int) -> tuple[int, int]:
    lo, hi = l + 1 - t, t
    lhs = sum(binom(l + 1, i) * binom(n - l - 1, k - i) for i in range(lo, hi + 1))
    rhs = sum(binom(l + 1, i) * binom(n - l - 1, l - i) for i in range(lo, hi + 1))
    return lhs, rhs


def check_binomial_sum_inequality(n: int, k: int, l: int, t: int) -> bool:
    """sum_{l+1-t <= i <= t} C(l+1,i) C(n-l-1,k-i) >= same with C(n-l-1, l-i)."""
    if not (k >= l >= 1 and 2 * t >= l + 1 and t <= l - 1):
        raise DomainError("need k >= l and (l+1)/2 <= t <= l-1")
    if n < k + l + 1:
        raise DomainError("need n >= k + l + 1")
    lhs, rhs = binomial_sum_sides(n, k, l, t)
    return lhs >= rhs
