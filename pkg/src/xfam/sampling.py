"""Random families and cross-intersecting pairs for property sweeps."""
from __future__ import annotations

import random
from fractions import Fraction
from functools import lru_cache

from .family import CrossPair, Family, is_non_trivial, k_subsets, prefix
from .transversal import transversal_family


def random_family(rng: random.Random, n: int, k: int, size: int | None = None) -> Family:
    sets = list(k_subsets(prefix(n), k))
    if size is None:
        size = rng.randint(0, len(sets))
    return Family(n, k, tuple(rng.sample(sets, min(size, len(sets)))))


def random_ci_pair(
    rng: random.Random,
    n_range: tuple[int, int] = (4, 8),
    nontrivial: bool = False,
    same_uniformity: bool = False,
    tries: int = 200,
) -> CrossPair:
    """A random cross-intersecting pair with G nonempty.

    G is sampled first; F is a random subfamily of T^(k)(G).  With
    ``nontrivial`` both families are resampled until neither is a star.
    """
    for _ in range(tries):
        n = rng.randint(*n_range)
        l = rng.randint(1 if not nontrivial else 2, max(1, n // 2))
        k = l if same_uniformity else rng.randint(l, n - l)
        g = random_family(rng, n, l, rng.randint(1, min(6, len(list(k_subsets(prefix(n), l))))))
        if nontrivial and not is_non_trivial(g):
            continue
        t = transversal_family(g, k)
        if not t.members:
            continue
        keep = tuple(m for m in t.members if rng.random() < rng.choice((0.5, 0.8, 1.0)))
        if not keep:
            keep = (rng.choice(t.members),)
        f = t.with_members(keep)
        if nontrivial and not is_non_trivial(f):
            continue
        return CrossPair(f, g)
    raise RuntimeError("could not sample a pair with the requested properties")


def random_cross_uniform_pair(rng: random.Random, m_range: tuple[int, int] = (2, 9)) -> tuple[Family, Family]:
    """Cross-intersecting A (a-sets), B (b-sets) over [m] with m >= a + b."""
    m = rng.randint(*m_range)
    a = rng.randint(1, m - 1)
    b = rng.randint(1, m - a)
    big, small = (a, b) if a >= b else (b, a)
    fam = random_family(rng, m, small, rng.randint(0, 5))
    if fam.members:
        partner = transversal_family(fam, big)
        keep = tuple(x for x in partner.members if rng.random() < 0.7)
        other = partner.with_members(keep)
    else:
        other = random_family(rng, m, big)
    return (other, fam) if a >= b else (fam, other)


@lru_cache(maxsize=None)
def zero_one_appropriate(length: int) -> tuple[tuple[int, ...], ...]:
    """All 0-1 appropriate sequences of the given length, by brute force."""
    from .bounds import is_appropriate

    out = []
    for bits in range(1 << length):
        seq = tuple(bits >> i & 1 for i in range(length))
        if is_appropriate(seq):
            out.append(seq)
    return tuple(out)


def random_appropriate(rng: random.Random, length: int) -> tuple[Fraction, ...]:
    """Nonnegative rational combination of 0-1 appropriate sequences."""
    basis = zero_one_appropriate(length)
    coeffs = [Fraction(rng.randint(0, 9), rng.randint(1, 5)) for _ in basis]
    return tuple(sum((c * s[i] for c, s in zip(coeffs, basis)), Fraction(0)) for i in range(length))
