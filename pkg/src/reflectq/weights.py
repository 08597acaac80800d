"""Basis-label combinatorics: compositions, their statistics, cyclic maps,
energy functions and one-row tableau strings.

A composition is a plain tuple of nonnegative ints.  Positions are 1-based
in formulas (matching the usual index conventions) and wrap cyclically;
index 0 aliases index n.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import product
from typing import Iterator, Sequence, Tuple

Composition = Tuple[int, ...]


@lru_cache(maxsize=None)
def enumerate_B(n: int, l: int) -> tuple:
    """All compositions of l into n parts, lexicographically descending.

    The order is part of the stable public contract; golden outputs depend
    on it.
    """
    if n < 1:
        raise ValueError("need at least one part")
    if n == 1:
        return ((l,),)
    out = []
    for first in range(l, -1, -1):
        out.extend((first,) + rest for rest in enumerate_B(n - 1, l - first))
    return tuple(out)


def total(alpha: Sequence[int]) -> int:
    return sum(alpha)


def indexed_sum(alpha: Sequence[int]) -> int:
    """Sum of i * alpha_i over 1-based positions."""
    return sum(i * a for i, a in enumerate(alpha, start=1))


def cross(alpha: Sequence[int], beta: Sequence[int]) -> int:
    """Sum of alpha_i * beta_j over index pairs i < j."""
    if len(alpha) != len(beta):
        raise ValueError("cross statistic needs equal lengths")
    acc = 0
    tail = sum(beta)
    for a, b in zip(alpha, beta):
        tail -= b
        acc += a * tail
    return acc


def cyclic_shift(alpha: Sequence[int]) -> Composition:
    """(a_1, ..., a_k) -> (a_2, ..., a_k, a_1)."""
    t = tuple(alpha)
    return t[1:] + t[:1]


def reverse(alpha: Sequence[int]) -> Composition:
    return tuple(reversed(alpha))


def drop_last(alpha: Sequence[int]) -> Composition:
    return tuple(alpha)[:-1]


def drop_at(alpha: Sequence[int], i: int) -> Composition:
    """Remove the entry at 1-based position i."""
    t = tuple(alpha)
    return t[: i - 1] + t[i:]


def unit(n: int, j: int) -> Composition:
    """The j-th unit vector of length n, j taken mod n (j=0 aliases j=n)."""
    j = (j - 1) % n
    return tuple(1 if i == j else 0 for i in range(n))


def shift(alpha: Sequence[int], i: int, j: int) -> Composition:
    """alpha + e_i - e_j with cyclic 1-based indices; entries may go negative."""
    n = len(alpha)
    out = list(alpha)
    out[(i - 1) % n] += 1
    out[(j - 1) % n] -= 1
    return tuple(out)


def is_valid(alpha: Sequence[int]) -> bool:
    return all(a >= 0 for a in alpha)


def add(alpha: Sequence[int], beta: Sequence[int]) -> Composition:
    return tuple(a + b for a, b in zip(alpha, beta))


def sub(alpha: Sequence[int], beta: Sequence[int]) -> Composition:
    return tuple(a - b for a, b in zip(alpha, beta))


def dominated_by(alpha: Sequence[int], beta: Sequence[int]) -> bool:
    """Componentwise alpha <= beta."""
    return all(a <= b for a, b in zip(alpha, beta))


def box(lo: Sequence[int], hi: Sequence[int]) -> Iterator[Composition]:
    """All integer vectors v with lo <= v <= hi componentwise."""
    ranges = [range(a, b + 1) for a, b in zip(lo, hi)]
    return (tuple(v) for v in product(*ranges))


def stats(alpha: Sequence[int], beta: Sequence[int]) -> dict:
    """Bundle of the basic statistics for a pair of equal-length arrays."""
    return {
        "total": total(alpha),
        "indexed_sum": indexed_sum(alpha),
        "cross": cross(alpha, beta),
        "cyclic_shift": cyclic_shift(alpha),
        "reverse": reverse(alpha),
        "truncation": drop_last(alpha),
    }


def energy_P(i: int, alpha: Sequence[int], beta: Sequence[int]) -> int:
    """min(alpha_{i+1}, beta_{i+1}) with cyclic 1-based indexing."""
    n = len(alpha)
    if len(beta) != n:
        raise ValueError("energy needs equal lengths")
    j = i % n  # 0-based position of entry i+1
    return min(alpha[j], beta[j])


def energy_Q(i: int, alpha: Sequence[int], beta: Sequence[int]) -> int:
    """min over k of  sum_{j<k} alpha_{i+j} + sum_{k<j<=n} beta_{i+j}."""
    n = len(alpha)
    if len(beta) != n:
        raise ValueError("energy needs equal lengths")
    best = None
    for k in range(1, n + 1):
        acc = sum(alpha[(i + j - 1) % n] for j in range(1, k))
        acc += sum(beta[(i + j - 1) % n] for j in range(k + 1, n + 1))
        best = acc if best is None else min(best, acc)
    return best


def energy(kind: str, i: int, alpha: Sequence[int], beta: Sequence[int]) -> int:
    if kind == "P":
        return energy_P(i, alpha, beta)
    if kind == "Q":
        return energy_Q(i, alpha, beta)
    raise ValueError(f"unknown energy kind {kind!r}")


_BAR = "̄"  # combining macron for dual letters


def tableau_str(alpha: Sequence[int], dual: bool = False) -> str:
    """One-row semistandard tableau: alpha_i copies of letter i; dual letters
    carry a combining bar."""
    out = []
    for i, a in enumerate(alpha, start=1):
        letter = str(i) + (_BAR if dual else "")
        out.extend([letter] * a)
    return "".join(out)
