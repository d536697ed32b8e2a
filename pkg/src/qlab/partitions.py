"""Brute-force partition oracle for the double series, with no series arithmetic.

A double-series term ``(q^(2n+2); q^2)_k / (q^(2n+D); q^2)_k * q^V`` expands
into signed *representations*: a set of distinct even parts from
``{2n+2, ..., 2n+2k}`` (each contributing a factor -1) together with a
multiset of odd parts from ``{2n+D, ..., 2n+D+2k-2}``.  The coefficient of
``q^N`` is the signed number of representations of total size ``N``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from qlab.doubleseries import SeriesId

__all__ = [
    "Representation",
    "enumerate_representations",
    "f1_partition_scan",
    "is_f1_partition",
    "representation_count",
]


@dataclass(frozen=True, order=True)
class Representation:
    n: int
    k: int
    evens: tuple[int, ...]
    odds: tuple[int, ...]
    base: int

    @property
    def sign(self) -> int:
        return -1 if len(self.evens) % 2 else 1

    @property
    def size(self) -> int:
        return self.base + sum(self.evens) + sum(self.odds)

    def __str__(self) -> str:
        evens = "{" + ", ".join(map(str, self.evens)) + "}"
        odds = "{" + ", ".join(map(str, self.odds)) + "}"
        s = "+" if self.sign > 0 else "-"
        return f"{s}1  k={self.k} n={self.n} evens={evens} odds={odds}"


def _windows(sid: SeriesId, k: int, n: int) -> tuple[list[int], list[int]]:
    evens = [2 * n + 2 + 2 * j for j in range(k)]
    odds = [2 * n + sid.odd_start + 2 * j for j in range(k)]
    return evens, odds


def _distinct_subsets(parts: list[int], budget: int, start: int = 0) -> Iterator[tuple[int, ...]]:
    # subsets of parts[start:] (ascending) with sum <= budget
    yield ()
    for i in range(start, len(parts)):
        p = parts[i]
        if p > budget:
            break
        for rest in _distinct_subsets(parts, budget - p, i + 1):
            yield (p,) + rest


def _multisets(parts: list[int], target: int, start: int = 0) -> Iterator[tuple[int, ...]]:
    # multisets from parts[start:] (ascending) summing exactly to target
    if target == 0:
        yield ()
        return
    for i in range(start, len(parts)):
        p = parts[i]
        if p > target:
            break
        for rest in _multisets(parts, target - p, i):
            yield (p,) + rest


def _multiset_count(parts: list[int], target: int, start: int = 0) -> int:
    if target == 0:
        return 1
    total = 0
    for i in range(start, len(parts)):
        p = parts[i]
        if p > target:
            break
        total += _multiset_count(parts, target - p, i)
    return total


def _pairs(sid: SeriesId, size: int) -> Iterator[tuple[int, int, int]]:
    n = 0
    while (base := sid.base_exponent(0, n)) <= size:
        k = 0
        while (v := base + 2 * k) <= size:
            yield n, k, v
            k += 1
        n += 1


def representation_count(sid: SeriesId, size: int) -> int:
    """Signed number of representations of ``size`` for the given double series."""
    total = 0
    for n, k, v in _pairs(sid, size):
        evens, odds = _windows(sid, k, n)
        room = size - v
        for chosen in _distinct_subsets(evens, room):
            sign = -1 if len(chosen) % 2 else 1
            total += sign * _multiset_count(odds, room - sum(chosen))
    return total


def enumerate_representations(sid: SeriesId, size: int) -> list[Representation]:
    """All representations of ``size``, sorted by ``(n, k, evens, odds)``."""
    reps = []
    for n, k, v in _pairs(sid, size):
        evens, odds = _windows(sid, k, n)
        room = size - v
        for chosen in _distinct_subsets(evens, room):
            for ms in _multisets(odds, room - sum(chosen)):
                reps.append(Representation(n, k, chosen, ms, v))
    reps.sort()
    return reps


def is_f1_partition(parts: dict[int, int]) -> bool:
    """Membership test for the partitions counted by F1, given ``{part: multiplicity}``."""
    parts = {p: c for p, c in parts.items() if c}
    if parts == {1: 1}:
        return True
    ones = parts.get(1, 0)
    largest = max(parts)
    if largest % 2 == 0:
        return False
    twice_k = largest - 2 * ones - 1
    if twice_k < 0:
        return False
    if twice_k == 0 and parts[largest] > 1:
        # k = 0 leaves no odd window, so the largest part is not repeated
        return False
    for p, c in parts.items():
        if p == 1:
            continue
        if p % 2 == 0:
            if c > 1 or not (2 * ones + 2 <= p <= largest - 1):
                return False
        elif p != largest and not (2 * ones + 3 <= p <= largest):
            return False
    return True


def f1_partition_scan(size: int) -> int:
    """Signed count of partitions of ``size`` passing :func:`is_f1_partition`.

    Each counted partition carries weight ``(-1)^(number of even parts)``.
    """
    from sympy.utilities.iterables import partitions

    total = 0
    for p in partitions(size):
        if is_f1_partition(p):
            evens = sum(c for part, c in p.items() if part % 2 == 0)
            total += -1 if evens % 2 else 1
    return total
