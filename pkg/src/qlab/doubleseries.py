"""The weighted-partition double series F1, F2, G and the families A, A', B, B'.

Every double series here has the shape

    sum_{k, n >= 0} (q^(2n+2); q^2)_k / (q^(2n+D); q^2)_k * q^(2k + c*n + e)

and each term has valuation exactly ``2k + c*n + e``, so truncation is a
finite enumeration of ``(k, n)``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterator

from qlab.qproducts import PochhammerSpec, poch_quotient
from qlab.series import LaurentSeries, one, zero

__all__ = [
    "Family",
    "FamilyId",
    "SeriesId",
    "double_series",
    "double_series_terms",
    "family_series",
    "product_tail_sum",
]


class SeriesId(enum.Enum):
    """(odd window start D, n-weight c, exponent shift e) of each double series."""

    F1 = (3, 3, 1)
    F2 = (5, 1, 2)
    G = (1, 5, 2)

    @property
    def odd_start(self) -> int:
        return self.value[0]

    @property
    def n_weight(self) -> int:
        return self.value[1]

    @property
    def shift(self) -> int:
        return self.value[2]

    def base_exponent(self, k: int, n: int) -> int:
        return 2 * k + self.n_weight * n + self.shift

    @classmethod
    def parse(cls, name: str) -> "SeriesId":
        try:
            return cls[name.strip().upper()]
        except KeyError:
            raise ValueError(f"unknown series {name!r}; expected one of f1, f2, g") from None


class Family(enum.Enum):
    A = "A"
    APRIME = "A'"
    B = "B"
    BPRIME = "B'"


# (prefactor is q^(m(n+1)) rather than q^(mn), numerator starts, denominator starts)
_FAMILY_SHAPE = {
    Family.A: (False, (2, 4), (-1, 1)),
    Family.APRIME: (True, (2, 6), (1, 3)),
    Family.B: (False, (2, 4), (-3, 3)),
    Family.BPRIME: (True, (2, 6), (-1, 5)),
}


@dataclass(frozen=True)
class FamilyId:
    family: Family
    m: int

    def __post_init__(self):
        if self.m < 1:
            raise ValueError(f"m must be a positive integer, got {self.m}")

    def __str__(self) -> str:
        return f"{self.family.value}(m={self.m})"


def double_series(sid: SeriesId, order: int) -> LaurentSeries:
    """Evaluate the double series through ``order``.

    For each ``n`` the inner sum over ``k`` is evaluated in nested (Horner)
    form, ``1 + q^2 r_0 (1 + q^2 r_1 (1 + ...))`` with ``r_j`` the ratio of
    the j-th numerator and denominator binomials, each level carried only to
    the precision it needs.
    """
    if order < 0:
        return zero(order)
    total = zero(order)
    d = sid.odd_start
    n = 0
    while sid.base_exponent(0, n) <= order:
        room = order - sid.base_exponent(0, n)
        top = room // 2
        inner = one(room - 2 * top)
        for j in range(top - 1, -1, -1):
            inner = (
                inner.times_one_minus(2 * n + 2 + 2 * j)
                .over_one_minus(2 * n + d + 2 * j)
                .shift(2)
            )
            inner = inner + one(inner.order)
        total = total + inner.shift(sid.base_exponent(0, n))
        n += 1
    return total


def double_series_terms(
    sid: SeriesId, order: int
) -> Iterator[tuple[int, int, LaurentSeries]]:
    """Yield ``(k, n, term)`` for every term that reaches ``order``, each built directly."""
    d = sid.odd_start
    n = 0
    while sid.base_exponent(0, n) <= order:
        k = 0
        while (v := sid.base_exponent(k, n)) <= order:
            ratio = poch_quotient(
                [PochhammerSpec(2 * n + 2, 2, k)],
                [PochhammerSpec(2 * n + d, 2, k)],
                order - v,
            )
            yield k, n, ratio.shift(v)
            k += 1
        n += 1


def _family_term_specs(fid: FamilyId, n: int):
    primed, nums, dens = _FAMILY_SHAPE[fid.family]
    prefactor = fid.m * (n + 1) if primed else fid.m * n
    return (
        prefactor,
        [PochhammerSpec(2 * n + a, 2) for a in nums],
        [PochhammerSpec(2 * n + b, 2) for b in dens],
    )


def _family_term_valuation(fid: FamilyId, n: int) -> int:
    prefactor, nums, dens = _family_term_specs(fid, n)
    # numerator exponents are all positive; each negative denominator
    # exponent e contributes valuation -e after inversion
    return prefactor - sum(s.negative_sum() for s in dens)


def family_series(fid: FamilyId, order: int) -> LaurentSeries:
    """``sum_n q^(mn or m(n+1)) * quotient of four infinite products`` through ``order``."""
    total = zero(order)
    n = 0
    while _family_term_specs(fid, n)[0] <= order:
        prefactor, nums, dens = _family_term_specs(fid, n)
        if _family_term_valuation(fid, n) <= order:
            total = total + poch_quotient(nums, dens, order - prefactor).shift(prefactor)
        n += 1
    # prefactors grow with n and quotient valuations are nonnegative
    if _family_term_valuation(fid, n) <= order:
        raise RuntimeError(f"family cutoff bound violated at n={n} for {fid}")
    return total


def product_tail_sum(
    weight: int, num_start: int, den_start: int, order: int
) -> LaurentSeries:
    """``sum_n q^(weight*n) (q^(2n+num_start); q^2)_inf / (q^(2n+den_start); q^2)_inf``.

    Both starts must be positive, so term ``n`` has valuation ``weight*n``.
    """
    if weight < 1 or num_start < 1 or den_start < 1:
        raise ValueError("weight and starts must be positive")
    total = zero(order)
    n = 0
    while weight * n <= order:
        v = weight * n
        total = total + poch_quotient(
            [PochhammerSpec(2 * n + num_start, 2)],
            [PochhammerSpec(2 * n + den_start, 2)],
            order - v,
        ).shift(v)
        n += 1
    return total
