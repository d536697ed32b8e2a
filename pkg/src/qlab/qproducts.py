"""q-Pochhammer symbols with monomial arguments, as truncated Laurent series.

``PochhammerSpec(a, s, n)`` denotes ``(q^a; q^s)_n = prod_{j<n} (1 - q^(a + j*s))``
and ``length=INFINITE`` the infinite product.  Arguments with negative
exponents, such as ``(q^-1; q^2)_inf``, are handled by the Laurent substrate.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from qlab.series import LaurentSeries, one, zero

__all__ = [
    "INFINITE",
    "PochhammerSpec",
    "poch",
    "poch_finite",
    "poch_infinite",
    "poch_quotient",
]

INFINITE = None


@dataclass(frozen=True)
class PochhammerSpec:
    start_exp: int
    step: int = 1
    length: int | None = INFINITE

    def __post_init__(self):
        if self.step < 1:
            raise ValueError(f"step must be >= 1, got {self.step}")
        if self.length is not None and self.length < 0:
            raise ValueError(f"length must be >= 0, got {self.length}")

    @property
    def is_infinite(self) -> bool:
        return self.length is None

    def exponents(self, upto: int | None = None) -> Iterator[int]:
        """Factor exponents in order; infinite specs stop past ``upto``."""
        e = self.start_exp
        j = 0
        while self.length is None or j < self.length:
            if upto is not None and e > upto:
                return
            yield e
            e += self.step
            j += 1

    def negative_exponents(self) -> list[int]:
        if self.length is None:
            return list(self.exponents(upto=-1))
        return [e for e in self.exponents() if e < 0]

    def negative_sum(self) -> int:
        """Sum of the negative factor exponents (the product's valuation when nonzero)."""
        return sum(self.negative_exponents())

    def vanishes(self) -> bool:
        """True when some factor is ``1 - q^0 = 0``."""
        if self.start_exp > 0:
            return False
        if self.start_exp % self.step:
            return False
        j = -self.start_exp // self.step
        return self.length is None or j < self.length

    def shifted(self, n: int) -> "PochhammerSpec":
        """``(a q^(n*s); q^s)``; the finite length is kept."""
        return PochhammerSpec(self.start_exp + n * self.step, self.step, self.length)

    def with_length(self, length: int | None) -> "PochhammerSpec":
        return PochhammerSpec(self.start_exp, self.step, length)


def _product(specs: Iterable[PochhammerSpec], order: int) -> LaurentSeries:
    specs = list(specs)
    if any(s.vanishes() for s in specs):
        return zero(order)
    guard = -sum(s.negative_sum() for s in specs)
    work = order + guard
    result = one(work)
    negatives = []
    for s in specs:
        for e in s.exponents(upto=work):
            if e < 0:
                negatives.append(e)
            else:
                result = result.times_one_minus(e)
    for e in negatives:
        result = result.times_one_minus(e)
    assert result.order >= order, (result.order, order)
    return result.truncate(order)


def poch_finite(spec: PochhammerSpec, order: int) -> LaurentSeries:
    if spec.is_infinite:
        raise ValueError("poch_finite needs a finite length")
    return _product([spec], order)


def poch_infinite(spec: PochhammerSpec, order: int) -> LaurentSeries:
    """The infinite product, exact through ``order``.

    Factors ``1 - q^e`` with ``e`` beyond the working order equal 1 there and
    are skipped; the working order is raised by the negative exponents so
    that every reported coefficient is exact.
    """
    if not spec.is_infinite:
        raise ValueError("poch_infinite needs length=INFINITE")
    return _product([spec], order)


def poch(spec: PochhammerSpec, order: int) -> LaurentSeries:
    return _product([spec], order)


def poch_quotient(
    numerators: Sequence[PochhammerSpec],
    denominators: Sequence[PochhammerSpec],
    order: int,
) -> LaurentSeries:
    """Product of ``numerators`` over product of ``denominators`` to ``order``.

    Raises ZeroDivisionError when a denominator product vanishes.
    """
    for d in denominators:
        if d.vanishes():
            raise ZeroDivisionError("division by zero series")
    result = _product(numerators, order)
    # a skipped factor 1/(1 - q^e) first contributes at e + valuation
    upto = order - sum(s.negative_sum() for s in numerators)
    for d in denominators:
        for e in d.exponents(upto=upto):
            result = result.over_one_minus(e)
    return result
