"""Truncated formal Laurent series in ``q`` with exact rational coefficients.

A :class:`LaurentSeries` stores a dense block of coefficients from its
lowest tracked exponent (``offset``) up to its truncation ``order``
(inclusive).  Coefficients are Python ``int`` whenever they are integral and
:class:`fractions.Fraction` otherwise, so integer-only workloads never pay for
rational arithmetic.

Every operation reports only coefficients it can vouch for: the order of a
result never exceeds the order of its operands, and it drops further when a
negative-valuation operand pulls unknown tail coefficients into range.
"""

from __future__ import annotations

import operator
from dataclasses import dataclass
from fractions import Fraction
from functools import partial
from numbers import Rational
from typing import Callable, Iterable, Mapping, Union

Coefficient = Union[int, Fraction]

__all__ = [
    "Coefficient",
    "Comparison",
    "LaurentSeries",
    "TruncationError",
    "add",
    "coeff_at",
    "equal_to_order",
    "from_coeffs",
    "invert",
    "monomial",
    "mul",
    "mul_to_order",
    "one",
    "polynomial",
    "sub",
    "zero",
]


class TruncationError(ValueError):
    """Raised when a coefficient beyond the truncation order is requested."""


def _exact(c) -> Coefficient:
    if isinstance(c, bool):
        return int(c)
    if isinstance(c, int):
        return c
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    if isinstance(c, Rational):
        return _exact(Fraction(c.numerator, c.denominator))
    raise TypeError(f"coefficients must be exact rationals, got {type(c).__name__}")


def _norm(c: Coefficient) -> Coefficient:
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    return c


@dataclass(frozen=True)
class Comparison:
    """Outcome of :func:`equal_to_order`; truthy iff the series agree."""

    equal: bool
    order: int
    exponent: int | None = None
    left: Coefficient | None = None
    right: Coefficient | None = None

    def __bool__(self) -> bool:
        return self.equal

    def __str__(self) -> str:
        if self.equal:
            return f"equal to order {self.order}"
        return f"mismatch at q^{self.exponent}: {self.left} != {self.right}"


@dataclass(frozen=True, eq=False)
class LaurentSeries:
    """Immutable truncated Laurent series.

    Use :func:`from_coeffs`, :func:`monomial` or :func:`polynomial` to build
    one; the constructor assumes canonical input.
    """

    offset: int
    coeffs: tuple
    order: int

    # -- construction -----------------------------------------------------

    @classmethod
    def _canonical(cls, offset: int, coeffs: list, order: int) -> "LaurentSeries":
        # coeffs[i] is the coefficient of q^(offset + i); entries past order are dropped
        keep = order - offset + 1
        if keep <= 0:
            return cls(order + 1, (), order)
        if len(coeffs) > keep:
            del coeffs[keep:]
        start = 0
        n = len(coeffs)
        while start < n and not coeffs[start]:
            start += 1
        if start == n:
            return cls(order + 1, (), order)
        body = coeffs[start:] if start else coeffs
        body.extend([0] * (keep - n))
        return cls(offset + start, tuple(body), order)

    # -- queries -----------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def valuation(self) -> int | None:
        """Lowest exponent with a nonzero coefficient, or None for zero."""
        return None if self.is_zero else self.offset

    def coeff_at(self, e: int) -> Coefficient:
        if e > self.order:
            raise TruncationError(
                f"exponent beyond truncation order: q^{e} with order {self.order}"
            )
        i = e - self.offset
        return self.coeffs[i] if i >= 0 else 0

    def coefficients(self, start: int = 0, stop: int | None = None) -> list:
        """Coefficients of ``q^start .. q^stop`` (inclusive, stop defaults to order)."""
        stop = self.order if stop is None else stop
        if stop > self.order:
            raise TruncationError(
                f"exponent beyond truncation order: q^{stop} with order {self.order}"
            )
        return [self.coeff_at(e) for e in range(start, stop + 1)]

    def is_integral(self) -> bool:
        return all(type(c) is int for c in self.coeffs)

    def first_negative(self, upto: int | None = None) -> int | None:
        """Smallest exponent ``<= upto`` whose coefficient is negative."""
        upto = self.order if upto is None else upto
        for i, c in enumerate(self.coeffs):
            e = self.offset + i
            if e > upto:
                break
            if c < 0:
                return e
        return None

    def equal_to_order(self, other: "LaurentSeries", order: int) -> Comparison:
        if order > self.order or order > other.order:
            raise TruncationError(
                f"cannot compare to order {order}: operands known to "
                f"{self.order} and {other.order}"
            )
        lo = min(self.offset, other.offset)
        for e in range(lo, order + 1):
            x, y = self.coeff_at(e), other.coeff_at(e)
            if x != y:
                return Comparison(False, order, e, x, y)
        return Comparison(True, order)

    # -- structural operations ------------------------------------------

    def truncate(self, order: int) -> "LaurentSeries":
        if order >= self.order:
            return self
        return LaurentSeries._canonical(self.offset, list(self.coeffs), order)

    def shift(self, e: int) -> "LaurentSeries":
        """Multiply by ``q^e`` exactly (the known window moves with it)."""
        if self.is_zero:
            return zero(self.order + e)
        return LaurentSeries(self.offset + e, self.coeffs, self.order + e)

    def times_one_minus(self, e: int) -> "LaurentSeries":
        """Multiply by the binomial ``1 - q^e`` in linear time."""
        if e == 0:
            return zero(self.order)
        if e < 0:
            # (1 - q^e) = -q^e (1 - q^-e); the window loses |e| at the top
            return (-self.times_one_minus(-e)).shift(e)
        if self.is_zero:
            return self
        c = list(self.coeffs)
        for i in range(len(c) - 1, e - 1, -1):
            c[i] -= c[i - e]
        return LaurentSeries._canonical(self.offset, c, self.order)

    def over_one_minus(self, e: int) -> "LaurentSeries":
        """Divide by the binomial ``1 - q^e`` in linear time."""
        if e == 0:
            raise ZeroDivisionError("division by zero series")
        if e < 0:
            # 1/(1 - q^e) = -q^-e / (1 - q^-e); clip to the operand's order
            return (-self.over_one_minus(-e)).shift(-e).truncate(self.order)
        if self.is_zero:
            return self
        c = list(self.coeffs)
        for i in range(e, len(c)):
            c[i] += c[i - e]
        return LaurentSeries(self.offset, tuple(c), self.order)

    # -- arithmetic ----------------------------------------------------------

    def __neg__(self) -> "LaurentSeries":
        return LaurentSeries(self.offset, tuple(-c for c in self.coeffs), self.order)

    def __add__(self, other) -> "LaurentSeries":
        if not isinstance(other, LaurentSeries):
            other = monomial(other, 0, self.order)
        order = min(self.order, other.order)
        if self.is_zero:
            return other.truncate(order)
        if other.is_zero:
            return self.truncate(order)
        lo = min(self.offset, other.offset)
        c = [0] * (order - lo + 1)
        for s in (self, other):
            base = s.offset - lo
            for i, x in enumerate(s.coeffs[: order - s.offset + 1]):
                c[base + i] += x
        return LaurentSeries._canonical(lo, [_norm(x) for x in c], order)

    __radd__ = __add__

    def __sub__(self, other) -> "LaurentSeries":
        if not isinstance(other, LaurentSeries):
            other = monomial(other, 0, self.order)
        return self + (-other)

    def __rsub__(self, other) -> "LaurentSeries":
        return (-self) + other

    def __mul__(self, other) -> "LaurentSeries":
        if not isinstance(other, LaurentSeries):
            k = _exact(other)
            if not k:
                return zero(self.order)
            return LaurentSeries(
                self.offset, tuple(_norm(k * c) for c in self.coeffs), self.order
            )
        a, b = self, other
        order = min(a.order, b.order, a.order + b.offset, b.order + a.offset)
        if a.is_zero or b.is_zero:
            return zero(order)
        lo = a.offset + b.offset
        n = order - lo + 1
        if n <= 0:
            return zero(order)
        ac, bc = a.coeffs[:n], b.coeffs[:n]
        res = [0] * n
        add_ = operator.add
        for i, x in enumerate(ac):
            if x:
                res[i:n] = map(add_, res[i:n], map(partial(operator.mul, x), bc[: n - i]))
        if any(type(x) is Fraction for x in res):
            res = [_norm(x) for x in res]
        return LaurentSeries._canonical(lo, res, order)

    __rmul__ = __mul__

    def invert(self) -> "LaurentSeries":
        if self.is_zero:
            raise ZeroDivisionError("division by zero series")
        v = self.offset
        u = self.coeffs
        n = len(u)
        lead = u[0]
        inv_lead = lead if lead in (1, -1) else Fraction(1, 1) / lead
        b = [inv_lead]
        for k in range(1, n):
            s = sum(map(operator.mul, u[1 : k + 1], reversed(b)))
            b.append(_norm(-inv_lead * s))
        order = min(self.order, self.order - 2 * v)
        return LaurentSeries._canonical(-v, b, order)

    def __truediv__(self, other) -> "LaurentSeries":
        if isinstance(other, LaurentSeries):
            return self * other.invert()
        k = _exact(other)
        if not k:
            raise ZeroDivisionError("division by zero")
        return self * (Fraction(1) / k)

    def __rtruediv__(self, other) -> "LaurentSeries":
        return self.invert() * other

    def __pow__(self, k: int) -> "LaurentSeries":
        if k < 0:
            return self.invert() ** (-k)
        result = one(self.order)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        return (self.offset, self.coeffs, self.order) == (
            other.offset,
            other.coeffs,
            other.order,
        )

    def __hash__(self) -> int:
        return hash((self.offset, self.coeffs, self.order))

    def __repr__(self) -> str:
        return f"LaurentSeries({self})"

    def __str__(self) -> str:
        terms = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            e = self.offset + i
            mono = "" if e == 0 else ("q" if e == 1 else f"q^{e}")
            if not mono:
                terms.append(str(c))
            elif c == 1:
                terms.append(mono)
            elif c == -1:
                terms.append(f"-{mono}")
            else:
                terms.append(f"{c}*{mono}")
        body = " + ".join(terms).replace("+ -", "- ") if terms else "0"
        return f"{body} + O(q^{self.order + 1})"


def zero(order: int) -> LaurentSeries:
    return LaurentSeries(order + 1, (), order)


def one(order: int) -> LaurentSeries:
    return monomial(1, 0, order)


def monomial(c, e: int, order: int) -> LaurentSeries:
    """``c * q^e`` truncated at ``order``."""
    c = _exact(c)
    if not c or e > order:
        return zero(order)
    return LaurentSeries(e, (c,) + (0,) * (order - e), order)


def from_coeffs(coeffs: Iterable, order: int, offset: int = 0) -> LaurentSeries:
    """Series whose coefficient of ``q^(offset+i)`` is ``coeffs[i]``.

    Exponents missing from ``coeffs`` (up to ``order``) are zero.
    """
    return LaurentSeries._canonical(offset, [_exact(c) for c in coeffs], order)


def polynomial(terms: Mapping[int, object], order: int) -> LaurentSeries:
    """Laurent polynomial from an ``{exponent: coefficient}`` mapping."""
    live = {e: _exact(c) for e, c in terms.items() if c and e <= order}
    if not live:
        return zero(order)
    lo = min(live)
    c = [0] * (order - lo + 1)
    for e, x in live.items():
        c[e - lo] += x
    return LaurentSeries._canonical(lo, c, order)


def add(a: LaurentSeries, b: LaurentSeries) -> LaurentSeries:
    return a + b


def sub(a: LaurentSeries, b: LaurentSeries) -> LaurentSeries:
    return a - b


def mul(a: LaurentSeries, b: LaurentSeries) -> LaurentSeries:
    return a * b


def invert(a: LaurentSeries) -> LaurentSeries:
    return a.invert()


def coeff_at(a: LaurentSeries, e: int) -> Coefficient:
    return a.coeff_at(e)


def equal_to_order(a: LaurentSeries, b: LaurentSeries, order: int) -> Comparison:
    return a.equal_to_order(b, order)


Builder = Callable[[int], LaurentSeries]


def mul_to_order(order: int, *builders: Builder) -> LaurentSeries:
    """Product of series built by ``builders`` (each ``order -> series``), exact to ``order``.

    Factors with negative valuation shrink the known window of a product, so
    the factors are rebuilt at a higher working order until the product is
    known through ``order``.
    """
    work = order
    for _ in range(8):
        result = builders[0](work)
        for build in builders[1:]:
            result = result * build(work)
        if result.order >= order:
            return result.truncate(order)
        work += order - result.order
    raise RuntimeError(f"could not reach order {order} (stuck at {result.order})")
