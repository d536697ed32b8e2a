"""Truncated 2phi1 sums with monomial parameters and the classical identities used on them.

All parameters are powers of ``q``: ``a = q^a_exp`` and so on, with base
``q^step`` and argument ``z = q^z_exp``.  Each ``*_instance`` builder returns
both sides of an identity so the caller can compare them.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Sequence

from qlab.qproducts import PochhammerSpec, poch_quotient
from qlab.series import LaurentSeries, from_coeffs, monomial, mul_to_order, one, zero

__all__ = [
    "NotVerifiableError",
    "ParameterError",
    "Phi21Params",
    "basic_sum",
    "contiguous_instance",
    "heine_instance",
    "lambert_theta",
    "phi21_truncated",
    "qbinomial_instance",
    "qbinomial_sum",
]


class ParameterError(ValueError):
    pass


class NotVerifiableError(ParameterError):
    """The transformed side of an identity falls outside the truncated model."""


def _negative_sum(a_exp: int, step: int) -> int:
    return sum(range(a_exp, 0, step)) if a_exp < 0 else 0


def _hits_zero(exp: int, step: int) -> bool:
    return exp <= 0 and exp % step == 0


@dataclass(frozen=True)
class Phi21Params:
    a_exp: int
    b_exp: int
    c_exp: int
    step: int = 1
    z_exp: int = 1

    def __post_init__(self):
        if self.step < 1:
            raise ParameterError(f"step must be >= 1, got {self.step}")
        if self.z_exp < 1:
            raise ParameterError(f"argument exponent must be >= 1, got {self.z_exp}")
        if _hits_zero(self.c_exp, self.step):
            raise ParameterError(
                f"denominator (q^{self.c_exp}; q^{self.step})_n vanishes"
            )

    def with_argument(self, z_exp: int) -> "Phi21Params":
        return replace(self, z_exp=z_exp)

    def raised(self) -> "Phi21Params":
        """Parameters ``(qa, qb; qc)`` with ``q`` the base."""
        s = self.step
        return replace(self, a_exp=self.a_exp + s, b_exp=self.b_exp + s, c_exp=self.c_exp + s)


def basic_sum(
    numer: Sequence[int],
    denom: Sequence[int],
    step: int,
    z_exp: int,
    order: int,
) -> LaurentSeries:
    """``sum_n prod (q^a; q^s)_n / ((q^s; q^s)_n prod (q^c; q^s)_n) * q^(z n)`` to ``order``.

    Term ``n`` has valuation at least ``n*z_exp`` plus the (fixed) sum of
    negative numerator exponents, which bounds the number of terms.  The
    first discarded term is computed and checked against that bound.
    """
    if z_exp < 1:
        raise ParameterError(f"argument exponent must be >= 1, got {z_exp}")
    for c in list(denom) + [step]:
        if _hits_zero(c, step):
            raise ParameterError(f"denominator (q^{c}; q^{step})_n vanishes")
    floor = sum(_negative_sum(a, step) for a in numer)
    work = order - floor
    term = one(work)
    total = term.truncate(order)
    n = 0
    while True:
        for a in numer:
            term = term.times_one_minus(a + n * step)
        term = term.over_one_minus(step * (n + 1))
        for c in denom:
            term = term.over_one_minus(c + n * step)
        term = term.shift(z_exp).truncate(work)
        n += 1
        if n * z_exp + floor > order:
            if not term.truncate(order).is_zero:
                raise RuntimeError(
                    f"summation cutoff bound violated at term {n} (order {order})"
                )
            break
        if any(a + (n - 1) * step == 0 for a in numer):
            break
        total = total + term
    return total.truncate(order)


def phi21_truncated(p: Phi21Params, order: int) -> LaurentSeries:
    return basic_sum([p.a_exp, p.b_exp], [p.c_exp], p.step, p.z_exp, order)


def qbinomial_sum(a_exp: int, z_exp: int, step: int, order: int) -> LaurentSeries:
    return basic_sum([a_exp], [], step, z_exp, order)


def _inf(*exps: int, step: int) -> list[PochhammerSpec]:
    return [PochhammerSpec(e, step) for e in exps]


def heine_instance(kind: int, p: Phi21Params, order: int) -> tuple[LaurentSeries, LaurentSeries]:
    """Both sides of Heine's first (``kind=1``) or second (``kind=2``) transformation.

    kind 1: ``(b, az)_inf / (c, z)_inf * 2phi1(c/b, z; az; b)``
    kind 2: ``(c/b, bz)_inf / (c, z)_inf * 2phi1(abz/c, b; bz; c/b)``
    """
    if kind not in (1, 2):
        raise ParameterError(f"Heine transformation kind must be 1 or 2, got {kind}")
    a, b, c, s, z = p.a_exp, p.b_exp, p.c_exp, p.step, p.z_exp
    if kind == 1:
        nums, dens = _inf(b, a + z, step=s), _inf(c, z, step=s)
        moved = (c - b, z, a + z, s, b)
    else:
        nums, dens = _inf(c - b, b + z, step=s), _inf(c, z, step=s)
        moved = (a + b + z - c, b, b + z, s, c - b)
    try:
        moved = Phi21Params(*moved)
    except ParameterError as exc:
        raise NotVerifiableError(f"instance not verifiable in truncated model: {exc}") from exc
    for spec in dens:
        if spec.vanishes():
            raise NotVerifiableError(
                "instance not verifiable in truncated model: vanishing prefactor denominator"
            )
    lhs = phi21_truncated(p, order)
    rhs = mul_to_order(
        order,
        lambda w: poch_quotient(nums, dens, w),
        lambda w: phi21_truncated(moved, w),
    )
    return lhs, rhs


def qbinomial_instance(
    a_exp: int, z_exp: int, step: int, order: int
) -> tuple[LaurentSeries, LaurentSeries]:
    """``sum (a;q)_n / (q;q)_n z^n`` against ``(az;q)_inf / (z;q)_inf``."""
    if z_exp < 1:
        raise ParameterError(f"argument exponent must be >= 1, got {z_exp}")
    lhs = qbinomial_sum(a_exp, z_exp, step, order)
    rhs = poch_quotient(_inf(a_exp + z_exp, step=step), _inf(z_exp, step=step), order)
    return lhs, rhs


def contiguous_instance(p: Phi21Params, order: int) -> tuple[LaurentSeries, LaurentSeries]:
    """``phi(z) - phi(qz)`` against ``z (1-a)(1-b)/(1-c) * phi(qa, qb; qc; z)``."""
    s = p.step
    lhs = phi21_truncated(p, order) - phi21_truncated(p.with_argument(p.z_exp + s), order)
    raised = p.raised()
    factor_num = [PochhammerSpec(p.a_exp, s, 1), PochhammerSpec(p.b_exp, s, 1)]
    factor_den = [PochhammerSpec(p.c_exp, s, 1)]
    rhs = mul_to_order(
        order,
        lambda w: monomial(1, p.z_exp, w),
        lambda w: poch_quotient(factor_num, factor_den, w),
        lambda w: phi21_truncated(raised, w),
    )
    return lhs, rhs


def lambert_theta(order: int) -> LaurentSeries:
    """``sum_{n>=0} q^n/(1-q^(4n+1)) - q^(3n+2)/(1-q^(4n+3))`` by direct geometric expansion."""
    if order < 0:
        return zero(order)
    c = [0] * (order + 1)
    for n in range(order + 1):
        for e in range(n, order + 1, 4 * n + 1):
            c[e] += 1
        for e in range(3 * n + 2, order + 1, 4 * n + 3):
            c[e] -= 1
    return from_coeffs(c, order)
