"""Closed-form right-hand sides: theorems, lemma evaluations, proof identities, corollary bounds.

Rational pieces are written as explicit numerator polynomials over products
of binomials ``(1 - q^e)`` and expanded by series division; single sums over
``n`` with finite Pochhammer factors are truncated with a checked cutoff.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Callable, Mapping

from qlab.doubleseries import SeriesId, double_series
from qlab.qproducts import PochhammerSpec, poch_quotient
from qlab.series import LaurentSeries, mul_to_order, polynomial, zero

__all__ = ["ClosedForm", "ClosedFormId", "closed_form", "rational", "theta"]


class ClosedForm(enum.Enum):
    THM_F1 = "thm_f1"
    THM_F2 = "thm_f2"
    THM_G = "thm_g"
    A2 = "a2"
    A2M = "a2m"
    APRIME_1 = "aprime_1"
    APRIME_2 = "aprime_2"
    B2 = "b2"
    B2M = "b2m"
    BPRIME = "bprime"
    HELP_ID_1 = "help_id_1"
    HELP_2_DOUBLE_1 = "help_2_double_1"
    THETA = "theta"
    BOUND_F1 = "bound_f1"
    BOUND_F2 = "bound_f2"
    BOUND_F2_CORRECTED = "bound_f2_corrected"
    BOUND_G = "bound_g"


_NEEDS_M = {ClosedForm.A2M, ClosedForm.APRIME_1, ClosedForm.APRIME_2, ClosedForm.B2M, ClosedForm.BPRIME}
_M_AT_LEAST_2 = {ClosedForm.A2M, ClosedForm.B2M}


@dataclass(frozen=True)
class ClosedFormId:
    tag: ClosedForm
    m: int | None = None

    def __post_init__(self):
        if self.tag in _NEEDS_M:
            if self.m is None:
                raise ValueError(f"{self.tag.value} needs a parameter m")
            floor = 2 if self.tag in _M_AT_LEAST_2 else 1
            if self.m < floor:
                raise ValueError(f"{self.tag.value} needs m >= {floor}, got {self.m}")
        elif self.m is not None:
            raise ValueError(f"{self.tag.value} takes no parameter m")

    def __str__(self) -> str:
        return self.tag.value if self.m is None else f"{self.tag.value}[m={self.m}]"


def rational(numer: Mapping[int, int], den_binomials: tuple[int, ...], order: int) -> LaurentSeries:
    """``sum numer[e] q^e / prod (1 - q^d)`` for positive ``d``, to ``order``."""
    result = polynomial(numer, order)
    for d in den_binomials:
        result = result.over_one_minus(d)
    return result


def theta(order: int) -> LaurentSeries:
    """``(q^2; q^2)_inf^2 / (q; q^2)_inf^2``."""
    return poch_quotient([PochhammerSpec(2, 2)] * 2, [PochhammerSpec(1, 2)] * 2, order)


def _theta_times(numer: Mapping[int, int], den: tuple[int, ...], order: int) -> LaurentSeries:
    return rational(numer, den, order) * theta(order)


def _finite_sum(
    weight: int,
    lift: int,
    num_start: int,
    num_len: int,
    den_start: int,
    den_len: int,
    order: int,
) -> LaurentSeries:
    """``sum_n q^(weight*n + lift) (q^(2n+num_start); q^2)_num_len / (q^(2n+den_start); q^2)_den_len``.

    Starts are positive, so each term's valuation is exactly ``weight*n + lift``.
    """
    total = zero(order)
    n = 0
    while (v := weight * n + lift) <= order:
        total = total + poch_quotient(
            [PochhammerSpec(2 * n + num_start, 2, num_len)],
            [PochhammerSpec(2 * n + den_start, 2, den_len)],
            order - v,
        ).shift(v)
        n += 1
    assert weight * n + lift > order
    return total


def _thm_f1(order):
    # THETA / (1 - q^2) - (1 + q^2) / ((1 - q)(1 - q^3))
    return _theta_times({0: 1}, (2,), order) - rational({0: 1, 2: 1}, (1, 3), order)


def _thm_f2(order):
    # q (1 - q^3) / ((1 - q)(1 - q^2)) THETA - q (1 + q^2) / (1 - q)^2
    return _theta_times({1: 1, 4: -1}, (1, 2), order) - rational({1: 1, 3: 1}, (1, 1), order)


def _thm_g(order):
    # q^3 / ((1 + q)(1 - q^3)) THETA - q^2 (1 - q)(-1 + q^3 + q^4 + q^5) / ((1 - q^3)^2 (1 - q^5))
    # with 1/(1 + q) = (1 - q)/(1 - q^2)
    first = _theta_times({3: 1, 4: -1}, (2, 3), order)
    second = rational({2: -1, 3: 1, 5: 1, 8: -1}, (3, 3, 5), order)
    return first - second


def _a2(order):
    return rational({1: -1, 3: -1}, (1, 1, 3), order)


def _b2(order):
    return rational({3: -1, 6: 1, 7: 1, 8: 1}, (3, 3, 5), order)


def _a2m(m, order):
    return rational({0: -1}, (1, 1), order) * _finite_sum(1, 1, 2, m - 1, 3, m - 2, order)


def _aprime_1(m, order):
    return rational({0: 1}, (3,), order) * _finite_sum(1, 2 * m, 2, m - 1, 5, m - 1, order)


def _aprime_2(m, order):
    return rational({0: 1}, (1,), order) * _finite_sum(3, 2 * m, 2, m - 1, 3, m - 1, order)


def _b2m(m, order):
    return rational({0: 1}, (1, 3), order) * _finite_sum(3, 4, 2, m - 1, 1, m - 2, order)


def _bprime(m, order):
    return rational({0: -1}, (1,), order) * _finite_sum(5, 2 * m + 1, 2, m - 1, 1, m - 1, order)


def _help_id_1(order):
    # the limit of the telescoped chain: A2 - q F1 / (1 - q)
    return _a2(order) - mul_to_order(
        order,
        lambda w: rational({1: 1}, (1,), w),
        lambda w: double_series(SeriesId.F1, w),
    )


def _help_2_double_1(order):
    return _theta_times({0: 1, 1: -1}, (2,), order)


def _bound_f1(order):
    return rational({1: 1, 3: 1}, (3,), order)


def _bound_f2(order):
    # q (1 + q + q^2) + q^5 (1 + q) / (1 - q^3)
    return polynomial({1: 1, 2: 1, 3: 1}, order) + rational({5: 1, 6: 1}, (3,), order)


def _bound_f2_corrected(order):
    # -q^3/(1-q)^2 + q(1+q+q^2) [q/((1-q)(1-q^2)) - q^3/((1-q^2)(1-q^3)) + q^3/(1-q^3)]
    # which collapses to (q^2 + q^4)/(1 - q)
    return rational({2: 1, 4: 1}, (1,), order)


def _bound_g(order):
    # q^2/(1 - q^5) + q^5 (1 - q^6) / ((1 - q^3)(1 - q^5)(1 - q^7))
    return rational({2: 1}, (5,), order) + rational({5: 1, 11: -1}, (3, 5, 7), order)


_PLAIN: dict[ClosedForm, Callable[[int], LaurentSeries]] = {
    ClosedForm.THM_F1: _thm_f1,
    ClosedForm.THM_F2: _thm_f2,
    ClosedForm.THM_G: _thm_g,
    ClosedForm.A2: _a2,
    ClosedForm.B2: _b2,
    ClosedForm.HELP_ID_1: _help_id_1,
    ClosedForm.HELP_2_DOUBLE_1: _help_2_double_1,
    ClosedForm.THETA: theta,
    ClosedForm.BOUND_F1: _bound_f1,
    ClosedForm.BOUND_F2: _bound_f2,
    ClosedForm.BOUND_F2_CORRECTED: _bound_f2_corrected,
    ClosedForm.BOUND_G: _bound_g,
}

_WITH_M: dict[ClosedForm, Callable[[int, int], LaurentSeries]] = {
    ClosedForm.A2M: _a2m,
    ClosedForm.APRIME_1: _aprime_1,
    ClosedForm.APRIME_2: _aprime_2,
    ClosedForm.B2M: _b2m,
    ClosedForm.BPRIME: _bprime,
}


def closed_form(cid: ClosedFormId | ClosedForm, order: int) -> LaurentSeries:
    if isinstance(cid, ClosedForm):
        cid = ClosedFormId(cid)
    if order < 0:
        return zero(order)
    if cid.tag in _WITH_M:
        result = _WITH_M[cid.tag](cid.m, order)
    else:
        result = _PLAIN[cid.tag](order)
    assert result.order >= order
    return result.truncate(order)
