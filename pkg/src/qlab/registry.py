"""Catalog of every checkable identity, with a uniform verification runner.

Each :class:`IdentityRecord` pairs two series builders (``order -> series``).
``EQUAL`` records require the sides to agree through the order; ``DOMINATES``
records require ``lhs - rhs`` to have no negative coefficient.
"""

from __future__ import annotations

import enum
import fnmatch
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterable, Sequence

from qlab.closedforms import ClosedForm, ClosedFormId, closed_form
from qlab.doubleseries import Family, FamilyId, SeriesId, double_series, family_series, product_tail_sum
from qlab.hyperg import (
    Phi21Params,
    contiguous_instance,
    heine_instance,
    lambert_theta,
    qbinomial_instance,
)
from qlab.partitions import f1_partition_scan, representation_count
from qlab.qproducts import PochhammerSpec, poch_finite, poch_infinite, poch_quotient
from qlab.series import LaurentSeries, from_coeffs, mul_to_order, polynomial, zero

__all__ = [
    "DEFAULT_ORDER_CAP",
    "IdentityRecord",
    "Kind",
    "Severity",
    "Status",
    "Summary",
    "VerificationReport",
    "build_catalog",
    "catalog",
    "find",
    "list_identities",
    "verify",
    "verify_all",
]

DEFAULT_ORDER_CAP = 2000
ORACLE_CAP = 40

Builder = Callable[[int], LaurentSeries]


class Severity(enum.Enum):
    HARD = "HARD"
    INFO = "INFO"


class Kind(enum.Enum):
    EQUAL = "EQUAL"
    DOMINATES = "DOMINATES"


class Status(enum.Enum):
    PASS = "PASS"
    FAIL = "FAIL"
    ERROR = "ERROR"


@dataclass(frozen=True)
class IdentityRecord:
    id: str
    lhs: Builder = field(repr=False)
    rhs: Builder = field(repr=False)
    default_order: int
    anchor: str
    severity: Severity = Severity.HARD
    kind: Kind = Kind.EQUAL
    max_order: int | None = None

    def summary(self) -> dict:
        return {
            "id": self.id,
            "default_order": self.default_order,
            "severity": self.severity.value,
            "kind": self.kind.value,
            "anchor": self.anchor,
        }


@dataclass
class VerificationReport:
    id: str
    order: int
    status: Status
    first_mismatch: int | None = None
    lhs_coeff: object = None
    rhs_coeff: object = None
    wall_ms: int = 0
    severity: Severity = Severity.HARD
    integral: bool | None = None
    detail: str = ""

    @property
    def failed(self) -> bool:
        return self.status is not Status.PASS

    def to_json(self) -> dict:
        return {
            "id": self.id,
            "order": self.order,
            "status": self.status.value,
            "first_mismatch": self.first_mismatch,
            "lhs_coeff": None if self.lhs_coeff is None else str(self.lhs_coeff),
            "rhs_coeff": None if self.rhs_coeff is None else str(self.rhs_coeff),
            "wall_ms": self.wall_ms,
        }

    def __str__(self) -> str:
        line = f"{self.status.value:5} {self.id} (order {self.order}, {self.wall_ms} ms)"
        if self.severity is Severity.INFO:
            line += " [info]"
        if self.status is Status.FAIL:
            line += f": q^{self.first_mismatch} lhs={self.lhs_coeff} rhs={self.rhs_coeff}"
        elif self.status is Status.ERROR:
            line += f": {self.detail}"
        return line


@dataclass
class Summary:
    reports: list[VerificationReport]
    wall_ms: int = 0

    @property
    def passed(self) -> int:
        return sum(r.status is Status.PASS for r in self.reports)

    @property
    def hard_failed(self) -> int:
        return sum(r.failed and r.severity is Severity.HARD for r in self.reports)

    @property
    def info_failed(self) -> int:
        return sum(r.failed and r.severity is Severity.INFO for r in self.reports)

    @property
    def ok(self) -> bool:
        return self.hard_failed == 0

    def __str__(self) -> str:
        return (
            f"{self.passed} passed, {self.hard_failed} hard-failed, "
            f"{self.info_failed} info-failed ({self.wall_ms} ms)"
        )


# -- builders ------------------------------------------------------------


def _cf(tag: ClosedForm, m: int | None = None) -> Builder:
    cid = ClosedFormId(tag, m)
    return lambda order: closed_form(cid, order)


def _ds(sid: SeriesId) -> Builder:
    return lambda order: double_series(sid, order)


def _fam(family: Family, m: int) -> Builder:
    fid = FamilyId(family, m)
    return lambda order: family_series(fid, order)


def _zero(order: int) -> LaurentSeries:
    return zero(order)


def _sides(instance: Callable[[int], tuple[LaurentSeries, LaurentSeries]]) -> tuple[Builder, Builder]:
    # both sides come from one call; keep the last pair so the rhs is free
    cache: dict[int, tuple[LaurentSeries, LaurentSeries]] = {}

    def side(i: int) -> Builder:
        def build(order: int) -> LaurentSeries:
            if order not in cache:
                cache.clear()
                cache[order] = instance(order)
            return cache[order][i]

        return build

    return side(0), side(1)


def _oracle(count: Callable[[int], int]) -> Builder:
    def build(order: int) -> LaurentSeries:
        return from_coeffs([0] + [count(N) for N in range(1, order + 1)], order)

    return build


def _telescope(family: Family, m: int) -> Builder:
    return lambda order: family_series(FamilyId(family, m), order) - family_series(
        FamilyId(family, m + 2), order
    )


def _chain(family: Family, primed: Family, m: int) -> tuple[Builder, Builder]:
    def lhs(order):
        return family_series(FamilyId(family, 2 * m + 2), order)

    def rhs(order):
        total = family_series(FamilyId(family, 2), order)
        for k in range(1, m + 1):
            total = total - family_series(FamilyId(primed, 2 * k), order)
        return total

    return lhs, rhs


def _help_id_1_lhs(order: int) -> LaurentSeries:
    return mul_to_order(
        order,
        lambda w: polynomial({1: -1}, w).over_one_minus(1).over_one_minus(1),
        lambda w: product_tail_sum(1, 2, 3, w),
    )


def _basic_split_trial(seed: int) -> tuple[Builder, Builder]:
    rng = random.Random(seed)
    start, step = rng.randint(-6, 6), rng.randint(1, 4)
    m, n = rng.randint(0, 6), rng.randint(0, 6)

    def lhs(order):
        return poch_finite(PochhammerSpec(start, step, n + m), order)

    def rhs(order):
        return mul_to_order(
            order,
            lambda w: poch_finite(PochhammerSpec(start, step, m), w),
            lambda w: poch_finite(PochhammerSpec(start + m * step, step, n), w),
        )

    return lhs, rhs


def _basic_tail_trial(seed: int) -> tuple[Builder, Builder]:
    rng = random.Random(10_000 + seed)
    start, step = rng.randint(-6, 6), rng.randint(1, 4)
    n = rng.randint(0, 8)

    def lhs(order):
        return poch_infinite(PochhammerSpec(start, step), order)

    def rhs(order):
        return mul_to_order(
            order,
            lambda w: poch_finite(PochhammerSpec(start, step, n), w),
            lambda w: poch_infinite(PochhammerSpec(start + n * step, step), w),
        )

    return lhs, rhs


# -- catalog ---------------------------------------------------------------


def build_catalog() -> list[IdentityRecord]:
    C, F = ClosedForm, Family
    recs: list[IdentityRecord] = []

    def add(id, lhs, rhs, order, anchor, **kw):
        recs.append(IdentityRecord(id, lhs, rhs, order, anchor, **kw))

    # theorems
    thm = [
        ("f1", SeriesId.F1, C.THM_F1, "Theorem 2.2"),
        ("f2", SeriesId.F2, C.THM_F2, "Theorem 2.5"),
        ("g", SeriesId.G, C.THM_G, "Theorem 2.8"),
    ]
    for name, sid, tag, where in thm:
        add(f"thm-{name}", _ds(sid), _cf(tag), 200, f"{where}: double series = closed form")

    # positivity and bounds
    for name, sid, where, quote in [
        ("f1", SeriesId.F1, "Corollary 2.3", "F_1(n) q^n \\succeq 0"),
        ("f2", SeriesId.F2, "Corollary 2.6", "F_2(n) q^n \\succeq 0"),
        ("g", SeriesId.G, "Corollary 2.9", "G(n) q^n \\succeq 0"),
    ]:
        add(f"positivity-{name}", _ds(sid), _zero, 500, f'{where}, "{quote}"', kind=Kind.DOMINATES)
    add(
        "bound-f1", _ds(SeriesId.F1), _cf(C.BOUND_F1), 300,
        'Corollary 2.3 proof, "(q+q^3)/(1-q^3)"', kind=Kind.DOMINATES,
    )
    add(
        "bound-f2", _ds(SeriesId.F2), _cf(C.BOUND_F2), 300,
        'Corollary 2.6 proof, "q(1+q+q^2) + q^5(1+q)/(1-q^3)" (as printed)',
        kind=Kind.DOMINATES, severity=Severity.INFO,
    )
    add(
        "bound-f2-corrected", _ds(SeriesId.F2), _cf(C.BOUND_F2_CORRECTED), 300,
        "Corollary 2.6 proof with the theorem's prefactor carried through: (q^2+q^4)/(1-q)",
        kind=Kind.DOMINATES,
    )
    add(
        "bound-g", _ds(SeriesId.G), _cf(C.BOUND_G), 300,
        'Corollary 2.9 proof, "q^2/(1-q^5)+q^5(1-q^6)/((1-q^3)(1-q^5)(1-q^7))"',
        kind=Kind.DOMINATES,
    )

    # Lemma 3.2
    add("lemma-a2", _fam(F.A, 2), _cf(C.A2), 100, 'Lemma 3.2, eq. (A2), "-q(1+q^2)/((1-q)^2 (1-q^3))"')
    for m in range(2, 7):
        add(f"lemma-a2m[m={m}]", _fam(F.A, 2 * m), _cf(C.A2M, m), 100,
            'Lemma 3.2, eq. (A2m), "q^{n+1}(q^{2n+2};q^2)_{m-1}/(q^{2n+3};q^2)_{m-2}"')
    # Lemma 3.3
    for m in range(1, 7):
        add(f"lemma-aprime-1[m={m}]", _fam(F.APRIME, 2 * m), _cf(C.APRIME_1, m), 100,
            'Lemma 3.3, eq. (A\'-1), "q^{n+2m}(q^{2n+2};q^2)_{m-1}"')
        add(f"lemma-aprime-2[m={m}]", _fam(F.APRIME, 2 * m), _cf(C.APRIME_2, m), 100,
            "Lemma 3.3, eq. (A'-2)")
        add(f"aprime-forms[m={m}]", _cf(C.APRIME_1, m), _cf(C.APRIME_2, m), 100,
            "Lemma 3.3, the two right-hand sides (A'-1) = (A'-2)")
    # Lemma 3.4 / 3.7
    for m in range(2, 13, 2):
        add(f"telescope-a[m={m}]", _fam(F.APRIME, m), _telescope(F.A, m), 100,
            'Lemma 3.4, "A(m,n)-A(m+2,n)"')
        add(f"telescope-b[m={m}]", _fam(F.BPRIME, m), _telescope(F.B, m), 100,
            'Lemma 3.7, "B(m,n)-B(m+2,n)"')
    # Lemma 3.5
    add("lemma-b2", _fam(F.B, 2), _cf(C.B2), 100, 'Lemma 3.5, eq. (B2), "-q^3(1-q^3-q^4-q^5)"')
    for m in range(2, 7):
        add(f"lemma-b2m[m={m}]", _fam(F.B, 2 * m), _cf(C.B2M, m), 100,
            'Lemma 3.5, eq. (B2m), "q^{3n+4}(q^{2n+2};q^2)_{m-1}"')
    # Lemma 3.6
    for m in range(1, 7):
        add(f"lemma-bprime[m={m}]", _fam(F.BPRIME, 2 * m), _cf(C.BPRIME, m), 100,
            'Lemma 3.6, "q^{5n+2m+1}(q^{2n+2};q^2)_{m-1}"')

    # telescoped chains
    for m in range(1, 6):
        lhs, rhs = _chain(F.A, F.APRIME, m)
        add(f"chain-a[m={m}]", lhs, rhs, 80, 'eq. (help-1 double-1), "A(2,n)q^n -sum_{k=1}^m A\'(2k,n)"')
        lhs, rhs = _chain(F.B, F.BPRIME, m)
        add(f"chain-b[m={m}]", lhs, rhs, 80, "eq. (help-1 double-3)")

    # limit and product identities
    add("help-id-1", _help_id_1_lhs, _cf(C.HELP_ID_1), 150,
        'eq. (help id-1), "q^n (q^{2n+2};q^2)_\\infty/(q^{2n+3};q^2)_\\infty" '
        "(right side as the limit of the chain: A2 - q F1/(1-q))")
    add("help-2-double-1", lambda o: product_tail_sum(1, 2, 3, o), _cf(C.HELP_2_DOUBLE_1), 150,
        'eq. (help-2 double-1), "(1-q)/(1-q^2)"')
    add("help-g-tail",
        lambda o: product_tail_sum(3, 2, 1, o),
        lambda o: poch_quotient([PochhammerSpec(2, 2), PochhammerSpec(4, 2)],
                                [PochhammerSpec(1, 2), PochhammerSpec(3, 2)], o),
        150, "Theorem 2.8 proof, q-binomial step for sum q^{3n}(q^{2n+2})_inf/(q^{2n+1})_inf")
    add("lambert-theta", lambert_theta, _cf(C.THETA), 300,
        'eq. (help-1 positive-1), "\\frac{q^n}{1-q^{4n+1}}-\\frac{q^{3n+2}}{1-q^{4n+3}}"')

    # classical identity instances
    def heine(id, kind, params, anchor):
        lhs, rhs = _sides(lambda o: heine_instance(kind, params, o))
        add(id, lhs, rhs, 100, anchor)

    heine("heine2[lemma-3.2]", 2, Phi21Params(-1, 1, 4, 2, 2), 'Lemma 3.2 proof, "By (basic) and (Heine-2)"')
    heine("heine2[lemma-3.5]", 2, Phi21Params(-3, 3, 4, 2, 2), "Lemma 3.5 proof, (B2) via (Heine-2)")
    for m in range(1, 7):
        heine(f"heine1[lemma-3.2,m={m}]", 1, Phi21Params(-1, 1, 4, 2, 2 * m), "Lemma 3.2 proof, (A2m) via (Heine-1)")
        heine(f"heine1[lemma-3.3,m={m}]", 1, Phi21Params(3, 1, 6, 2, 2 * m),
              'Lemma 3.3 proof, "applied (Heine-1) with (a,b,c,z)=(q^3,q,q^6,q^{2m})"')
        heine(f"heine1[lemma-3.3-alt,m={m}]", 1, Phi21Params(1, 3, 6, 2, 2 * m),
              "Lemma 3.3 proof, (A'-2) via (Heine-1) with (q,q^3,q^6,q^{2m})")
        heine(f"heine1[lemma-3.5,m={m}]", 1, Phi21Params(-3, 3, 4, 2, 2 * m), "Lemma 3.5 proof, (B2m) via (Heine-1)")
        heine(f"heine1[lemma-3.6,m={m}]", 1, Phi21Params(-1, 5, 6, 2, 2 * m),
              'Lemma 3.6 proof, "(a,b,c,z)=(q^{-1},q^5,q^6,q^{2m})"')
        lhs, rhs = _sides(lambda o, m=m: contiguous_instance(Phi21Params(-1, 1, 4, 2, m), o))
        add(f"kratt21[lemma-3.4,m={m}]", lhs, rhs, 100, 'Lemma 3.4 proof, "by (Kratt-21) applied with q->q^2"')
        lhs, rhs = _sides(lambda o, m=m: contiguous_instance(Phi21Params(-3, 3, 4, 2, m), o))
        add(f"kratt21[lemma-3.7,m={m}]", lhs, rhs, 100, 'Lemma 3.7 proof, "(a,b,c,z)=(q^{-3},q^3,q^4,q^m)"')
    lhs, rhs = _sides(lambda o: qbinomial_instance(3, 1, 2, o))
    add("qbinom[help-2-double-1]", lhs, rhs, 100, 'eq. (help-2 double-1), "(q^3;q^2)_n q^n / (q^2;q^2)_n"')
    lhs, rhs = _sides(lambda o: qbinomial_instance(1, 3, 2, o))
    add("qbinom[thm-2.8]", lhs, rhs, 100, "Theorem 2.8 proof, (q-binom) with (a,z)=(q,q^3), base q^2")

    # splitting and tail laws with fixed seeds
    for seed in range(5):
        lhs, rhs = _basic_split_trial(seed)
        add(f"basic-split[trial={seed}]", lhs, rhs, 40, 'eq. (basic), "(a;q)_{n+m} = (a;q)_{m} (aq^{m};q)_n"')
        lhs, rhs = _basic_tail_trial(seed)
        add(f"basic-tail[trial={seed}]", lhs, rhs, 40, 'eq. (basic), "(a;q)_{\\infty} = (a;q)_n (aq^n;q)_{\\infty}"')

    # oracle agreement
    for name, sid, where in [("f1", SeriesId.F1, "Definition 2.1"), ("f2", SeriesId.F2, "Definition 2.4"),
                             ("g", SeriesId.G, "Definition 2.7")]:
        add(f"oracle-{name}", _oracle(lambda N, sid=sid: representation_count(sid, N)), _ds(sid),
            ORACLE_CAP, f"{where}: representation enumeration = series coefficients", max_order=ORACLE_CAP)
    add("f1-partition-scan", _oracle(f1_partition_scan), _ds(SeriesId.F1), ORACLE_CAP,
        'Definition 2.1, "if the partition has n ones then the largest part is 2n+2k+1"',
        max_order=ORACLE_CAP)

    ids = [r.id for r in recs]
    assert len(ids) == len(set(ids)), "duplicate identity ids"
    return recs


@lru_cache(maxsize=1)
def catalog() -> tuple[IdentityRecord, ...]:
    return tuple(build_catalog())


def list_identities(records: Sequence[IdentityRecord] | None = None) -> list[dict]:
    return [r.summary() for r in (catalog() if records is None else records)]


def find(pattern: str, records: Sequence[IdentityRecord] | None = None) -> list[IdentityRecord]:
    """Records whose id equals ``pattern``, else those matching it as a glob."""
    records = catalog() if records is None else records
    exact = [r for r in records if r.id == pattern]
    if exact:
        return exact
    return [r for r in records if fnmatch.fnmatchcase(r.id, pattern)]


def _lookup(id: str, records: Sequence[IdentityRecord]) -> IdentityRecord:
    for r in records:
        if r.id == id:
            return r
    raise KeyError(f"unknown identity id {id!r}")


def verify(
    id: str | IdentityRecord,
    order: int | None = None,
    *,
    records: Sequence[IdentityRecord] | None = None,
    order_cap: int = DEFAULT_ORDER_CAP,
) -> VerificationReport:
    """Build both sides of one identity and compare them.

    Raises KeyError for an unknown id.  Orders past the safety cap and
    builder failures come back as ERROR reports.
    """
    rec = id if isinstance(id, IdentityRecord) else _lookup(id, catalog() if records is None else records)
    order = rec.default_order if order is None else order
    report = VerificationReport(rec.id, order, Status.ERROR, severity=rec.severity)
    cap = order_cap if rec.max_order is None else min(order_cap, rec.max_order)
    if order > cap:
        report.detail = f"order {order} exceeds the safety cap {cap}"
        return report
    if order < 0:
        report.detail = "order must be nonnegative"
        return report
    t0 = time.perf_counter()
    try:
        lhs, rhs = rec.lhs(order), rec.rhs(order)
        report.integral = lhs.is_integral() and rhs.is_integral()
        if rec.kind is Kind.EQUAL:
            cmp = lhs.equal_to_order(rhs, order)
            if cmp:
                report.status = Status.PASS
            else:
                report.status = Status.FAIL
                report.first_mismatch, report.lhs_coeff, report.rhs_coeff = cmp.exponent, cmp.left, cmp.right
        else:
            bad = (lhs - rhs).first_negative(order)
            if bad is None:
                report.status = Status.PASS
            else:
                report.status = Status.FAIL
                report.first_mismatch = bad
                report.lhs_coeff, report.rhs_coeff = lhs.coeff_at(bad), rhs.coeff_at(bad)
    except Exception as exc:  # surfaced in the report, never raised
        report.status = Status.ERROR
        report.detail = f"{type(exc).__name__}: {exc}"
    report.wall_ms = round((time.perf_counter() - t0) * 1000)
    return report


def _verify_by_id(args: tuple[str, int | None, int]) -> VerificationReport:
    id, order, cap = args
    return verify(id, order, order_cap=cap)


def verify_all(
    order: int | None = None,
    *,
    ids: Iterable[str] | None = None,
    records: Sequence[IdentityRecord] | None = None,
    jobs: int = 1,
    order_cap: int = DEFAULT_ORDER_CAP,
) -> Summary:
    """Verify a batch of records (all by default) in catalog order.

    An ``order`` override is clamped to each record's own feasibility cap
    (the partition oracles stop at 40).
    """
    pool = catalog() if records is None else records
    if ids is None:
        chosen = list(pool)
    else:
        wanted = set(ids)
        chosen = [r for r in pool if r.id in wanted]
    work = []
    for r in chosen:
        o = order
        if o is not None and r.max_order is not None:
            o = min(o, r.max_order)
        work.append((r, o))
    t0 = time.perf_counter()
    if jobs > 1 and records is None and len(work) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            reports = list(ex.map(_verify_by_id, [(r.id, o, order_cap) for r, o in work]))
    else:
        reports = [verify(r, o, order_cap=order_cap) for r, o in work]
    return Summary(reports, round((time.perf_counter() - t0) * 1000))
