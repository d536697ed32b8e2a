import dataclasses
import json

import pytest

from qlab.closedforms import ClosedForm, closed_form
from qlab.registry import (
    IdentityRecord,
    Kind,
    Severity,
    Status,
    catalog,
    find,
    list_identities,
    verify,
    verify_all,
)
from qlab.series import monomial


def by_id():
    return {item["id"]: item for item in list_identities()}


def test_ids_unique_and_ordered():
    ids = [item["id"] for item in list_identities()]
    assert len(ids) == len(set(ids))
    assert ids == [r.id for r in catalog()]


def test_anchors():
    items = by_id()
    assert "Theorem 2.2" in items["thm-f1"]["anchor"]
    assert "help-1 positive-1" in items["lambert-theta"]["anchor"]
    pos = items["positivity-f2"]
    assert "Corollary 2.6" in pos["anchor"] and "F_2(n) q^n \\succeq 0" in pos["anchor"]
    assert pos["kind"] == "DOMINATES"


def test_severity_split():
    items = by_id()
    assert items["bound-f1"]["severity"] == "HARD"
    assert items["bound-f2"]["severity"] == "INFO"
    info = [i for i, item in items.items() if item["severity"] == "INFO"]
    assert info == ["bound-f2"]


def test_catalog_completeness():
    ids = set(by_id())
    expected = {"thm-f1", "thm-f2", "thm-g", "positivity-f1", "positivity-f2", "positivity-g",
                "bound-f1", "bound-f2", "bound-g", "lemma-a2", "lemma-b2", "help-id-1",
                "help-2-double-1", "lambert-theta", "oracle-f1", "oracle-f2", "oracle-g",
                "f1-partition-scan", "heine2[lemma-3.2]", "heine2[lemma-3.5]",
                "qbinom[help-2-double-1]"}
    expected |= {f"lemma-a2m[m={m}]" for m in range(2, 7)}
    expected |= {f"lemma-b2m[m={m}]" for m in range(2, 7)}
    for m in range(1, 7):
        expected |= {f"lemma-aprime-1[m={m}]", f"lemma-aprime-2[m={m}]", f"lemma-bprime[m={m}]",
                     f"heine1[lemma-3.3,m={m}]", f"kratt21[lemma-3.4,m={m}]", f"kratt21[lemma-3.7,m={m}]"}
    expected |= {f"telescope-{x}[m={m}]" for x in "ab" for m in range(2, 13, 2)}
    expected |= {f"chain-{x}[m={m}]" for x in "ab" for m in range(1, 6)}
    assert expected <= ids
    assert any(i.startswith("basic-split") for i in ids)
    assert any(i.startswith("basic-tail") for i in ids)


def test_verify_theorem():
    r = verify("thm-f1", 200)
    assert r.status is Status.PASS and r.first_mismatch is None
    assert r.integral


def test_verify_order_zero():
    assert verify("thm-f1", 0).status is Status.PASS


def test_verify_default_order():
    assert verify("lemma-a2").order == 100


def test_positivity_semantics():
    r = verify("positivity-f1", 500)
    assert r.status is Status.PASS


def test_dominance_failure_reports_first_negative():
    r = verify("bound-f2")
    assert r.status is Status.FAIL and r.severity is Severity.INFO
    assert (r.first_mismatch, r.lhs_coeff, r.rhs_coeff) == (1, 0, 1)


def test_unknown_id():
    with pytest.raises(KeyError):
        verify("nonsense")


def test_order_cap_is_error_report():
    r = verify("thm-f1", 5000)
    assert r.status is Status.ERROR and "safety cap" in r.detail
    r = verify("oracle-f1", 41)
    assert r.status is Status.ERROR


def test_builder_exception_is_error_report():
    def boom(order):
        raise RuntimeError("broken builder")

    rec = IdentityRecord("boom", boom, boom, 5, "test")
    r = verify(rec)
    assert r.status is Status.ERROR and "broken builder" in r.detail


def test_fault_injection():
    records = find("thm-*") + find("lemma-a2*") + find("lemma-b2")
    good = records[0]
    assert good.id == "thm-f1"
    records[0] = dataclasses.replace(
        good, rhs=lambda order: closed_form(ClosedForm.THM_F1, order) + monomial(1, 37, order)
    )
    summary = verify_all(records=records)
    failed = [r for r in summary.reports if r.failed]
    assert [r.id for r in failed] == ["thm-f1"]
    assert failed[0].first_mismatch == 37
    assert not summary.ok


def test_info_failure_keeps_run_ok():
    summary = verify_all(ids=["bound-f2", "bound-f1"])
    assert [r.id for r in summary.reports] == ["bound-f1", "bound-f2"]
    assert summary.ok and summary.info_failed == 1


def test_empty_filter():
    summary = verify_all(ids=[])
    assert summary.reports == [] and summary.ok


def test_order_override_clamped_to_record_cap():
    summary = verify_all(60, ids=["oracle-g", "thm-g"])
    assert [r.order for r in summary.reports] == [60, 40]
    assert all(r.status is Status.PASS for r in summary.reports)


def test_find_exact_then_glob():
    assert [r.id for r in find("thm-f1")] == ["thm-f1"]
    assert len(find("lemma-a2m*")) == 5
    assert find("heine1[lemma-3.3,m=2]")[0].id == "heine1[lemma-3.3,m=2]"
    assert find("nothing-*") == []


def test_json_schema():
    r = verify("bound-f2")
    data = r.to_json()
    assert set(data) == {"id", "order", "status", "first_mismatch", "lhs_coeff", "rhs_coeff", "wall_ms"}
    assert data["lhs_coeff"] == "0" and data["status"] == "FAIL"
    text = json.dumps(data, sort_keys=True)
    assert json.dumps(json.loads(text), sort_keys=True) == text


def test_deterministic():
    ids = ["thm-g", "lemma-b2m[m=3]", "kratt21[lemma-3.7,m=2]", "basic-tail[trial=3]"]
    strip = lambda s: [dict(r.to_json(), wall_ms=0) for r in s.reports]  # noqa: E731
    assert strip(verify_all(ids=ids)) == strip(verify_all(ids=ids))


def test_record_kinds():
    kinds = {r.id: r.kind for r in catalog()}
    assert kinds["positivity-g"] is Kind.DOMINATES
    assert kinds["thm-g"] is Kind.EQUAL
