from collections import defaultdict

import pytest

from qlab.registry import verify_all

CRITERIA = {
    1: "theorem reproduction to order 200",
    2: "positivity to order 500, F1 bound to order 300",
    3: "lemma suite to order 100",
    4: "contiguous relations, chains and limit identities",
    5: "classical identity instances and splitting/tail laws",
    6: "Lambert identity",
    7: "oracle equivalence for N <= 40",
    8: "algebra properties and integral coefficients",
}

_outcomes = defaultdict(list)


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion the test belongs to")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    n = marker.args[0]
    if report.when == "call":
        # an expected failure is still a failed criterion
        passed = report.passed and not hasattr(report, "wasxfail")
        _outcomes[n].append((item.name, passed))
    elif report.failed or report.skipped:
        _outcomes[n].append((item.name, False))


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for n, label in CRITERIA.items():
        results = _outcomes.get(n)
        if not results:
            continue
        failed = [name for name, ok in results if not ok]
        status = "FAIL" if failed else "PASS"
        tr.write_line(f"criterion {n}: {status}  {label} ({len(results) - len(failed)}/{len(results)})")
        for name in failed:
            tr.write_line(f"    failed: {name}")


@pytest.fixture(scope="session")
def full_run():
    return verify_all()
