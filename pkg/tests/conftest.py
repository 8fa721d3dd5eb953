import os
from collections import defaultdict

import pytest
from hypothesis import settings

settings.register_profile("ci", max_examples=60, deadline=None)
settings.register_profile("dev", max_examples=20, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "ci"))

_CRITERIA = {
    1: "catalogue counts 1, 2, 4, 8",
    2: "catalogue families match the stored lists",
    3: "worked direct sums",
    4: "rank additivity and split ranks for small sums",
    5: "dual of a sum is the sum of duals",
    6: "direct sum is coordinate independent",
    7: "union and intersection identities",
    8: "submodular functions induce q-matroids",
    9: "block representations over GF(2^m)",
    10: "four distinct q-matroids with the same minors",
    11: "circuit and hyperplane relations",
    12: "dual involution and minor duality",
}
_outcomes = defaultdict(list)


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number")


def pytest_collection_modifyitems(items):
    for item in items:
        mark = item.get_closest_marker("criterion")
        if mark:
            item.user_properties.append(("criterion", mark.args[0]))


def pytest_runtest_logreport(report):
    crit = dict(report.user_properties).get("criterion")
    if crit is None:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        ok = report.passed and not hasattr(report, "wasxfail")
        _outcomes[crit].append(ok)


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for n, title in _CRITERIA.items():
        results = _outcomes.get(n)
        if results is None:
            status = "NOT RUN"
        else:
            status = "PASS" if all(results) else "FAIL"
        terminalreporter.write_line(f"criterion {n:2d} {status:7s} {title}")


@pytest.fixture(scope="session")
def f2():
    from qmat.gf import field_make

    return field_make(2)


@pytest.fixture(scope="session")
def named():
    from qmat.analysis import golden_matroids

    return golden_matroids()
