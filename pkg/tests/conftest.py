from __future__ import annotations

import time
from pathlib import Path

import pytest

from vibhakti.lexicon import load_lexicon
from vibhakti.rules import load_ruleset

TESTS = Path(__file__).parent
ROOT = TESTS.parent

_criteria: dict[int, dict] = {}
_session_start = time.perf_counter()


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion gate")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    number, title = marker.args
    entry = _criteria.setdefault(number, {"title": title, "passed": True, "ran": False,
                                          "suite_budget": None})
    entry["suite_budget"] = marker.kwargs.get("suite_budget", entry["suite_budget"])
    if report.when == "call" or (report.when == "setup" and not report.passed):
        entry["ran"] = True
        if not report.passed:
            entry["passed"] = False


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    elapsed = time.perf_counter() - _session_start
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        entry = _criteria[number]
        ok = entry["passed"] and entry["ran"]
        note = ""
        budget = entry["suite_budget"]
        if budget is not None:
            # Whole-run wall time is only known once every test has finished.
            ok = ok and elapsed < budget
            note = f" (suite {elapsed:.1f}s, budget {budget}s)"
        status = "PASS" if ok else "FAIL"
        terminalreporter.write_line(f"criterion {number}: {status}  {entry['title']}{note}")


@pytest.fixture(scope="session")
def rules():
    return load_ruleset()


@pytest.fixture(scope="session")
def lexicon(rules):
    return load_lexicon(xprime=rules)
