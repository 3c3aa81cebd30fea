from __future__ import annotations

import re

import pytest

from toda_kdv.profiles import ProfilePair, TrigPoly
from toda_kdv.runner import standard_profiles

SWEEP = (64, 128, 256, 512, 1024)

_criteria: dict[int, tuple[str, str]] = {}


@pytest.fixture(scope="session")
def standard():
    return standard_profiles()


@pytest.fixture(scope="session")
def free():
    return ProfilePair()


@pytest.fixture(scope="session")
def cos_pair():
    return ProfilePair(TrigPoly(0.0, (1.0,)), TrigPoly())


def pytest_runtest_logreport(report):
    m = re.search(r"test_acceptance\.py::test_criterion_(\d+)_(\w+)", report.nodeid)
    if not m:
        return
    idx, name = int(m.group(1)), m.group(2).replace("_", " ")
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _criteria[idx] = ("PASS" if report.outcome == "passed" else "FAIL", name)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for idx in sorted(_criteria):
        verdict, name = _criteria[idx]
        terminalreporter.write_line(f"CRITERION {idx:02d} {verdict}  {name}")
