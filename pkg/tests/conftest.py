import random
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from heliotrack.stepfn import StepFunction  # noqa: E402


@pytest.fixture
def f1():
    return StepFunction.from_pairs([(2, 1), (1, 5), (3, 2), (1, 4), (2, 1)])


@pytest.fixture
def f2():
    return StepFunction.from_pairs([(1, 10), (5, 0), (4, 4)])


@pytest.fixture
def f3():
    return StepFunction.from_pairs([(2, 1), (1, 3), (2, 1)])


@pytest.fixture
def rng():
    return random.Random(20240611)


_acceptance = []


def pytest_runtest_logreport(report):
    if report.when == "call" and "test_acceptance.py" in report.nodeid:
        _acceptance.append((report.nodeid.split("::")[-1], report.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome in _acceptance:
        terminalreporter.write_line(f"{'PASS' if outcome == 'passed' else 'FAIL'}  {name}")
