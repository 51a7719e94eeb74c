import numpy as np
import pytest

from hardy_interp.disk_geometry import PointSequence


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


@pytest.fixture
def exp12():
    return PointSequence.exponential(0.5, 12)


@pytest.fixture
def exp10():
    return PointSequence.exponential(0.5, 10)


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[number])
