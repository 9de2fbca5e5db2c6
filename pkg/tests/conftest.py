import math
import sys
from pathlib import Path

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile(
    "repo",
    deadline=None,
    max_examples=60,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("repo")

from zonoclass import canonicalize  # noqa: E402


@pytest.fixture
def hexagon():
    return canonicalize([[math.cos(a), math.sin(a)] for a in (0, math.pi / 3, 2 * math.pi / 3)])


@pytest.fixture
def square():
    return canonicalize(np.eye(2))


@pytest.fixture
def skew_pair():
    """Two unit directions 70 degrees apart: not a root system."""
    t = math.radians(70)
    return canonicalize([[1.0, 0.0], [math.cos(t), math.sin(t)]])


# one summary line per acceptance criterion, collected from marked tests
_criteria = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion exercised by the test")


def pytest_runtest_logreport(report):
    crit = getattr(report, "criterion", None)
    if crit is None:
        return
    if report.when == "call" or report.outcome == "failed":
        entry = _criteria.setdefault(crit, {"passed": 0, "failed": 0})
        entry["passed" if report.outcome == "passed" else "failed"] += 1


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is not None:
        report.criterion = marker.args[0]


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for crit in sorted(_criteria):
        entry = _criteria[crit]
        status = "PASS" if entry["failed"] == 0 else "FAIL"
        terminalreporter.write_line(
            f"criterion {crit}: {status} ({entry['passed']} passed, {entry['failed']} failed)"
        )
