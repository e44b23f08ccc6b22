import sys

import mpmath
import pytest
from hypothesis import HealthCheck, settings

mpmath.mp.dps = 40

settings.register_profile(
    "default", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


def rel(a, b):
    return abs(a - b) / abs(b)


@pytest.fixture
def mp():
    return mpmath


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is not None and mod.LINES:
        terminalreporter.section("acceptance criteria")
        for line in mod.LINES:
            terminalreporter.write_line(line)
