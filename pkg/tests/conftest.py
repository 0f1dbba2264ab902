import random

import pytest
from hypothesis import HealthCheck, settings

from modpoly_deform.ellcurve.endomorphism import base_curve
from modpoly_deform.ringarith import QuadExtField

settings.register_profile("default", max_examples=40, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

# Lines registered by the acceptance suite, echoed in the terminal summary.
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def F167():
    return QuadExtField(167)


@pytest.fixture(scope="session")
def E0_167(F167):
    return base_curve(F167)


@pytest.fixture
def rng():
    return random.Random(12345)
