import os

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from toeplimit.symbol import LaurentSymbol

settings.register_profile("default", deadline=None, max_examples=40,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

# acceptance lines collected by test_acceptance.py, printed after the run
ACCEPTANCE: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE:
            terminalreporter.write_line(line)


@pytest.fixture
def star():
    return LaurentSymbol({-4: 1, 1: 1})


@pytest.fixture
def main_symbol():
    return LaurentSymbol({-1: -2, 0: 4 - 4j, 1: 7j, 2: -3 - 3j, 3: 1})


@pytest.fixture
def cosine():
    return LaurentSymbol({-1: 1, 1: 1})


def square(x0, y0, x1, y1):
    return np.array([[x0, y0], [x1, y0], [x1, y1], [x0, y1]], dtype=float)
