import pathlib

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from srk.quaternion import Quaternion
from srk.quotient import RegularQuotient, star_maps
from srk.series import RegularPoly, monomial

settings.register_profile(
    "srk", derandomize=True, deadline=None, max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("srk")

DATA = pathlib.Path(__file__).parent / "data"

I = Quaternion(0, 1, 0, 0)
J = Quaternion(0, 0, 1, 0)

# lines collected by test_acceptance, echoed in the terminal summary
ACCEPTANCE_LINES = []


def bracket_map():
    """``(1 + q i/2)^{-*} * (q - i/2)``."""
    return RegularQuotient(RegularPoly([[1, 0, 0, 0], [0, 0.5, 0, 0]]),
                           RegularPoly([[0, -0.5, 0, 0], [1, 0, 0, 0]]))


def corrected_map():
    """``-q f(q) j`` for the map of :func:`bracket_map`."""
    return star_maps(monomial(1, -1.0), bracket_map()).times_right(J)


@pytest.fixture
def fb():
    return bracket_map()


@pytest.fixture
def gc():
    return corrected_map()


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def data_dir():
    return DATA


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
