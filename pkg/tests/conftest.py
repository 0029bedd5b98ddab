import numpy as np
import pytest

from pentaq.special_functions import ModularPair

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def omega():
    """A generic quasi-period pair with Im(omega1/omega2) > 0."""
    return ModularPair(0.4 + 0.9j, 1.0)
