import sys

import pytest

from collapsekit import corpus as cp
from collapsekit.complex import SimplicialComplex


@pytest.fixture(scope="session")
def gs32():
    return cp.gs_32()


@pytest.fixture(scope="session")
def ball():
    return cp.ball_B()


@pytest.fixture(scope="session")
def dunce():
    return cp.dunce_hat_D()


@pytest.fixture
def tet():
    return SimplicialComplex.simplex(3)


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    lines = getattr(module, "LINES", [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
