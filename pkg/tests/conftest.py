from fractions import Fraction

import pytest

from lukamax import FiniteDomain, LClausalForm, clause


@pytest.fixture
def d3():
    return FiniteDomain(3)


@pytest.fixture
def x_and_not_x():
    return LClausalForm(1, (clause(1), clause(-1)))


def F(s):
    return Fraction(s)


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
