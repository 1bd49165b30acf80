import sys

import pytest

from infmax import fixtures
from infmax.scenarios import single_scenario


@pytest.fixture
def fig1():
    return fixtures.fig1_network()


@pytest.fixture
def fig1_live(fig1):
    """The all-arcs-live scenario of the nine-node network."""
    return single_scenario(fig1).scenarios[0]


@pytest.fixture
def a1():
    return fixtures.a1_15node()


@pytest.fixture
def a1_live(a1):
    return single_scenario(a1).scenarios[0]



def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is not None and mod.VERDICTS:
        terminalreporter.section("acceptance criteria")
        for line in mod.VERDICTS:
            terminalreporter.write_line(line)
