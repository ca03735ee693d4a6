import pathlib

import pytest

from distgraph import EnumerationParams, enumerate_census, graph

FIXTURES = pathlib.Path(__file__).parent / "fixtures"
GOLDEN = pathlib.Path(__file__).parent / "golden"

# the census used by the property and acceptance suites
CENSUS_PARAMS = EnumerationParams(max_edges=4, require_orientable=True, max_patch_genus=0)


def fix_a():
    return graph(["P"], [("u", "U", "P", "P"), ("v", "V", "P", "P")], [(0, ["u v u^-1 v^-1"])])


def fix_b():
    return graph(
        ["P", "Q"],
        [("u", "U", "P", "P"), ("v", "V", "Q", "Q")],
        [(0, ["u"]), (0, ["v"]), (0, ["u^-1", "v^-1"])],
    )


def fix_c():
    return graph(["P"], [("u", "U", "P", "P"), ("v", "V", "P", "P")], [(0, ["u v u v^-1"])])


def fix_d():
    return graph(["P"], [("u", "U", "P", "P"), ("v", "V", "P", "P")], [(0, ["u u^-1 v v^-1"])])


@pytest.fixture
def A():
    return fix_a()


@pytest.fixture
def B():
    return fix_b()


@pytest.fixture
def C():
    return fix_c()


@pytest.fixture
def D():
    return fix_d()


@pytest.fixture(scope="session")
def census():
    return enumerate_census(CENSUS_PARAMS)


def pytest_terminal_summary(terminalreporter):
    try:
        import test_acceptance
    except ImportError:
        return
    if test_acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in test_acceptance.RESULTS:
            terminalreporter.write_line(line)
