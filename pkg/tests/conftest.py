import pytest

from hypersemi import Hypergroupoid

# order-2 fixtures; cells are bitmasks ({0}=1, {1}=2, {0,1}=3)
H2L = Hypergroupoid(2, ((1, 1), (2, 2)))  # left zero: a∘b = {a}
H2R = Hypergroupoid(2, ((1, 2), (1, 2)))  # right zero: a∘b = {b}
H2F = Hypergroupoid(2, ((3, 3), (3, 3)))  # every cell full
H2C = Hypergroupoid(2, ((1, 1), (1, 1)))  # constant {0}
H2M = Hypergroupoid(2, ((1, 3), (2, 1)))  # not associative

FIXTURES = {"h2l": H2L, "h2r": H2R, "h2f": H2F, "h2c": H2C, "h2m": H2M}


@pytest.fixture(params=sorted(FIXTURES))
def fixture_structure(request):
    return FIXTURES[request.param]


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for key in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[key])
