import pytest

from wlift.gf import Field


@pytest.fixture(scope="session")
def fields():
    """Small fields keyed by q."""
    return {q: Field(p, e) for q, p, e in [(2, 2, 1), (3, 3, 1), (4, 2, 2), (5, 5, 1),
                                            (7, 7, 1), (8, 2, 3), (9, 3, 2), (16, 2, 4),
                                            (25, 5, 2), (27, 3, 3), (32, 2, 5), (64, 2, 6)]}


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS, line
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for n in sorted(RESULTS):
            terminalreporter.write_line(line(n))
