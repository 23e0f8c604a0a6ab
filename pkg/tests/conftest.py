from fractions import Fraction

import pytest

from dfl.geometry import SiteSet
from dfl.triangulation import Triangulation

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def record_criterion():
    def record(number, name, passed, detail=""):
        line = f"{'PASS' if passed else 'FAIL'}  criterion {number:>2}: {name}"
        if detail:
            line += f"  [{detail}]"
        ACCEPTANCE_LINES.append(line)
        print(line)
        return passed
    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def kite():
    """Quadrilateral A(0,0) B(2,0) C(3,2) D(0,2); BD is its Delaunay diagonal."""
    sites = SiteSet([(0, 0), (2, 0), (3, 2), (0, 2)])
    return {
        "sites": sites,
        "bd": Triangulation(sites, [(0, 1, 3), (1, 2, 3)]),
        "ac": Triangulation(sites, [(0, 1, 2), (0, 2, 3)]),
        "points": [(0, 0), (2, 0), (3, 2), (0, 2)],
    }


@pytest.fixture
def unit_triangle():
    sites = SiteSet([(0, 0), (1, 0), (0, 1)])
    return Triangulation(sites, [(0, 1, 2)])


F = Fraction
