from fractions import Fraction

import pytest

from markovhull.geometry import Point2
from markovhull.sampling import corpus


def pts(*coords):
    return [Point2(Fraction(x), Fraction(y)) for x, y in coords]


SQUARE = pts((0, 0), (4, 0), (4, 4), (0, 4))
SQUARE_PLUS_INTERIOR = SQUARE + pts((1, 2))


def gadget5(a):
    return pts((-1, -1), (-1, 1), (1, 1), (1, -1), (1 + Fraction(a), 0))


def gadget6(a):
    return gadget5(a) + pts((-1 + Fraction(a), 0))


@pytest.fixture(scope="session")
def small_corpus():
    return corpus(seed=11, count=150)


def pytest_terminal_summary(terminalreporter):
    import sys

    acceptance = sys.modules.get("test_acceptance")
    lines = getattr(acceptance, "REPORT", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
