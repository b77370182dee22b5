from __future__ import annotations

import itertools
from pathlib import Path

import pytest

from deodhar.coxeter import identity, right_mul
from deodhar.diagrams import (
    BLACK,
    FerrersShape,
    GoDiagram,
    PLUS,
    WHITE,
    box_transposition,
    go_diagram,
)

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"

# the worked 3x3 weighted-network example: full shape over [6] with two
# white and two black stones
GO33_FILL = {
    (1, 6): PLUS, (1, 5): BLACK, (1, 4): PLUS,
    (2, 6): BLACK, (2, 5): PLUS, (2, 4): WHITE,
    (3, 6): PLUS, (3, 5): WHITE, (3, 4): PLUS,
}
GO33_WEIGHTS = {
    (1, 6): 2, (1, 5): 1, (1, 4): 1,
    (2, 5): -1, (2, 6): 0,
    (3, 4): 1, (3, 6): 2,
}
# the published value table; entries 236, 356, 456 are mutually inconsistent
# with the rest (see tests), our computed values differ there
PUBLISHED_TABLE = {
    (1, 2, 3): 1, (2, 3, 4): 1, (1, 2, 4): 1, (2, 3, 5): 1,
    (1, 2, 5): 0, (2, 3, 6): 2, (1, 2, 6): 2, (2, 4, 5): 1,
    (1, 3, 4): 0, (2, 4, 6): 2, (1, 3, 5): -1, (2, 5, 6): -2,
    (1, 3, 6): 0, (3, 4, 5): 1, (1, 4, 5): -1, (3, 4, 6): 0,
    (1, 4, 6): 0, (3, 5, 6): -2, (1, 5, 6): 2, (4, 5, 6): -2,
}
COMPUTED_CORRECTIONS = {(2, 3, 6): 4, (3, 5, 6): -4, (4, 5, 6): -2}

# the two-column, three-row fiber example base over [5]
FIBER_BASE_FILL = {
    (1, 5): BLACK, (1, 4): PLUS,
    (2, 5): PLUS, (2, 4): WHITE,
    (3, 5): WHITE, (3, 4): PLUS,
}


@pytest.fixture
def go33() -> GoDiagram:
    return go_diagram(FerrersShape(6, 3, (1, 2, 3)), GO33_FILL)


@pytest.fixture
def fiber_base() -> GoDiagram:
    return go_diagram(FerrersShape(5, 3, (1, 2, 3)), FIBER_BASE_FILL)


def all_shapes(k: int, n: int):
    for vs in itertools.combinations(range(1, n + 1), k):
        yield FerrersShape(n, k, vs)


def valid_fillings(shape: FerrersShape):
    """Every distinguished filling; the legal symbols at a box are forced by
    the stone product of the boxes already read, so no backtracking."""
    boxes = shape.boxes()
    out = []

    def grow(idx, u, fill):
        if idx == len(boxes):
            out.append(dict(fill))
            return
        b = boxes[idx]
        l = box_transposition(shape, b)
        if u[l - 1] > u[l]:
            fill[b] = BLACK
            grow(idx + 1, right_mul(u, l), fill)
        else:
            fill[b] = PLUS
            grow(idx + 1, u, fill)
            fill[b] = WHITE
            grow(idx + 1, right_mul(u, l), fill)
        del fill[b]

    grow(0, identity(shape.n), {})
    return out


def all_valid_diagrams(k: int, n: int):
    for shape in all_shapes(k, n):
        for fill in valid_fillings(shape):
            yield go_diagram(shape, fill)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
