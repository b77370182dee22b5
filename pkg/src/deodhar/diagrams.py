"""Ferrers shapes, Go/Le-diagrams, reading orders, box sets I_b, cell equations.

Geometry conventions:

- A shape for (k, n) is recorded by its k vertical steps: the labels, read
  from the northeast corner of the ambient k x (n-k) rectangle, of the
  downward steps of the shape's southeast border path.  Rows carry vertical-step
  labels top to bottom in increasing order; columns carry horizontal-step
  labels left to right in *decreasing* order.  A box (i, j) exists exactly
  when i is a vertical step, j a horizontal step, and i < j.
- The canonical reading order walks rows bottom to top, each row from its
  rightmost box (smallest column label) to its leftmost.  Any filling of the
  boxes by 1..m increasing upward and to the left is a valid reading order.
- Fillings use the symbols "+" (plus), "o" (white stone), "b" (black stone).
  Stones mark the letters taken by the subexpression; a black stone marks a
  taken letter whose multiplication shortens the running product.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .coxeter import (
    Permutation,
    Word,
    evaluate_word,
    gale_lt,
    identity,
    is_grassmannian,
    length,
    right_mul,
)

PLUS = "+"
WHITE = "o"
BLACK = "b"
FILLS = (PLUS, WHITE, BLACK)

Box = tuple[int, int]


class InvalidDiagramError(ValueError):
    pass


class InvalidNecklaceError(ValueError):
    pass


@dataclass(frozen=True)
class FerrersShape:
    n: int
    k: int
    vertical_steps: tuple[int, ...]

    def __post_init__(self) -> None:
        steps = tuple(sorted(self.vertical_steps))
        object.__setattr__(self, "vertical_steps", steps)
        if len(steps) != self.k or len(set(steps)) != self.k:
            raise InvalidDiagramError("vertical_steps must be a k-subset of [n]")
        if steps and (steps[0] < 1 or steps[-1] > self.n):
            raise InvalidDiagramError("vertical_steps must lie in [n]")

    @property
    def horizontal_steps(self) -> tuple[int, ...]:
        vs = set(self.vertical_steps)
        return tuple(j for j in range(1, self.n + 1) if j not in vs)

    def row_length(self, i: int) -> int:
        return sum(1 for j in self.horizontal_steps if j > i)

    def row_position(self, i: int) -> int:
        """1-based row index from the top."""
        return self.vertical_steps.index(i) + 1

    def column_position(self, j: int) -> int:
        """1-based column index from the left; large labels sit leftmost."""
        hs = self.horizontal_steps
        return len(hs) - hs.index(j)

    def column_height(self, j: int) -> int:
        return sum(1 for i in self.vertical_steps if i < j)

    def row_boxes(self, i: int) -> tuple[Box, ...]:
        """Boxes of row i, rightmost (smallest column label) first."""
        return tuple((i, j) for j in self.horizontal_steps if j > i)

    def boxes(self) -> tuple[Box, ...]:
        """All boxes in the canonical reading order."""
        out: list[Box] = []
        for i in reversed(self.vertical_steps):
            out.extend(self.row_boxes(i))
        return tuple(out)

    def contains(self, box: Box) -> bool:
        i, j = box
        return i in self.vertical_steps and j in set(self.horizontal_steps) and i < j

    def box_count(self) -> int:
        return sum(self.row_length(i) for i in self.vertical_steps)


def shape_from_permutation(p: Permutation, k: int) -> FerrersShape:
    """Shape whose vertical steps are the first k images of a Grassmannian p."""
    if not is_grassmannian(p, k):
        raise InvalidDiagramError(f"{p} is not Grassmannian with descent at {k}")
    return FerrersShape(len(p), k, tuple(sorted(p[:k])))


def box_transposition(shape: FerrersShape, box: Box) -> int:
    """Generator index of a box: n-k at the top-left, -1 right, +1 down."""
    if not shape.contains(box):
        raise InvalidDiagramError(f"box {box} is not in the shape")
    i, j = box
    r = shape.row_position(i)
    m = shape.horizontal_steps.index(j) + 1
    return r + m - 1


def is_reading_order(shape: FerrersShape, order: Sequence[Box]) -> bool:
    seen: set[Box] = set()
    for i, j in order:
        # every box weakly southeast must already have been read
        for i2, j2 in shape.boxes():
            if (i2, j2) != (i, j) and i2 >= i and j2 <= j and (i2, j2) not in seen:
                return False
        seen.add((i, j))
    return seen == set(shape.boxes())


def all_reading_orders(shape: FerrersShape) -> Iterable[tuple[Box, ...]]:
    """All linear extensions of the southeast-first box order."""
    boxes = list(shape.boxes())

    def extend(prefix: list[Box], rest: list[Box]):
        if not rest:
            yield tuple(prefix)
            return
        for b in list(rest):
            i, j = b
            if all(not (i2 >= i and j2 <= j) for i2, j2 in rest if (i2, j2) != b):
                rest.remove(b)
                prefix.append(b)
                yield from extend(prefix, rest)
                prefix.pop()
                rest.append(b)

    yield from extend([], boxes)


def word_of_shape(shape: FerrersShape, order: Sequence[Box] | None = None) -> Word:
    if order is None:
        order = shape.boxes()
    elif not is_reading_order(shape, order):
        raise InvalidDiagramError("not a valid reading order")
    return Word(shape.n, tuple(box_transposition(shape, b) for b in order))


@dataclass(frozen=True)
class GoDiagram:
    shape: FerrersShape
    cells: tuple[tuple[Box, str], ...]

    def __post_init__(self) -> None:
        cells = tuple(sorted(self.cells))
        object.__setattr__(self, "cells", cells)
        boxes = set(self.shape.boxes())
        filled = [b for b, _ in cells]
        if set(filled) != boxes or len(filled) != len(boxes):
            raise InvalidDiagramError("filling must cover each box exactly once")
        for _, f in cells:
            if f not in FILLS:
                raise InvalidDiagramError(f"unknown fill symbol {f!r}")

    @property
    def filling(self) -> dict[Box, str]:
        return dict(self.cells)

    def fill(self, box: Box) -> str:
        return self.filling[box]

    def boxes_with(self, symbol: str) -> tuple[Box, ...]:
        return tuple(b for b, f in self.cells if f == symbol)


def go_diagram(shape: FerrersShape, filling: Mapping[Box, str]) -> GoDiagram:
    return GoDiagram(shape, tuple(filling.items()))


def all_plus_diagram(shape: FerrersShape) -> GoDiagram:
    return go_diagram(shape, {b: PLUS for b in shape.boxes()})


@dataclass(frozen=True)
class FillingReport:
    ok: bool
    violations: tuple[tuple[Box, str, str], ...]


def _walk(diagram: GoDiagram, order: Sequence[Box] | None = None):
    """Yield (box, fill, shortens, u_before) along a reading order.

    u is the running product of the stones read so far; ``shortens`` says
    whether multiplying by the box's transposition would decrease its length.
    """
    fill = diagram.filling
    shape = diagram.shape
    if order is None:
        order = shape.boxes()
    u = identity(shape.n)
    for b in order:
        l = box_transposition(shape, b)
        shortens = u[l - 1] > u[l]
        yield b, fill[b], shortens, u
        if fill[b] in (WHITE, BLACK):
            u = right_mul(u, l)


def validate_filling(diagram: GoDiagram, order: Sequence[Box] | None = None) -> FillingReport:
    """Check the distinguished-property consistency of a filling.

    A plus or white stone must not shorten the running stone product; a
    black stone must shorten it.
    """
    if order is not None and not is_reading_order(diagram.shape, order):
        raise InvalidDiagramError("not a valid reading order")
    bad: list[tuple[Box, str, str]] = []
    for b, f, shortens, _ in _walk(diagram, order):
        if f == BLACK and not shortens:
            bad.append((b, f, "black stone must decrease length"))
        elif f in (PLUS, WHITE) and shortens:
            reason = "plus box violates the distinguished property" if f == PLUS \
                else "white stone must increase length"
            bad.append((b, f, reason))
    return FillingReport(not bad, tuple(bad))


def ensure_valid(diagram: GoDiagram) -> None:
    report = validate_filling(diagram)
    if not report.ok:
        raise InvalidDiagramError(f"invalid filling: {report.violations}")


def subexpression_pair(
    diagram: GoDiagram, order: Sequence[Box] | None = None
) -> tuple[Permutation, Permutation]:
    """(v, u): the shape word's permutation and the stone subexpression."""
    shape = diagram.shape
    if order is None:
        order = shape.boxes()
    v = evaluate_word(word_of_shape(shape, order))
    u = identity(shape.n)
    fill = diagram.filling
    for b in order:
        if fill[b] in (WHITE, BLACK):
            u = right_mul(u, box_transposition(shape, b))
    return v, u


def dimension(diagram: GoDiagram) -> int:
    return len(diagram.boxes_with(PLUS)) + len(diagram.boxes_with(BLACK))


def is_le_diagram(diagram: GoDiagram) -> bool:
    """No black stone, and no white stone with a plus left in its row and a
    plus above in its column."""
    ensure_valid(diagram)
    if diagram.boxes_with(BLACK):
        return False
    fill = diagram.filling
    for (i, j) in diagram.boxes_with(WHITE):
        plus_left = any(
            fill.get((i, j2)) == PLUS for j2 in range(j + 1, diagram.shape.n + 1)
        )
        plus_above = any(fill.get((i2, j)) == PLUS for i2 in range(1, i))
        if plus_left and plus_above:
            return False
    return True


def i_b_formula(diagram: GoDiagram, box: Box) -> frozenset[int]:
    """The k-subset I_b attached to a box, via the restricted-diagram product.

    Every box outside the open southeast quadrant of ``box`` is turned into a
    stone (including the box itself); the quadrant keeps its filling.  The
    product u of the resulting stones, read in reading order, determines
    I_b as its top k values with the box's row label swapped out for its
    column label.
    """
    shape = diagram.shape
    if not shape.contains(box):
        raise InvalidDiagramError(f"box {box} is not in the shape")
    bi, bj = box
    fill = diagram.filling
    u = identity(shape.n)
    for b in shape.boxes():
        i, j = b
        inside = i > bi and j < bj
        if not inside or fill[b] in (WHITE, BLACK):
            u = right_mul(u, box_transposition(shape, b))
    top = set(u[shape.n - shape.k:])
    if bi not in top or bj in top:
        raise AssertionError(f"I_b swap failed at {box}: top values {sorted(top)}")
    top.discard(bi)
    top.add(bj)
    return frozenset(top)


def richardson_set(diagram: GoDiagram) -> frozenset[int]:
    """Top k values of the stone subexpression; the unique Gale-maximal
    nonvanishing coordinate of the component."""
    ensure_valid(diagram)
    _, u = subexpression_pair(diagram)
    return frozenset(u[diagram.shape.n - diagram.shape.k:])


@dataclass(frozen=True)
class CellDescription:
    """Constraints on Plucker coordinates over k-subsets of [n]."""

    n: int
    k: int
    zero_set: frozenset[frozenset[int]] = frozenset()
    nonzero_set: frozenset[frozenset[int]] = frozenset()
    positive_set: frozenset[frozenset[int]] = frozenset()
    nonneg_set: frozenset[frozenset[int]] = frozenset()

    def __post_init__(self) -> None:
        classes = [self.zero_set, self.nonzero_set, self.positive_set, self.nonneg_set]
        for a, b in itertools.combinations(classes, 2):
            if a & b:
                raise InvalidDiagramError("description classes must be disjoint")

    def check(self, coords: Mapping[frozenset[int], Fraction]) -> bool:
        """Whether exact coordinate data satisfies every constraint."""
        for s in self.zero_set:
            if coords.get(s, Fraction(0)) != 0:
                return False
        for s in self.nonzero_set:
            if coords.get(s, Fraction(0)) == 0:
                return False
        for s in self.positive_set:
            if coords.get(s, Fraction(0)) <= 0:
                return False
        for s in self.nonneg_set:
            if coords.get(s, Fraction(0)) < 0:
                return False
        return True


def deodhar_description(diagram: GoDiagram) -> CellDescription:
    """Vanishing/nonvanishing constraints cutting out the Deodhar component."""
    ensure_valid(diagram)
    shape = diagram.shape
    source = frozenset(shape.vertical_steps)
    zero = {i_b_formula(diagram, b) for b in diagram.boxes_with(WHITE)}
    zero |= {
        frozenset(J)
        for J in itertools.combinations(range(1, shape.n + 1), shape.k)
        if gale_lt(1, J, source, n=shape.n)
    }
    nonzero = {i_b_formula(diagram, b) for b in diagram.boxes_with(PLUS)} | {source}
    return CellDescription(shape.n, shape.k, frozenset(zero), frozenset(nonzero))


@dataclass(frozen=True)
class GrassmannNecklace:
    n: int
    k: int
    sets: tuple[frozenset[int], ...]

    def __post_init__(self) -> None:
        sets = tuple(frozenset(s) for s in self.sets)
        object.__setattr__(self, "sets", sets)
        if len(sets) != self.n:
            raise InvalidNecklaceError("a necklace has one set per column")
        for m, s in enumerate(sets, start=1):
            if len(s) != self.k or not all(1 <= x <= self.n for x in s):
                raise InvalidNecklaceError(f"I_{m} is not a k-subset of [n]")
            nxt = sets[m % self.n]
            if not (s - {m}) <= nxt:
                raise InvalidNecklaceError(f"I_{m + 1} must contain I_{m} minus {m}")


def necklace_description(neck: GrassmannNecklace, flavor: str = "cell") -> CellDescription:
    """Plucker constraints of the positroid cell or stratum of a necklace.

    The cell flavor constrains every coordinate: zero strictly below some
    necklace set in its shifted Gale order, positive elsewhere.  The stratum
    flavor keeps the zero class, requires the necklace coordinates nonzero,
    and leaves the rest free.
    """
    n, k = neck.n, neck.k
    zero = frozenset(
        frozenset(J)
        for J in itertools.combinations(range(1, n + 1), k)
        if any(gale_lt(m, J, Im, n=n) for m, Im in enumerate(neck.sets, start=1))
    )
    if flavor == "cell":
        positive = frozenset(
            frozenset(J)
            for J in itertools.combinations(range(1, n + 1), k)
            if frozenset(J) not in zero
        )
        return CellDescription(n, k, zero_set=zero, positive_set=positive)
    if flavor == "stratum":
        nonzero = frozenset(neck.sets)
        return CellDescription(n, k, zero_set=zero, nonzero_set=nonzero)
    raise ValueError("flavor must be 'cell' or 'stratum'")


def closure_description(c: CellDescription) -> CellDescription:
    """Close the strict constraints: > 0 relaxes to >= 0, != 0 is dropped,
    the vanishing class is unchanged."""
    return CellDescription(
        c.n,
        c.k,
        zero_set=c.zero_set,
        nonzero_set=frozenset(),
        positive_set=frozenset(),
        nonneg_set=c.positive_set | c.nonneg_set,
    )


def le_to_necklace(diagram: GoDiagram) -> GrassmannNecklace:
    """Necklace of the positroid cell of a Le-diagram, read off its network."""
    from . import networks

    if not is_le_diagram(diagram):
        raise InvalidDiagramError("le_to_necklace requires a Le-diagram")
    shape = diagram.shape
    net = networks.build_network(diagram)
    flows = networks.flow_sets(net)
    sets = []
    for m in range(1, shape.n + 1):
        best = min(flows, key=lambda J: tuple(sorted((x - m) % shape.n for x in J)))
        sets.append(best)
    return GrassmannNecklace(shape.n, shape.k, tuple(sets))


# --- serialization -----------------------------------------------------------

def diagram_to_json(diagram: GoDiagram) -> dict:
    shape = diagram.shape
    fill = diagram.filling
    rows = []
    for i in shape.vertical_steps:
        rows.append([fill[(i, j)] for j in sorted((j for _, j in shape.row_boxes(i)), reverse=True)])
    return {
        "n": shape.n,
        "k": shape.k,
        "vertical_steps": list(shape.vertical_steps),
        "filling": rows,
    }


def diagram_from_json(data: Mapping) -> GoDiagram:
    try:
        shape = FerrersShape(int(data["n"]), int(data["k"]), tuple(data["vertical_steps"]))
        rows = data["filling"]
    except (KeyError, TypeError) as exc:
        raise InvalidDiagramError(f"malformed diagram document: {exc}") from exc
    filling: dict[Box, str] = {}
    if len(rows) != shape.k:
        raise InvalidDiagramError("filling must have one row per vertical step")
    for i, row in zip(shape.vertical_steps, rows):
        cols = sorted((j for _, j in shape.row_boxes(i)), reverse=True)
        if len(row) != len(cols):
            raise InvalidDiagramError(f"row of step {i} must have {len(cols)} entries")
        for j, f in zip(cols, row):
            filling[(i, j)] = f
    return go_diagram(shape, filling)


def render_ascii(diagram: GoDiagram) -> str:
    """Grid with '+', 'o', 'b'; rows top to bottom, left-justified."""
    shape = diagram.shape
    fill = diagram.filling
    width = shape.n - shape.k
    lines = []
    for i in shape.vertical_steps:
        cols = sorted((j for _, j in shape.row_boxes(i)), reverse=True)
        cells = [fill[(i, j)] for j in cols]
        cells += ["."] * (width - len(cells))
        lines.append(" ".join(cells) + f"   {i}")
    labels = " ".join(str(j) for j in sorted(shape.horizontal_steps, reverse=True))
    lines.append(labels)
    return "\n".join(lines)
