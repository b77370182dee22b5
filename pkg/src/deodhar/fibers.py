"""Fibers of the delete-a-column projection over Deodhar components.

The projection drops the last coordinate, sending full-rank k x (n+1)
matrices to k x n matrices.  Over a component indexed by a diagram on [n],
the fiber decomposes into components indexed by diagrams on [n+1] obtained
by prepending one leftmost column (new horizontal step n+1) to the shape.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .coxeter import identity, right_mul
from .diagrams import (
    BLACK,
    Box,
    FerrersShape,
    GoDiagram,
    InvalidDiagramError,
    PLUS,
    WHITE,
    box_transposition,
    dimension,
    deodhar_description,
    ensure_valid,
    go_diagram,
    i_b_formula,
    is_le_diagram,
)
from .networks import Matrix, PluckerVector, matrix_rank


class ProjectionRankDrop(ValueError):
    """Deleting the last column lands the point in the lower Grassmannian."""


class ClassificationError(ValueError):
    pass


def project_point(m: Matrix) -> Matrix:
    projected = tuple(row[:-1] for row in m)
    if matrix_rank(m) != len(m):
        raise InvalidDiagramError("matrix must have full row rank")
    if matrix_rank(projected) != len(m):
        raise ProjectionRankDrop("projection drops rank; point maps to Gr(k-1, n)")
    return projected


def extended_shape(base: FerrersShape) -> FerrersShape:
    return FerrersShape(base.n + 1, base.k, base.vertical_steps)


def base_of(extended: GoDiagram) -> GoDiagram:
    shape = extended.shape
    fill = {b: f for b, f in extended.cells if b[1] != shape.n}
    return go_diagram(FerrersShape(shape.n - 1, shape.k, shape.vertical_steps), fill)


@dataclass(frozen=True)
class FiberComponent:
    base: GoDiagram
    extended: GoDiagram

    def __post_init__(self) -> None:
        if base_of(self.extended) != self.base:
            raise InvalidDiagramError("extended diagram does not restrict to the base")
        ensure_valid(self.extended)

    def new_column(self) -> tuple[str, ...]:
        """Fillings of the added column, top row first."""
        n1 = self.extended.shape.n
        fill = self.extended.filling
        return tuple(fill[(i, n1)] for i in self.extended.shape.vertical_steps)


def _new_column_boxes(base: GoDiagram) -> list[Box]:
    """Boxes of the added column, bottom row first."""
    return [(i, base.shape.n + 1) for i in reversed(base.shape.vertical_steps)]


def _shortens(shape: FerrersShape, filling: dict[Box, str], box: Box) -> bool:
    """Whether the box's letter shortens the stone product of its southeast
    region (everything weakly right and below, in reading order)."""
    bi, bj = box
    u = identity(shape.n)
    for b in shape.boxes():
        if b == box:
            break
        i, j = b
        if i >= bi and j <= bj and filling.get(b) in (WHITE, BLACK):
            u = right_mul(u, box_transposition(shape, b))
    l = box_transposition(shape, box)
    return u[l - 1] > u[l]


def fiber_components(base: GoDiagram) -> tuple[FiberComponent, ...]:
    """All valid fillings of the new leftmost column, bottom to top.

    Forced black stones are taken; elsewhere the white-stone branch is
    explored before the plus branch.
    """
    ensure_valid(base)
    shape = extended_shape(base.shape)
    base_fill = {b: f for b, f in base.cells}
    column = _new_column_boxes(base)
    out: list[FiberComponent] = []

    def grow(idx: int, filling: dict[Box, str]) -> None:
        if idx == len(column):
            out.append(FiberComponent(base, go_diagram(shape, filling)))
            return
        b = column[idx]
        if _shortens(shape, filling, b):
            grow(idx + 1, {**filling, b: BLACK})
            return
        for f in (WHITE, PLUS):
            grow(idx + 1, {**filling, b: f})

    grow(0, dict(base_fill))
    return tuple(out)


def top_fiber_component(base: GoDiagram) -> FiberComponent:
    """The unique filling of the new column without white stones."""
    ensure_valid(base)
    shape = extended_shape(base.shape)
    filling = {b: f for b, f in base.cells}
    for b in _new_column_boxes(base):
        filling[b] = BLACK if _shortens(shape, filling, b) else PLUS
    return FiberComponent(base, go_diagram(shape, filling))


def classify_fiber_point(base: GoDiagram, pluckers: PluckerVector) -> FiberComponent:
    """Place a point of the fiber over the base component into its component.

    New-column boxes are scanned bottom to top: a length decrease forces a
    black stone; otherwise the box is white when the point's I_b coordinate
    vanishes and plus when it does not.
    """
    ensure_valid(base)
    n, k = base.shape.n, base.shape.k
    if (pluckers.n, pluckers.k) != (n + 1, k):
        raise ClassificationError("expected Plucker data over one more column")
    restriction = {
        frozenset(J): pluckers.value(J)
        for J in itertools.combinations(range(1, n + 1), k)
    }
    if not deodhar_description(base).check(restriction):
        raise ClassificationError("projected point does not lie in the base component")

    shape = extended_shape(base.shape)
    filling = {b: f for b, f in base.cells}
    for b in _new_column_boxes(base):
        if _shortens(shape, filling, b):
            filling[b] = BLACK
            continue
        # undecided boxes above b sit outside b's southeast quadrant, so any
        # placeholder fill leaves I_b unchanged
        partial_fill = {c: filling.get(c, WHITE) for c in shape.boxes()}
        partial_fill[b] = PLUS
        value = pluckers.value(i_b_formula(go_diagram(shape, partial_fill), b))
        filling[b] = WHITE if value == 0 else PLUS
    return FiberComponent(base, go_diagram(shape, filling))


@dataclass(frozen=True)
class BoundaryPoset:
    nodes: tuple[GoDiagram, ...]
    covers: tuple[tuple[int, int], ...]  # (upper, lower) indices into nodes

    def __post_init__(self) -> None:
        for a, b in self.covers:
            if a == b:
                raise InvalidDiagramError("covers must be irreflexive")
            if dimension(self.nodes[a]) != dimension(self.nodes[b]) + 1:
                raise InvalidDiagramError("covers must drop dimension by one")

    def rank_profile(self) -> tuple[int, ...]:
        dims = sorted({dimension(d) for d in self.nodes}, reverse=True)
        return tuple(sum(1 for d in self.nodes if dimension(d) == dim) for dim in dims)


def _cover_target(component: FiberComponent, box: Box) -> GoDiagram:
    """Turn one plus of the new column white, then walk up the column turning
    black stones back to pluses wherever the forced decrease disappears."""
    shape = component.extended.shape
    filling = component.extended.filling
    filling[box] = WHITE
    for b in _new_column_boxes(component.base):
        if b[0] < box[0] and filling[b] == BLACK and not _shortens(shape, filling, b):
            filling[b] = PLUS
    return go_diagram(shape, filling)


def fiber_poset(base: GoDiagram) -> BoundaryPoset:
    comps = fiber_components(base)
    nodes = tuple(c.extended for c in comps)
    index = {d: i for i, d in enumerate(nodes)}
    covers = []
    n1 = base.shape.n + 1
    for i, comp in enumerate(comps):
        for b in _new_column_boxes(base):
            if comp.extended.filling[b] == PLUS:
                covers.append((i, index[_cover_target(comp, b)]))
    return BoundaryPoset(nodes, tuple(sorted(covers)))


def nonneg_fiber_components(base: GoDiagram) -> BoundaryPoset:
    """Le-diagram sub-poset of the fiber: a Boolean lattice on the free boxes.

    A new-column box is forced white when its row holds a white stone with a
    plus above it; filling such a box with a plus would break the
    Le-property.
    """
    if not is_le_diagram(base):
        raise InvalidDiagramError("nonnegative fibers require a Le-diagram")
    fill = base.filling
    forced: set[Box] = set()
    for (i, j) in base.boxes_with(WHITE):
        if any(fill.get((i2, j)) == PLUS for i2 in range(1, i)):
            forced.add((i, base.shape.n + 1))
    column = _new_column_boxes(base)
    free = [b for b in column if b not in forced]
    shape = extended_shape(base.shape)

    nodes = []
    for bits in itertools.product((WHITE, PLUS), repeat=len(free)):
        filling = {b: f for b, f in base.cells}
        filling.update({b: WHITE for b in forced})
        filling.update(dict(zip(free, bits)))
        nodes.append(go_diagram(shape, filling))
    index = {d: i for i, d in enumerate(nodes)}
    covers = []
    for i, d in enumerate(nodes):
        for b in free:
            if d.filling[b] == PLUS:
                lower = go_diagram(shape, {**d.filling, b: WHITE})
                covers.append((i, index[lower]))
    poset = BoundaryPoset(tuple(nodes), tuple(sorted(covers)))
    for node in poset.nodes:
        if not is_le_diagram(node):
            raise AssertionError("nonnegative fiber component is not a Le-diagram")
    return poset


def poset_to_json(poset: BoundaryPoset) -> dict:
    from .diagrams import diagram_to_json

    return {
        "nodes": [diagram_to_json(d) for d in poset.nodes],
        "covers": [list(c) for c in poset.covers],
    }
