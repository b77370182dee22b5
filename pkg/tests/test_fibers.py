from __future__ import annotations

import itertools
import random
from fractions import Fraction

import pytest

from conftest import all_valid_diagrams

from deodhar.diagrams import (
    CellDescription,
    FerrersShape,
    InvalidDiagramError,
    PLUS,
    WHITE,
    all_plus_diagram,
    closure_description,
    deodhar_description,
    dimension,
    go_diagram,
    is_le_diagram,
    le_to_necklace,
    necklace_description,
)
from deodhar.fibers import (
    BoundaryPoset,
    ClassificationError,
    ProjectionRankDrop,
    base_of,
    classify_fiber_point,
    extended_shape,
    fiber_components,
    fiber_poset,
    nonneg_fiber_components,
    project_point,
    top_fiber_component,
)
from deodhar.networks import (
    matrix,
    matrix_from_pluckers,
    minors_of_matrix,
    plucker_vector,
    sample_point,
    seeded_weights,
    weighted_network,
    plucker_of_network,
)


def test_project_point_examples():
    m = matrix([[1, 0, 5], [0, 1, -2]])
    assert project_point(m) == matrix([[1, 0], [0, 1]])
    m = matrix([[1, 0, -1, 3], [0, 1, 0, 7]])
    assert project_point(m) == matrix([[1, 0, -1], [0, 1, 0]])
    with pytest.raises(ProjectionRankDrop):
        project_point(matrix([[1, 2, 1], [2, 4, 1]]))


def test_fiber_component_fixture(fiber_base):
    comps = fiber_components(fiber_base)
    assert len(comps) == 6
    columns = [c.new_column() for c in comps]
    assert set(columns) == {
        (PLUS, "b", PLUS), (PLUS, PLUS, WHITE), (WHITE, "b", PLUS),
        (PLUS, WHITE, WHITE), (WHITE, PLUS, WHITE), (WHITE, WHITE, WHITE),
    }
    for c in comps:
        assert base_of(c.extended) == fiber_base


def test_unique_top_component(fiber_base):
    comps = fiber_components(fiber_base)
    top_dim = dimension(fiber_base) + fiber_base.shape.k
    tops = [c for c in comps if dimension(c.extended) == top_dim]
    assert len(tops) == 1
    assert tops[0] == top_fiber_component(fiber_base)
    assert tops[0].new_column() == (PLUS, "b", PLUS)
    # equality of dimension happens exactly without white stones
    for c in comps:
        has_white = WHITE in c.new_column()
        assert (dimension(c.extended) == top_dim) == (not has_white)


def test_top_component_all_plus_base():
    base = all_plus_diagram(FerrersShape(5, 2, (1, 2)))
    comp = top_fiber_component(base)
    assert comp.new_column() == (PLUS, PLUS)


def test_fiber_poset_fixture(fiber_base):
    poset = fiber_poset(fiber_base)
    assert len(poset.nodes) == 6
    assert len(poset.covers) == 7
    assert poset.rank_profile() == (1, 2, 2, 1)


def test_fiber_poset_small_cases():
    base = all_plus_diagram(FerrersShape(4, 1, (1,)))
    poset = fiber_poset(base)
    assert len(poset.nodes) == 2 and len(poset.covers) == 1

    base = all_plus_diagram(FerrersShape(4, 2, (1, 2)))
    poset = fiber_poset(base)
    # covers pair with zero-set containment on the sampled points
    for a, b in poset.covers:
        za = deodhar_description(poset.nodes[a]).zero_set
        zb = deodhar_description(poset.nodes[b]).zero_set
        assert za <= zb
        assert dimension(poset.nodes[a]) == dimension(poset.nodes[b]) + 1


def test_cover_rule_produces_valid_diagrams():
    rng = random.Random(3)
    pool = list(all_valid_diagrams(2, 5))
    for base in rng.sample(pool, 12):
        poset = fiber_poset(base)
        for a, b in poset.covers:
            assert deodhar_description(poset.nodes[a]).zero_set <= \
                deodhar_description(poset.nodes[b]).zero_set


def test_classify_round_trip(fiber_base):
    for idx, comp in enumerate(fiber_components(fiber_base)):
        pv = sample_point(comp.extended, seed=40 + idx)
        assert classify_fiber_point(fiber_base, pv) == comp


def test_classify_zero_gauge_column(fiber_base):
    # a point whose appended column vanishes classifies into the component
    # with every unforced new-column box white
    n, k = fiber_base.shape.n, fiber_base.shape.k
    pv_base = sample_point(fiber_base, seed=77)
    coords = {}
    for J in itertools.combinations(range(1, n + 2), k):
        if n + 1 in J:
            coords[frozenset(J)] = Fraction(0)
        else:
            coords[frozenset(J)] = pv_base.value(J)
    pv = plucker_vector(n + 1, k, coords)
    comp = classify_fiber_point(fiber_base, pv)
    assert PLUS not in comp.new_column()


def test_classify_rejects_foreign_point(fiber_base):
    other = all_plus_diagram(fiber_base.shape)
    pv = sample_point(top_fiber_component(other).extended, seed=3)
    with pytest.raises(ClassificationError):
        classify_fiber_point(fiber_base, pv)


def test_column_restriction(fiber_base):
    # dropping the new network column projects the point onto the base one
    comp = top_fiber_component(fiber_base)
    weights = seeded_weights(comp.extended, seed=11)
    pv_ext = plucker_of_network(weighted_network(comp.extended, weights))
    base_weights = {b: w for b, w in weights.items() if b[1] != comp.extended.shape.n}
    pv_base = plucker_of_network(weighted_network(fiber_base, base_weights))
    for J in itertools.combinations(range(1, fiber_base.shape.n + 1), fiber_base.shape.k):
        assert pv_ext.value(J) == pv_base.value(J)


def test_projection_commutes_with_closure():
    d = all_plus_diagram(FerrersShape(5, 2, (1, 2)))
    cell = necklace_description(le_to_necklace(d), "cell")

    def lift(c: CellDescription) -> CellDescription:
        return CellDescription(c.n + 1, c.k, c.zero_set, c.nonzero_set,
                               c.positive_set, c.nonneg_set)

    assert lift(closure_description(cell)) == closure_description(lift(cell))


def test_nonneg_fiber_boolean_lattice():
    base = all_plus_diagram(FerrersShape(5, 2, (1, 2)))
    poset = nonneg_fiber_components(base)
    assert len(poset.nodes) == 4
    assert len(poset.covers) == 4
    assert poset.rank_profile() == (1, 2, 1)


def test_nonneg_fiber_forced_box():
    shape = FerrersShape(6, 2, (1, 2))
    fill = {
        (1, 6): PLUS, (1, 5): PLUS, (1, 4): WHITE, (1, 3): PLUS,
        (2, 6): WHITE, (2, 5): PLUS, (2, 4): PLUS, (2, 3): PLUS,
    }
    base = go_diagram(shape, fill)
    poset = nonneg_fiber_components(base)
    # row 2's white stone under a plus forces its new-column box white,
    # so the nonnegative fiber misses a full dimension
    assert len(poset.nodes) == 2
    top = max(poset.nodes, key=dimension)
    assert dimension(top) == dimension(base) + 1 < dimension(base) + base.shape.k


def test_nonneg_fiber_requires_le(go33):
    with pytest.raises(InvalidDiagramError):
        nonneg_fiber_components(go33)


def test_nonneg_fiber_random_le_diagrams():
    rng = random.Random(6)
    les = [d for d in all_valid_diagrams(2, 6) if is_le_diagram(d)]
    for base in rng.sample(les, 15):
        poset = nonneg_fiber_components(base)
        free = dimension(max(poset.nodes, key=dimension)) - dimension(base)
        assert len(poset.nodes) == 2 ** free
        assert len(poset.covers) == free * 2 ** (free - 1) if free else len(poset.covers) == 0


def test_extended_shape_rows():
    base = FerrersShape(5, 3, (1, 2, 3))
    ext = extended_shape(base)
    assert ext.n == 6
    assert all(ext.row_length(i) == base.row_length(i) + 1 for i in base.vertical_steps)


def test_nonneg_fibers_not_equidimensional():
    # over span((1,0,-1),(0,1,0)) the nonnegative fiber needs g2 = 0 and
    # g1 <= 0; over span((1,1,0),(0,0,1)) both gauge entries move freely
    def nonneg_gauge_set(rows):
        good = []
        grid = [Fraction(x, 2) for x in range(-4, 5)]
        for g1 in grid:
            for g2 in grid:
                m = matrix([list(rows[0]) + [g1], list(rows[1]) + [g2]])
                pv = minors_of_matrix(m)
                if all(v >= 0 for v in pv.coords.values()):
                    good.append((g1, g2))
        return good

    tight = nonneg_gauge_set(((1, 0, -1), (0, 1, 0)))
    assert all(g2 == 0 and g1 <= 0 for g1, g2 in tight)
    assert len(tight) > 1
    roomy = nonneg_gauge_set(((1, 1, 0), (0, 0, 1)))
    assert {g1 for g1, _ in roomy} != {0} and {g2 for _, g2 in roomy} != {0}
    assert any(g1 != 0 and g2 != 0 for g1, g2 in roomy)
