from __future__ import annotations

import itertools
import random
from fractions import Fraction

import pytest

from conftest import COMPUTED_CORRECTIONS, GO33_WEIGHTS, PUBLISHED_TABLE, all_valid_diagrams

from deodhar.diagrams import (
    FerrersShape,
    PLUS,
    WHITE,
    all_plus_diagram,
    deodhar_description,
    go_diagram,
    is_le_diagram,
)
from deodhar.networks import (
    RankError,
    WeightConstraintError,
    build_network,
    enumerate_flows,
    flow_sets,
    flow_sign,
    has_flow,
    matrix,
    matrix_from_pluckers,
    matrix_rank,
    minors_of_matrix,
    plucker_of_network,
    sample_point,
    weighted_network,
)


def test_network_shape(go33):
    net = build_network(go33)
    assert len(net.edges) == 14
    # the two drawn-curved edges hop over the black-stone vertices
    pairs = {(e.src, e.dst) for e in net.edges}
    assert (("box", 1, 4), ("box", 1, 6)) in pairs
    assert (("box", 1, 6), ("box", 3, 6)) in pairs
    # every internal vertex has one incoming horizontal and one outgoing vertical
    internal = {("box", i, j) for (i, j), f in go33.cells if f in ("+", "b")}
    for v in internal:
        assert sum(1 for e in net.edges if e.dst == v and e.axis == "h") == 1
        assert sum(1 for e in net.edges if e.src == v and e.axis == "v") == 1


def test_network_degenerate_cases():
    empty = all_plus_diagram(FerrersShape(4, 2, (3, 4)))
    assert build_network(empty).edges == ()
    grid = all_plus_diagram(FerrersShape(4, 2, (1, 2)))
    net = build_network(grid)
    assert len(net.edges) == 8
    assert all(e.hi - e.lo <= 3 for e in net.edges)


def test_flow_counts(go33):
    net = build_network(go33)
    assert len(enumerate_flows(net, {1, 2, 3})) == 1
    assert enumerate_flows(net, {1, 2, 3})[0] == tuple(
        p for p in enumerate_flows(net, {1, 2, 3})[0]
    )
    fams_345 = enumerate_flows(net, {3, 4, 5})
    assert len(fams_345) == 1
    assert flow_sign(fams_345[0]) == -1
    # the published prose counts two routes from 1 to 6 and misses the one
    # through the bottom row; there are three
    assert len(enumerate_flows(net, {2, 3, 6})) == 3
    assert has_flow(net, {4, 5, 6})
    assert not has_flow(net, {1, 2, 5})
    assert not has_flow(net, {1, 3, 4})


def test_single_path_sign(go33):
    net = build_network(go33)
    for fam in enumerate_flows(net, {1, 2, 4}):
        assert flow_sign(fam) == 1


def test_plucker_table(go33):
    pv = plucker_of_network(weighted_network(go33, GO33_WEIGHTS))
    for subset, value in PUBLISHED_TABLE.items():
        expected = COMPUTED_CORRECTIONS.get(subset, value)
        assert pv.value(subset) == expected
    assert pv.value({1, 2, 3}) == 1


def test_published_table_is_plucker_inconsistent():
    """No Grassmannian point matches the published triple (236, 356, 456).

    The nine gauge coordinates force the matrix below up to its (1, 6) entry
    t; the published values then demand t = 2, t = 2 and t = 4 at once.
    """
    for t, triple in ((2, (2, -2, 0)), (4, (4, -4, -2))):
        m = matrix([[1, 0, 0, 1, 1, t], [0, 1, 0, 0, 1, 0], [0, 0, 1, 1, 0, 2]])
        pv = minors_of_matrix(m)
        assert (pv.value({2, 3, 6}), pv.value({3, 5, 6}), pv.value({4, 5, 6})) == triple
    published = tuple(PUBLISHED_TABLE[s] for s in ((2, 3, 6), (3, 5, 6), (4, 5, 6)))
    assert published not in {(2, -2, 0), (4, -4, -2)}


def test_plucker_vector_round_trip(go33):
    pv = plucker_of_network(weighted_network(go33, GO33_WEIGHTS))
    assert minors_of_matrix(matrix_from_pluckers(pv)).projectively_equal(pv)


def test_empty_diagram_point():
    empty = all_plus_diagram(FerrersShape(4, 2, (3, 4)))
    pv = plucker_of_network(weighted_network(empty, {}))
    assert pv.value({3, 4}) == 1
    assert all(v == 0 for s, v in pv.coords.items() if s != frozenset({3, 4}))


def test_unit_weights_match_a_matrix():
    grid = all_plus_diagram(FerrersShape(4, 2, (1, 2)))
    pv = plucker_of_network(weighted_network(grid, {b: 1 for b in grid.shape.boxes()}))
    m = matrix_from_pluckers(pv)
    assert minors_of_pluckers_ok(m, pv)


def minors_of_pluckers_ok(m, pv):
    return minors_of_matrix(m).projectively_equal(pv)


def test_weight_constraints(go33):
    bad = dict(GO33_WEIGHTS)
    bad[(1, 4)] = 0
    with pytest.raises(WeightConstraintError):
        weighted_network(go33, bad)
    with pytest.raises(WeightConstraintError):
        weighted_network(go33, {(1, 4): 1})
    with pytest.raises(WeightConstraintError):
        sample_point(go33)


def test_seeded_sample_matches_description(go33):
    desc = deodhar_description(go33)
    for seed in (0, 1, 2):
        pv = sample_point(go33, seed=seed)
        assert pv.vanishing_set() == desc.zero_set
        assert all(pv.value(s) != 0 for s in desc.nonzero_set)


def test_seeded_sample_deterministic(go33):
    assert sample_point(go33, seed=9) == sample_point(go33, seed=9)


def test_le_positive_weights_nonnegative():
    rng = random.Random(4)
    les = [d for d in all_valid_diagrams(2, 5) if is_le_diagram(d)]
    for d in rng.sample(les, 20):
        pv = sample_point(d, seed=1)
        assert all(v >= 0 for v in pv.coords.values())
        desc = deodhar_description(d)
        assert all(pv.value(s) > 0 for s in desc.nonzero_set)


def test_le_oracle_equivalence():
    # network evaluation agrees with the exact minors of a realized matrix
    rng = random.Random(8)
    les = [d for d in all_valid_diagrams(2, 5) if is_le_diagram(d)]
    for d in rng.sample(les, 15):
        pv = sample_point(d, seed=6)
        assert minors_of_matrix(matrix_from_pluckers(pv)).projectively_equal(pv)


def test_no_flow_means_uniform_zero():
    rng = random.Random(9)
    pool = list(all_valid_diagrams(2, 5))
    for d in rng.sample(pool, 20):
        net = build_network(d)
        missing = [
            J for J in itertools.combinations(range(1, 6), 2) if not has_flow(net, J)
        ]
        for seed in (0, 5):
            pv = sample_point(d, seed=seed)
            for J in missing:
                assert pv.value(J) == 0


def test_flow_sets_match_sample_support():
    rng = random.Random(10)
    pool = list(all_valid_diagrams(2, 5))
    for d in rng.sample(pool, 15):
        flows = flow_sets(build_network(d))
        pv = sample_point(d, seed=2)
        assert {s for s, v in pv.coords.items() if v != 0} == flows


def test_minors_examples():
    m = matrix([[1, 0, 0], [0, 1, 0]])
    pv = minors_of_matrix(m)
    assert pv.value({1, 2}) == 1 and pv.value({1, 3}) == 0 and pv.value({2, 3}) == 0
    m = matrix([[1, 0, -1], [0, 1, 0]])
    pv = minors_of_matrix(m)
    assert pv.value({1, 2}) == 1
    assert pv.value({1, 3}) == 0
    assert pv.value({2, 3}) == 1
    with pytest.raises(RankError):
        minors_of_matrix(matrix([[1, 2], [2, 4]]))


def test_matrix_rank():
    assert matrix_rank(matrix([[1, 2], [2, 4]])) == 1
    assert matrix_rank(matrix([[1, 0], [0, 1]])) == 2


def test_projective_equality():
    a = minors_of_matrix(matrix([[1, 0, -1], [0, 1, 0]]))
    b = minors_of_matrix(matrix([[Fraction(3), 0, -3], [0, Fraction(3), 0]]))
    assert a.projectively_equal(b)
    c = minors_of_matrix(matrix([[1, 0, 1], [0, 1, 0]]))
    assert not a.projectively_equal(c)


def test_flow_enumeration_deterministic(go33):
    net = build_network(go33)
    for J in itertools.combinations(range(1, 7), 3):
        assert enumerate_flows(net, J) == enumerate_flows(net, J)


def test_network_json_dump(go33):
    from deodhar.networks import network_to_json
    from fractions import Fraction as F

    net = build_network(go33)
    doc = network_to_json(net, {b: F(w) for b, w in GO33_WEIGHTS.items()})
    assert len(doc["edges"]) == 14
    weighted = [e for e in doc["edges"] if "weight" in e]
    assert len(weighted) == 7
    assert {"box:1:4", "src:1", "snk:6"} <= set(doc["vertices"])


def test_white_stone_sets_have_no_flow():
    from conftest import all_valid_diagrams
    from deodhar.diagrams import WHITE, i_b_formula

    rng = random.Random(12)
    pool = [d for d in all_valid_diagrams(3, 6) if d.boxes_with(WHITE)]
    for d in rng.sample(pool, 30):
        net = build_network(d)
        for b in d.boxes_with(WHITE):
            assert not has_flow(net, i_b_formula(d, b))
