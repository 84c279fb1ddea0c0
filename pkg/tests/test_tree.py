import dataclasses

import numpy as np
import pytest

from simparadox import (
    DegenerateSeedError,
    Direction,
    DomainError,
    ParadoxTree,
    Quadruple,
    build,
    node_conditionals,
    verify_alternation,
)
from simparadox.tree import conservation_defect

# Leaf success conditionals of the depth-3 reference tree, to 4 d.p.
REFERENCE_LEAF_CONDITIONALS = {
    (1, 1, 1): (0.0151, 0.0298),
    (1, 1, 0): (0.5308, 0.7253),
    (1, 0, 1): (0.2086, 0.3617),
    (1, 0, 0): (0.8805, 0.9367),
    (0, 1, 1): (0.0832, 0.1547),
    (0, 1, 0): (0.6894, 0.8231),
    (0, 0, 1): (0.2884, 0.4923),
    (0, 0, 0): (0.9924, 0.9962),
}


def test_reference_tree_leaf_conditionals(reference_tree):
    for leaf in reference_tree.leaves():
        p1, p0 = node_conditionals(leaf)
        expected_p1, expected_p0 = REFERENCE_LEAF_CONDITIONALS[leaf.index]
        assert p1 == pytest.approx(expected_p1, abs=5e-5)
        assert p0 == pytest.approx(expected_p0, abs=5e-5)


def test_reference_tree_node_conditionals(reference_tree):
    assert node_conditionals(reference_tree.root) == pytest.approx((0.8, 0.6), abs=1e-12)
    p1, p0 = node_conditionals(reference_tree.nodes[(1,)])
    assert p1 == pytest.approx(0.2005, abs=5e-5)
    assert p0 == pytest.approx(0.3486, abs=5e-5)
    p1, p0 = node_conditionals(reference_tree.nodes[(1, 1)])
    assert p1 == pytest.approx(0.1099, abs=5e-5)
    assert p0 == pytest.approx(0.0579, abs=5e-5)


def test_depth_zero_tree(reference_seed):
    tree = build(reference_seed, 0)
    assert len(tree.nodes) == 1
    assert tree.root_direction is Direction.GREATER
    assert tree.internal_count == 0
    assert verify_alternation(tree).verdict is True


def test_less_rooted_tree_alternates():
    tree = build(Quadruple(0.6, 0.4, 0.8, 0.2), 2)
    assert tree.root_direction is Direction.LESS
    report = verify_alternation(tree)
    assert report.verdict is True
    assert report.directions() == (Direction.LESS, Direction.GREATER, Direction.LESS)


def test_reference_tree_report(reference_tree):
    report = verify_alternation(reference_tree)
    assert report.verdict is True
    assert report.directions() == (
        Direction.GREATER,
        Direction.LESS,
        Direction.GREATER,
        Direction.LESS,
    )
    assert all(record.min_margin > 0.0 for record in report.depths)


def test_node_counts(reference_tree):
    assert len(reference_tree.nodes) == 15
    assert reference_tree.internal_count == 7


def test_conservation(reference_tree):
    assert conservation_defect(reference_tree) <= 1e-12


def test_directions_alternate_along_paths(reference_tree):
    for index, node in reference_tree.nodes.items():
        expected = reference_tree.root_direction
        for _ in index:
            expected = expected.flipped()
        assert node.direction is expected


def test_perturbed_leaf_fails_verification(reference_tree):
    # Force one leaf to equal proportions; the verifier must flag the depth.
    nodes = dict(reference_tree.nodes)
    victim = nodes[(1, 1, 1)]
    nodes[(1, 1, 1)] = dataclasses.replace(victim, quad=Quadruple(0.1, 0.1, 0.2, 0.2))
    perturbed = ParadoxTree(n=3, root_direction=reference_tree.root_direction, nodes=nodes)
    report = verify_alternation(perturbed)
    assert report.verdict is False
    assert report.depths[3].direction is None
    assert report.depths[3].min_margin == 0.0
    assert report.depths[3].worst_cell == (1, 1, 1)
    assert all(report.depths[m].direction is not None for m in range(3))


def test_locality_of_deeper_builds(reference_seed):
    shallow = build(reference_seed, 2)
    deep = build(reference_seed, 4)
    for index, node in shallow.nodes.items():
        assert deep.nodes[index].quad == node.quad


def test_build_is_deterministic(reference_seed):
    first = build(reference_seed, 4)
    second = build(reference_seed, 4)
    assert first.nodes.keys() == second.nodes.keys()
    for index in first.nodes:
        assert first.nodes[index].quad == second.nodes[index].quad
        assert first.nodes[index].direction is second.nodes[index].direction


def test_roundtrip_fuzz(quad_sampler):
    rng = np.random.default_rng(8128)
    for i in range(100):
        n = i % 11
        tree = build(quad_sampler(rng), n)
        report = verify_alternation(tree)
        assert report.verdict is True
        assert len(tree.nodes) == 2 ** (n + 1) - 1
        assert tree.internal_count == 2**n - 1
        assert conservation_defect(tree) <= 1e-12


def test_build_rejects_bad_depth(reference_seed):
    with pytest.raises(DomainError):
        build(reference_seed, -1)
    with pytest.raises(DomainError):
        build(reference_seed, 25)
    with pytest.raises(DomainError):
        build(reference_seed, 5, depth_cap=4)


def test_build_rejects_axis_hugging_seed():
    with pytest.raises(DegenerateSeedError, match="axis"):
        build(Quadruple(1e-7, 0.9999999, 0.6, 0.4), 1)


def test_build_degenerate_failure_names_cell():
    # Passes the seed angle margin but collapses below the positivity
    # floor several levels down.
    seed = Quadruple(1.2e-6, 1.0 - 1.2e-6, 0.9, 0.1)
    with pytest.raises(DegenerateSeedError) as excinfo:
        build(seed, 12)
    assert excinfo.value.cell is not None
    assert 1 <= len(excinfo.value.cell) <= 12
    assert "cell" in str(excinfo.value)


def test_tree_structural_validation(reference_tree):
    nodes = dict(reference_tree.nodes)
    del nodes[(1, 1, 1)]
    with pytest.raises(DomainError, match="15 nodes"):
        ParadoxTree(n=3, root_direction=Direction.GREATER, nodes=nodes)
