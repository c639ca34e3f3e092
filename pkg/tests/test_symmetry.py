from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import brute_point_maps
from gridgather.grid import Configuration, EmptyPointSet, Rect
from gridgather.symmetry import (
    IsoKind,
    Isometry,
    UniverseNotStable,
    candidate_isometries,
    find_automorphisms,
    is_partitive,
    is_ungatherable,
    orbits,
    transform_config,
    transform_node,
    POINT_OPS,
)

coords = st.integers(min_value=-6, max_value=6)
nodes = st.tuples(coords, coords)
labeled_sets = st.dictionaries(nodes, st.integers(min_value=1, max_value=5), min_size=1, max_size=7)


def test_two_meeting_nodes_symmetries():
    rep = find_automorphisms({(0, 0): 1, (2, 0): 1})
    kinds = {a.kind for a in rep.automorphisms}
    assert IsoKind.REFLECT_V in kinds and IsoKind.ROT180 in kinds
    v = next(a for a in rep.automorphisms if a.kind is IsoKind.REFLECT_V)
    assert v.ax2 == 2  # axis x = 1
    r = next(a for a in rep.automorphisms if a.kind is IsoKind.ROT180)
    assert (r.ax2, r.ay2) == (2, 0)
    assert not rep.is_asymmetric


def test_single_point_full_stabilizer():
    rep = find_automorphisms({(3, -2): 1})
    assert len(rep.automorphisms) == 7
    assert not rep.is_asymmetric
    for a in rep.automorphisms:
        assert a.apply((3, -2)) == (3, -2)


def test_collinear_asymmetric_line():
    # the along-line reflection acts as the identity on the set and is
    # dropped; nothing else preserves the labels
    rep = find_automorphisms({(0, 0): 4, (1, 0): 1, (3, 0): 1})
    assert rep.is_asymmetric
    assert rep.automorphisms == ()


@given(labeled_sets)
@settings(max_examples=150)
def test_find_automorphisms_matches_brute_oracle(pts):
    if len(pts) < 2:
        return
    rep = find_automorphisms(pts)
    ours = {
        frozenset((p, a.apply(p)) for p in pts)
        for a in rep.automorphisms
        if any(a.apply(p) != p for p in pts)
    }
    assert ours == brute_point_maps(pts)


@given(labeled_sets)
@settings(max_examples=80)
def test_group_closure_as_point_maps(pts):
    rep = find_automorphisms(pts)
    maps = [{p: a.apply(p) for p in pts} for a in rep.automorphisms]
    allowed = [{p: p for p in pts}] + maps
    for m1 in maps:
        for m2 in maps:
            comp = {p: m1[m2[p]] for p in pts}
            assert comp in allowed


@given(labeled_sets, st.sampled_from(sorted(POINT_OPS)), coords, coords)
@settings(max_examples=80)
def test_equivariance_under_global_isometries(pts, op, dx, dy):
    moved = {transform_node(p, op, dx, dy): l for p, l in pts.items()}
    if len(moved) != len(pts):
        return
    rep1 = find_automorphisms(pts)
    rep2 = find_automorphisms(moved)
    maps1 = {
        frozenset(
            (transform_node(p, op, dx, dy), transform_node(a.apply(p), op, dx, dy))
            for p in pts
        )
        for a in rep1.automorphisms
    }
    maps2 = {frozenset((p, a.apply(p)) for p in moved) for a in rep2.automorphisms}
    assert maps1 == maps2


def test_find_automorphisms_empty_raises():
    with pytest.raises(EmptyPointSet):
        find_automorphisms({})


def test_orbits_two_node_line_edge_axis():
    v = Isometry(IsoKind.REFLECT_V, ax2=1)
    part = orbits(Rect(0, 0, 1, 0), v)
    assert sorted(map(sorted, part.orbits)) == [[(0, 0), (1, 0)]]


def test_orbits_rot90_three_by_three():
    r = Isometry(IsoKind.ROT90, ax2=2, ay2=2)
    part = orbits(Rect(0, 0, 2, 2), r)
    sizes = sorted(len(o) for o in part.orbits)
    assert sizes == [1, 4, 4]
    fixed = [o for o in part.orbits if len(o) == 1]
    assert fixed == [((1, 1),)]
    for orbit in part.orbits:
        assert len(orbit) in (1, r.order)
        members = set(orbit)
        assert {r.apply(v) for v in members} == members


def test_orbits_identity_all_singletons():
    part = orbits(Rect(0, 0, 2, 1), Isometry(IsoKind.IDENTITY))
    assert all(len(o) == 1 for o in part.orbits)
    assert len(part.orbits) == 6


def test_orbits_unstable_universe():
    with pytest.raises(UniverseNotStable):
        orbits(Rect(0, 0, 2, 0), Isometry(IsoKind.REFLECT_V, ax2=0))


def test_is_partitive_examples():
    c = Configuration(((0, 0), (1, 0)), frozenset({(0, 1), (1, 1)}))
    edge_axis = Isometry(IsoKind.REFLECT_V, ax2=1)
    assert is_partitive(c, edge_axis, frozenset())

    c2 = Configuration(((0, 0), (2, 0)), frozenset({(0, 2), (2, 2)}))
    node_axis = Isometry(IsoKind.REFLECT_V, ax2=2)
    axis_nodes = frozenset({(1, 0), (1, 1), (1, 2)})
    assert is_partitive(c2, node_axis, axis_nodes)
    assert not is_partitive(c2, node_axis, frozenset())

    rot = Isometry(IsoKind.ROT180, ax2=2, ay2=2)
    assert not is_partitive(c2, rot, frozenset())


def test_is_ungatherable_examples():
    # edge-type vertical axis with nothing on it
    c = Configuration(((0, 0), (1, 0)), frozenset({(0, 1), (1, 1)}))
    assert is_ungatherable(c)
    # meeting node on the axis
    c2 = Configuration(((0, 0), (2, 0)), frozenset({(1, 0)}))
    assert not is_ungatherable(c2)
    # asymmetric configuration
    c3 = Configuration(((0, 0), (2, 1)), frozenset({(1, 0)}))
    assert not is_ungatherable(c3)


@given(st.sampled_from(sorted(POINT_OPS)), coords, coords)
def test_is_ungatherable_isometry_invariant(op, dx, dy):
    rng = random.Random(7)
    for _ in range(10):
        robots = [(rng.randrange(4), rng.randrange(4)) for _ in range(3)]
        if len(set(robots)) != 3:
            continue
        meeting = frozenset({(rng.randrange(4), rng.randrange(4))})
        c = Configuration(tuple(robots), meeting)
        assert is_ungatherable(c) == is_ungatherable(transform_config(c, op, dx, dy))


def test_candidate_sets_by_shape():
    assert len(candidate_isometries(Rect(0, 0, 0, 0))) == 7
    assert len(candidate_isometries(Rect(0, 0, 3, 0))) == 2
    assert len(candidate_isometries(Rect(0, 0, 0, 3))) == 2
    assert len(candidate_isometries(Rect(0, 0, 3, 2))) == 3
    assert len(candidate_isometries(Rect(0, 0, 3, 3))) == 7


def test_isometry_involution_property():
    rng = random.Random(3)
    for rect in (Rect(0, 0, 4, 4), Rect(-2, 1, 2, 5)):
        for iso in candidate_isometries(rect):
            for _ in range(20):
                v = (rng.randrange(-5, 6), rng.randrange(-5, 6))
                w = v
                for _ in range(iso.order):
                    w = iso.apply(w)
                assert w == v
