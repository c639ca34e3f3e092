from __future__ import annotations

import itertools
import random

import pytest

from conftest import naive_scan
from gridgather.grid import Configuration, Rect, lambda_labels, mer, mer_f
from gridgather.strings import (
    AXIS_X,
    AXIS_Y,
    LabelKind,
    NoUniqueKeyCorner,
    OrderingUndefined,
    corner_strings,
    key_corner,
    leading_corners,
    max_scans,
    ordering_O,
    ordering_O_double_prime,
    ordering_O_prime,
    repr_candidates,
    scan,
    string_repr,
)
from gridgather.symmetry import transform_config, POINT_OPS

# Anchors transcribed from the published example: inverting the quoted
# 45-symbol string over a 9x5-node rectangle reproduces a tight layout
# whose meeting nodes admit a vertical mirror, exactly as captioned.
FIG1_STRING = "001001400004000000000000404000400401000000100"


def fig1_configuration() -> Configuration:
    robots, meeting = [], []
    for k, ch in enumerate(FIG1_STRING):
        node = (k // 5, k % 5)
        if ch == "1":
            meeting.append(node)
        elif ch == "4":
            robots.append(node)
        else:
            assert ch == "0"
    return Configuration(tuple(robots), frozenset(meeting))


def test_example_corner_scans():
    c = Configuration(((0, 0), (2, 1)), frozenset({(1, 0)}))
    labels = c.labeled_points()
    rect = mer(c)
    s = scan(labels, rect, (0, 0), AXIS_Y)
    assert s.symbols == "401004"
    s2 = scan(labels, rect, (2, 1), AXIS_Y)
    assert s2.symbols == "400104"
    # oracle agreement on the same scans
    assert naive_scan(labels, rect, (0, 0), AXIS_Y) == "401004"
    assert naive_scan(labels, rect, (2, 1), AXIS_Y) == "400104"


def test_corner_strings_returns_eight():
    c = Configuration(((0, 0), (2, 1)), frozenset({(1, 0)}))
    eight = corner_strings(c, mer(c), LabelKind.SENARY)
    assert len(eight) == 8
    assert {s.symbols for s in eight} >= {"401004", "400104"}
    binary = corner_strings(c, mer(c), LabelKind.BINARY)
    assert all(set(s.symbols) <= {"0", "1"} for s in binary)


def test_empty_rect_scans_all_zero():
    c = Configuration(((0, 0),), frozenset({(0, 0)}))
    s = scan({}, Rect(0, 0, 2, 1), (0, 0), AXIS_X)
    assert s.symbols == "000000"


def test_string_repr_shorter_side_rule():
    c = Configuration(((0, 0), (2, 1)), frozenset({(1, 0)}))
    rect = mer(c)  # 2x1 edges: vertical side shorter
    rep = string_repr(c.labeled_points(), rect, (0, 0))
    assert rep.inner_step in ((0, 1), (0, -1))
    assert rep.symbols == "401004"


def test_string_repr_square_takes_lex_max():
    labels = {(0, 0): 1, (1, 0): 1}
    rect = Rect(0, 0, 1, 1)
    rep = string_repr(labels, rect, (0, 0))
    sy = scan(labels, rect, (0, 0), AXIS_Y).symbols
    sx = scan(labels, rect, (0, 0), AXIS_X).symbols
    assert rep.symbols == max(sy, sx)
    # diagonal-symmetric content at a corner: both scans equal
    diag = {(0, 0): 1, (1, 1): 1}
    r1 = scan(diag, rect, (0, 0), AXIS_Y).symbols
    r2 = scan(diag, rect, (0, 0), AXIS_X).symbols
    assert r1 == r2 == string_repr(diag, rect, (0, 0)).symbols


def test_key_corner_example():
    c = Configuration(((0, 0), (2, 1)), frozenset({(1, 0)}))
    corner, s = key_corner(c)
    assert corner == (0, 0)
    assert s.symbols == "401004"


def test_key_corner_figure_one():
    c = fig1_configuration()
    assert mer(c) == Rect(0, 0, 8, 4)  # the quoted string is bbox-tight
    corner, s = key_corner(c)
    assert corner == (0, 0)
    assert s.symbols == FIG1_STRING
    # the caption's meeting-node mirror
    from gridgather.symmetry import find_automorphisms

    rep = find_automorphisms(lambda_labels(c))
    assert any(a.is_reflection for a in rep.automorphisms)


def test_key_corner_tie_on_symmetric_config():
    c = Configuration(((0, 0), (4, 2)), frozenset({(1, 1), (3, 1)}))
    # 180-degree symmetric: two corners tie
    with pytest.raises(NoUniqueKeyCorner) as ei:
        key_corner(c)
    assert len(ei.value.corners) == 2


def test_leading_corners_examples():
    # mirror-tied pair of meeting nodes: two leading corners
    c = Configuration(((5, 5),), frozenset({(0, 0), (2, 0)}))
    leads = leading_corners(c)
    assert len(leads) == 2
    # singleton meeting set: degenerate rectangle, one leading corner
    c2 = Configuration(((5, 5),), frozenset({(3, 3)}))
    leads2 = leading_corners(c2)
    assert len(leads2) == 1
    assert leads2[0][0] == (3, 3)


def test_key_corner_equivariance():
    rng = random.Random(5)
    for _ in range(60):
        robots = {(rng.randrange(5), rng.randrange(5)) for _ in range(3)}
        meeting = {(rng.randrange(5), rng.randrange(5)) for _ in range(2)}
        c = Configuration(tuple(robots), frozenset(meeting))
        try:
            corner, s = key_corner(c)
        except NoUniqueKeyCorner:
            continue
        op = rng.choice(sorted(POINT_OPS))
        dx, dy = rng.randrange(-9, 9), rng.randrange(-9, 9)
        g = transform_config(c, op, dx, dy)
        corner_g, s_g = key_corner(g)
        from gridgather.symmetry import transform_node

        assert corner_g == transform_node(corner, op, dx, dy)
        assert s_g.symbols == s.symbols


def test_exhaustive_scan_oracle_small():
    # subset of the acceptance sweep: every 2-robot configuration with one
    # meeting node in a 3x3-node universe
    nodes = [(x, y) for x in range(3) for y in range(3)]
    for robots in itertools.combinations(nodes, 2):
        for m in nodes:
            c = Configuration(robots, frozenset({m}))
            labels = c.labeled_points()
            rect = mer(c)
            for corner in dict.fromkeys(rect.corners()):
                for axis in (AXIS_X, AXIS_Y):
                    assert (
                        scan(labels, rect, corner, axis).symbols
                        == naive_scan(labels, rect, corner, axis)
                    )


def test_ordering_O_examples():
    # meeting nodes asymmetric: O = order of first appearance in the scan
    c = Configuration(((9, 9),), frozenset({(0, 0), (1, 0), (3, 0)}))
    o = ordering_O(c)
    assert o.ordered == ((0, 0), (1, 0), (3, 0))
    assert o.highest() == (3, 0)
    # singleton meeting set
    c2 = Configuration(((9, 9),), frozenset({(4, 4)}))
    assert ordering_O(c2).ordered == ((4, 4),)


def test_ordering_O_undefined_for_symmetric_meetings():
    c = Configuration(((9, 9),), frozenset({(0, 0), (2, 0)}))
    with pytest.raises(OrderingUndefined):
        ordering_O(c)


def test_ordering_O_robot_move_invariance():
    meeting = frozenset({(0, 0), (1, 2), (3, 1), (4, 4)})
    rng = random.Random(11)
    base = None
    for _ in range(30):
        robots = tuple((rng.randrange(6), rng.randrange(6)) for _ in range(4))
        c = Configuration(robots, meeting)
        o = ordering_O(c).ordered
        if base is None:
            base = o
        assert o == base


def test_ordering_O_prime_example():
    from gridgather.classify import classify, ConfigClass

    # unique vertical mirror x=2 with two on-axis meeting nodes
    c = Configuration(((0, 0), (4, 3)), frozenset({(1, 0), (3, 0), (2, 1), (2, 3)}))
    cls = classify(c)
    assert cls.value is ConfigClass.I12
    o = ordering_O_prime(c, cls.witness.axis)
    assert set(o.ordered) == {(2, 1), (2, 3)}
    # invariant under robot movement
    c2 = Configuration(((1, 1), (4, 0)), c.meeting_nodes)
    assert ordering_O_prime(c2, cls.witness.axis).ordered == o.ordered


def test_ordering_O_prime_undefined_without_on_axis_node():
    c = Configuration(((0, 0),), frozenset({(0, 1), (2, 1)}))
    from gridgather.symmetry import Isometry, IsoKind

    axis = Isometry(IsoKind.REFLECT_V, ax2=2)
    with pytest.raises(OrderingUndefined):
        ordering_O_prime(c, axis)


def test_ordering_O_double_prime_guard_anchor():
    meeting = frozenset({(1, 1), (3, 1), (1, 3), (3, 3)})
    robots = ((0, 0), (2, 2), (4, 4))
    c = Configuration(robots, meeting)
    guard = (0, 0)
    o = ordering_O_double_prime(c, guard)
    assert set(o.ordered) == set(meeting)
    assert len(o.ordered) == 4
    # invariant while the guard stays: move a non-guard robot
    c2 = Configuration(((0, 0), (2, 1), (4, 4)), meeting)
    assert ordering_O_double_prime(c2, guard).ordered == o.ordered


def test_ordering_O_double_prime_needs_mer_corner():
    c = Configuration(((0, 0), (2, 2)), frozenset({(1, 1)}))
    with pytest.raises(OrderingUndefined):
        ordering_O_double_prime(c, (1, 0))
