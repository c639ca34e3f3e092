from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gridgather.grid import (
    Configuration,
    EmptyPointSet,
    NodeLabel,
    Rect,
    distinct_robot_positions,
    is_final,
    manhattan,
    mer,
    mer_f,
    rect_of,
)

coords = st.integers(min_value=-50, max_value=50)
nodes = st.tuples(coords, coords)


def test_manhattan_examples():
    assert manhattan((0, 0), (0, 0)) == 0
    assert manhattan((0, 0), (3, 4)) == 7
    assert manhattan((-2, 5), (1, 5)) == 3


@given(nodes, nodes, nodes)
def test_manhattan_triangle_inequality(a, b, c):
    assert manhattan(a, c) <= manhattan(a, b) + manhattan(b, c)
    assert manhattan(a, b) == manhattan(b, a)
    assert (manhattan(a, b) == 0) == (a == b)


def test_label_cases():
    c = Configuration(((0, 0), (1, 1), (1, 1)), frozenset({(2, 2), (1, 1), (5, 5)}))
    assert c.label((9, 9)) == NodeLabel.EMPTY
    assert c.label((5, 5)) == NodeLabel.MEETING
    assert c.label((1, 1)) == NodeLabel.MULTI_ON_MEETING
    assert c.label((0, 0)) == NodeLabel.SINGLE_OFF_MEETING
    c2 = Configuration(((2, 2), (0, 0), (0, 0)), frozenset({(2, 2)}))
    assert c2.label((2, 2)) == NodeLabel.SINGLE_ON_MEETING
    assert c2.label((0, 0)) == NodeLabel.MULTI_OFF_MEETING


@given(
    st.lists(nodes, min_size=1, max_size=8),
    st.lists(nodes, min_size=1, max_size=4).map(frozenset),
    nodes,
)
def test_label_matches_direct_recomputation(robots, meeting, v):
    c = Configuration(tuple(robots), meeting)
    cnt = robots.count(v)
    meet = v in meeting
    expected = {
        (0, False): 0,
        (0, True): 1,
        (1, True): 2,
        (1, False): 4,
    }.get((min(cnt, 1) if cnt <= 1 else cnt, meet))
    if cnt >= 2:
        expected = 3 if meet else 5
    assert int(c.label(v)) == expected


def test_mer_examples():
    c = Configuration(((0, 0), (2, 3)), frozenset({(1, 1)}))
    assert mer(c) == Rect(0, 0, 2, 3)
    c2 = Configuration(((0, 0),), frozenset({(1, 1)}))
    assert mer_f(c2) == Rect(1, 1, 1, 1)
    assert mer_f(c2).p == 0 and mer_f(c2).q == 0
    c3 = Configuration(((5, 5),), frozenset({(0, 0), (0, 4)}))
    assert mer(c3) == Rect(0, 0, 5, 5)
    assert mer_f(c3) == Rect(0, 0, 0, 4)


def test_rect_of_empty_raises():
    with pytest.raises(EmptyPointSet):
        rect_of([])


@given(st.lists(nodes, min_size=1, max_size=8), nodes)
def test_mer_monotone_tightness(pts, extra):
    base = rect_of(pts)
    if base.contains(extra):
        assert rect_of(pts + [extra]) == base
    grown = rect_of(pts + [extra])
    assert grown.contains(extra)
    for p in pts:
        assert grown.contains(p)


def test_is_final_examples():
    m = (2, 2)
    c = Configuration((m,) * 5, frozenset({m, (0, 0)}))
    assert is_final(c)
    c2 = Configuration(((3, 3),) * 4, frozenset({m}))
    assert not is_final(c2)
    c3 = Configuration((m, (0, 0)), frozenset({m, (0, 0)}))
    assert not is_final(c3)


def test_distinct_robot_positions():
    assert distinct_robot_positions(Configuration(((0, 0), (0, 0), (1, 1)), frozenset({(9, 9)}))) == 2
    assert distinct_robot_positions(Configuration(((0, 0),), frozenset({(9, 9)}))) == 1
    assert distinct_robot_positions(
        Configuration(((0, 0), (1, 0), (2, 0), (3, 0)), frozenset({(9, 9)}))
    ) == 4


def test_rect_node_iteration_counts():
    r = Rect(0, 0, 2, 1)
    assert r.node_count() == 6
    assert len(list(r.nodes())) == 6
    assert r.p == 2 and r.q == 1
