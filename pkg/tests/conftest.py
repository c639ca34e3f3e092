"""Shared oracles and strategies.

The oracles here deliberately re-derive results through independent
constructions (matrix point-ops with bounding-box realignment, plain
nested-loop scanners) so the package's anchored-candidate and raster
implementations are checked against something that cannot share their
bugs.
"""

from __future__ import annotations

import random

import pytest
from hypothesis import strategies as st

from gridgather.grid import Configuration, Node, Rect

# the eight point-group operations as plain coordinate maps
ORACLE_OPS = {
    "id": lambda x, y: (x, y),
    "rot90": lambda x, y: (-y, x),
    "rot180": lambda x, y: (-x, -y),
    "rot270": lambda x, y: (y, -x),
    "flip_x": lambda x, y: (x, -y),
    "flip_y": lambda x, y: (-x, y),
    "flip_diag": lambda x, y: (y, x),
    "flip_anti": lambda x, y: (-y, -x),
}


def brute_point_maps(points: dict[Node, int]) -> set[frozenset]:
    """All non-identity label-preserving self-maps of a labeled point set.

    Tries every point-group op, realigns by bounding box, and keeps the
    ops that permute the labeled set.  Result: set of point-maps encoded
    as frozensets of (src, dst) pairs, identity excluded.
    """
    pts = dict(points)
    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]
    bbox = (min(xs), min(ys), max(xs), max(ys))
    out: set[frozenset] = set()
    for name, op in ORACLE_OPS.items():
        if name == "id":
            continue
        moved = {op(x, y): l for (x, y), l in pts.items()}
        mx = [p[0] for p in moved]
        my = [p[1] for p in moved]
        dx = bbox[0] - min(mx)
        dy = bbox[1] - min(my)
        aligned = {(x + dx, y + dy): l for (x, y), l in moved.items()}
        if aligned == pts:
            mapping = frozenset(
                ((x, y), (op(x, y)[0] + dx, op(x, y)[1] + dy)) for (x, y) in pts
            )
            if all(src == dst for src, dst in mapping):
                continue  # acts as the identity on the set
            out.add(mapping)
    return out


def naive_scan(labels: dict[Node, int], rect: Rect, corner: Node, inner_axis: int) -> str:
    """Raster scan written the dumb way: explicit branches per corner side."""
    xs = list(range(rect.min_x, rect.max_x + 1))
    ys = list(range(rect.min_y, rect.max_y + 1))
    if corner[0] != rect.min_x:
        xs = xs[::-1]
    if corner[1] != rect.min_y:
        ys = ys[::-1]
    chars = []
    if inner_axis == 1:  # inner vertical
        for x in xs:
            for y in ys:
                chars.append(str(labels.get((x, y), 0)))
    else:
        for y in ys:
            for x in xs:
                chars.append(str(labels.get((x, y), 0)))
    return "".join(chars)


def small_config_strategy(max_coord: int = 6, max_robots: int = 5, max_meet: int = 4):
    nodes = st.tuples(
        st.integers(min_value=-max_coord, max_value=max_coord),
        st.integers(min_value=-max_coord, max_value=max_coord),
    )
    return st.builds(
        lambda rs, ms: Configuration(tuple(rs), frozenset(ms)),
        st.lists(nodes, min_size=1, max_size=max_robots, unique=True),
        st.lists(nodes, min_size=1, max_size=max_meet, unique=True).map(frozenset),
    )


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20240811)
