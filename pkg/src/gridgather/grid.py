"""Core grid geometry: nodes, labels, configurations, enclosing rectangles.

Conventions
-----------
- A node is a plain ``(x, y)`` tuple of ints.  All core math is exact
  integer arithmetic; no floats appear anywhere in the package.
- ``Configuration`` couples a multiset of robot positions with the fixed
  set of meeting nodes.  Robot positions are normalized to a sorted tuple
  so configurations hash and compare by value.
- Rectangle sides ``p``/``q`` are measured in grid EDGES: a single node is
  a 0x0 rectangle and a line has one zero side.  Node counts are always
  ``(p + 1) * (q + 1)``.
- The infinite grid stays implicit; only occupied or marked nodes are
  stored, and every algorithm touches only nodes near the occupied area.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from enum import IntEnum
from typing import Iterable, Iterator, Mapping

Node = tuple[int, int]


class EmptyPointSet(ValueError):
    """A bounding rectangle of an empty point set was requested."""


class NodeLabel(IntEnum):
    EMPTY = 0
    MEETING = 1
    SINGLE_ON_MEETING = 2
    MULTI_ON_MEETING = 3
    SINGLE_OFF_MEETING = 4
    MULTI_OFF_MEETING = 5


def manhattan(a: Node, b: Node) -> int:
    return abs(a[0] - b[0]) + abs(a[1] - b[1])


@dataclass(frozen=True, order=True)
class Rect:
    min_x: int
    min_y: int
    max_x: int
    max_y: int

    def __post_init__(self) -> None:
        if self.min_x > self.max_x or self.min_y > self.max_y:
            raise ValueError(f"inverted rectangle {self}")

    @property
    def p(self) -> int:
        """Horizontal side length, in edges."""
        return self.max_x - self.min_x

    @property
    def q(self) -> int:
        """Vertical side length, in edges."""
        return self.max_y - self.min_y

    @property
    def is_square(self) -> bool:
        return self.p == self.q

    def corners(self) -> tuple[Node, Node, Node, Node]:
        """The four corner slots; degenerate rectangles repeat positions."""
        return (
            (self.min_x, self.min_y),
            (self.max_x, self.min_y),
            (self.max_x, self.max_y),
            (self.min_x, self.max_y),
        )

    def distinct_corners(self) -> tuple[Node, ...]:
        return tuple(dict.fromkeys(self.corners()))

    def contains(self, node: Node) -> bool:
        return self.min_x <= node[0] <= self.max_x and self.min_y <= node[1] <= self.max_y

    def strictly_contains(self, node: Node) -> bool:
        return self.min_x < node[0] < self.max_x and self.min_y < node[1] < self.max_y

    def nodes(self) -> Iterator[Node]:
        for x in range(self.min_x, self.max_x + 1):
            for y in range(self.min_y, self.max_y + 1):
                yield (x, y)

    def node_count(self) -> int:
        return (self.p + 1) * (self.q + 1)

    def center2(self) -> tuple[int, int]:
        """Center in doubled coordinates (exact even for edge/face centers)."""
        return (self.min_x + self.max_x, self.min_y + self.max_y)


def rect_of(points: Iterable[Node]) -> Rect:
    pts = list(points)
    if not pts:
        raise EmptyPointSet("cannot enclose an empty point set")
    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]
    return Rect(min(xs), min(ys), max(xs), max(ys))


@dataclass(frozen=True)
class Configuration:
    """Multiset of robot positions plus the fixed meeting-node set."""

    robots: tuple[Node, ...]
    meeting_nodes: frozenset[Node]

    def __post_init__(self) -> None:
        object.__setattr__(self, "robots", tuple(sorted(tuple(r) for r in self.robots)))
        object.__setattr__(
            self, "meeting_nodes", frozenset(tuple(m) for m in self.meeting_nodes)
        )
        if not self.robots:
            raise ValueError("configuration needs at least one robot")
        if not self.meeting_nodes:
            raise ValueError("configuration needs at least one meeting node")

    def robot_counts(self) -> Counter[Node]:
        return Counter(self.robots)

    def occupied(self) -> frozenset[Node]:
        return frozenset(self.robots)

    def has_multiplicity(self) -> bool:
        return len(self.robots) != len(set(self.robots))

    def is_initial(self) -> bool:
        """Initial configurations have all robots on distinct nodes."""
        return not self.has_multiplicity()

    def label(self, v: Node) -> NodeLabel:
        cnt = self.robots.count(v)
        meet = v in self.meeting_nodes
        if cnt == 0:
            return NodeLabel.MEETING if meet else NodeLabel.EMPTY
        if cnt == 1:
            return NodeLabel.SINGLE_ON_MEETING if meet else NodeLabel.SINGLE_OFF_MEETING
        return NodeLabel.MULTI_ON_MEETING if meet else NodeLabel.MULTI_OFF_MEETING

    def labeled_points(self) -> dict[Node, int]:
        """Every node with a nonzero label, mapped to its label value."""
        out: dict[Node, int] = {}
        counts = self.robot_counts()
        for m in self.meeting_nodes:
            out[m] = 1
        for v, cnt in counts.items():
            meet = v in self.meeting_nodes
            if cnt == 1:
                out[v] = 2 if meet else 4
            else:
                out[v] = 3 if meet else 5
        return out

    def with_robots(self, robots: Iterable[Node]) -> "Configuration":
        return Configuration(tuple(robots), self.meeting_nodes)


def occupancy_labels(c: Configuration) -> dict[Node, int]:
    """Labels with multiplicity collapsed to plain occupancy (2/4 only).

    Robots cannot observe multiplicity away from their own node, so every
    string and view computation inside the robot decision function uses
    these labels; that makes all observers of one configuration agree.
    """
    out: dict[Node, int] = {m: 1 for m in c.meeting_nodes}
    for v in set(c.robots):
        out[v] = 2 if v in c.meeting_nodes else 4
    return out


def lambda_labels(c: Configuration) -> dict[Node, int]:
    """The binary meeting-node labeling (1 on meeting nodes, 0 elsewhere)."""
    return {m: 1 for m in c.meeting_nodes}


def mer(c: Configuration) -> Rect:
    """Minimum enclosing rectangle of robots and meeting nodes."""
    return rect_of(list(c.robots) + list(c.meeting_nodes))


def mer_f(c: Configuration) -> Rect:
    """Minimum enclosing rectangle of the meeting nodes alone."""
    return rect_of(c.meeting_nodes)


def is_final(c: Configuration) -> bool:
    """True iff every robot sits on one single meeting node."""
    first = c.robots[0]
    return first in c.meeting_nodes and all(r == first for r in c.robots)


def distinct_robot_positions(c: Configuration) -> int:
    return len(set(c.robots))
