"""Lexicographic string machinery: corner scans, key and leading corners,
and the meeting-node orderings used for target selection.

A corner scan is a raster: starting at a corner of a rectangle, the inner
axis runs one full line of nodes away from the corner, then the outer
axis advances one line, every line read in the same orientation.  A
rectangle with edge sides p x q yields strings of (p+1)(q+1) symbols.

For a non-square rectangle the string representation of a corner is the
scan whose inner axis parallels the shorter side; for a square it is the
lexicographically larger of the corner's two scans.  Raster order of any
fixed node set depends only on the scan corner and the axis assignment,
never on the rectangle's extent, which several ordering invariants below
rely on.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Callable, Mapping

from .grid import (
    Configuration,
    Node,
    Rect,
    lambda_labels,
    manhattan,
    mer,
    mer_f,
    occupancy_labels,
    rect_of,
)
from .symmetry import Isometry

AXIS_X = 0
AXIS_Y = 1


class NoUniqueKeyCorner(ValueError):
    def __init__(self, corners: tuple[Node, ...]):
        super().__init__(f"no unique key corner; tied corners {corners}")
        self.corners = corners


class OrderingUndefined(ValueError):
    """The requested meeting-node ordering is not defined here."""


class LabelKind(Enum):
    SENARY = "senary"
    BINARY = "binary"


@dataclass(frozen=True)
class CornerString:
    corner: Node
    inner_step: Node
    outer_step: Node
    inner_len: int
    outer_len: int
    symbols: str

    def nodes(self) -> list[Node]:
        cx, cy = self.corner
        ix, iy = self.inner_step
        ox, oy = self.outer_step
        out = []
        for o in range(self.outer_len):
            for i in range(self.inner_len):
                out.append((cx + ix * i + ox * o, cy + iy * i + oy * o))
        return out

    def offsets(self, node: Node) -> tuple[int, int]:
        """(outer, inner) raster offsets of a node in this scan's frame.

        Defined for every grid node (offsets may be negative); the raster
        order of nodes inside the rectangle is the lexicographic order of
        these pairs.
        """
        dx = node[0] - self.corner[0]
        dy = node[1] - self.corner[1]
        inner = dx * self.inner_step[0] + dy * self.inner_step[1]
        outer = dx * self.outer_step[0] + dy * self.outer_step[1]
        return (outer, inner)

    def index_of(self, node: Node) -> int:
        outer, inner = self.offsets(node)
        if not (0 <= inner < self.inner_len and 0 <= outer < self.outer_len):
            raise ValueError(f"{node} outside scanned rectangle")
        return outer * self.inner_len + inner


def scan(labels: Mapping[Node, int], rect: Rect, corner: Node, inner_axis: int) -> CornerString:
    if corner not in rect.corners():
        raise ValueError(f"{corner} is not a corner of {rect}")
    sx = 1 if corner[0] == rect.min_x else -1
    sy = 1 if corner[1] == rect.min_y else -1
    if inner_axis == AXIS_Y:
        inner_step, outer_step = (0, sy), (sx, 0)
        inner_len, outer_len = rect.q + 1, rect.p + 1
    else:
        inner_step, outer_step = (sx, 0), (0, sy)
        inner_len, outer_len = rect.p + 1, rect.q + 1
    cx, cy = corner
    chars = []
    for o in range(outer_len):
        for i in range(inner_len):
            node = (cx + inner_step[0] * i + outer_step[0] * o,
                    cy + inner_step[1] * i + outer_step[1] * o)
            chars.append(str(labels.get(node, 0)))
    return CornerString(corner, inner_step, outer_step, inner_len, outer_len, "".join(chars))


def corner_strings(c: Configuration, rect: Rect, labeler: LabelKind) -> tuple[CornerString, ...]:
    """Both scans of every corner slot: eight strings."""
    labels = c.labeled_points() if labeler is LabelKind.SENARY else lambda_labels(c)
    out = []
    for corner in rect.corners():
        for axis in (AXIS_Y, AXIS_X):
            out.append(scan(labels, rect, corner, axis))
    return tuple(out)


def _repr_axes(rect: Rect) -> tuple[int, ...]:
    if rect.p == rect.q:
        return (AXIS_Y, AXIS_X) if rect.p > 0 else (AXIS_Y,)
    return (AXIS_Y,) if rect.q < rect.p else (AXIS_X,)


def repr_candidates(labels: Mapping[Node, int], rect: Rect) -> list[CornerString]:
    """Per-corner string-representation candidates (shape-aware)."""
    return [
        scan(labels, rect, corner, axis)
        for corner in rect.distinct_corners()
        for axis in _repr_axes(rect)
    ]


def string_repr(labels: Mapping[Node, int], rect: Rect, corner: Node) -> CornerString:
    """The string representation of one corner.

    Non-square: the scan along the shorter side.  Square: the
    lexicographically larger of the corner's two scans (they are equal
    exactly when the rectangle content is diagonal-symmetric there).
    """
    best = None
    for axis in _repr_axes(rect):
        s = scan(labels, rect, corner, axis)
        if best is None or s.symbols > best.symbols:
            best = s
    assert best is not None
    return best


def max_scans(labels: Mapping[Node, int], rect: Rect) -> list[CornerString]:
    """All repr candidates achieving the lexicographic maximum."""
    cands = repr_candidates(labels, rect)
    best = max(s.symbols for s in cands)
    return [s for s in cands if s.symbols == best]


def key_corner_of_labels(labels: Mapping[Node, int], rect: Rect) -> tuple[Node, CornerString]:
    winners = max_scans(labels, rect)
    corners = tuple(dict.fromkeys(w.corner for w in winners))
    if len(corners) > 1:
        raise NoUniqueKeyCorner(corners)
    return corners[0], winners[0]


def key_corner(c: Configuration) -> tuple[Node, CornerString]:
    """The corner of the MER owning the unique largest senary string."""
    return key_corner_of_labels(c.labeled_points(), mer(c))


def leading_corners(c: Configuration) -> list[tuple[Node, CornerString]]:
    """Corners of MER_F achieving the largest binary string."""
    winners = max_scans(lambda_labels(c), mer_f(c))
    out = []
    for w in winners:
        if all(w.corner != corner for corner, _ in out):
            out.append((w.corner, w))
    return out


def scan_sort_key(scans: list[CornerString]) -> Callable[[Node], tuple]:
    """Raster sort key; ties across several scans resolved by the minimum.

    For nodes fixed by the symmetry that ties the scans, all tied scans
    agree on the offsets, so the key is well defined wherever it is used
    for symmetric configurations.
    """

    def key(node: Node) -> tuple:
        return min(s.offsets(node) for s in scans)

    return key


class OrderKind(Enum):
    O_FULL = "O"
    O_PRIME = "O'"
    O_DOUBLE_PRIME = "O''"


@dataclass(frozen=True)
class MeetingOrder:
    ordered: tuple[Node, ...]
    kind: OrderKind

    def highest(self) -> Node:
        return self.ordered[-1]

    def index(self, m: Node) -> int:
        return self.ordered.index(m)


def ordering_O(c: Configuration) -> MeetingOrder:
    """Meeting nodes by first appearance in the maximal binary scan.

    Defined exactly when all maximal scans agree on the order, which is
    the orderability condition for the meeting-node set.
    """
    winners = max_scans(lambda_labels(c), mer_f(c))
    orders = []
    for w in winners:
        orders.append(tuple(n for n in w.nodes() if n in c.meeting_nodes))
    if len(set(orders)) != 1:
        raise OrderingUndefined("meeting nodes are not orderable (symmetric)")
    return MeetingOrder(orders[0], OrderKind.O_FULL)


def ordering_O_prime(c: Configuration, axis: Isometry) -> MeetingOrder:
    """On-axis meeting nodes by distance from the leading corner(s).

    Distance ties are broken by raster position in the maximal binary
    scans; the orders obtained from symmetric leading corners coincide
    and this is asserted rather than chosen.
    """
    if not axis.is_reflection:
        raise OrderingUndefined("O' needs a reflection axis")
    lam = lambda_labels(c)
    mapped = {axis.apply(m) for m in c.meeting_nodes}
    if mapped != set(c.meeting_nodes):
        raise OrderingUndefined("axis is not a symmetry of the meeting nodes")
    on_axis = [m for m in sorted(c.meeting_nodes) if axis.fixes_node(m)]
    if not on_axis:
        raise OrderingUndefined("no meeting node on the axis")
    winners = max_scans(lam, mer_f(c))
    tie = scan_sort_key(winners)
    orders = set()
    for corner, _ in leading_corners(c):
        orders.add(tuple(sorted(on_axis, key=lambda m: (manhattan(corner, m), tie(m)))))
    if len(orders) != 1:
        raise OrderingUndefined("leading corners disagree on the on-axis order")
    return MeetingOrder(orders.pop(), OrderKind.O_PRIME)


def ordering_O_double_prime(c: Configuration, guard_corner: Node) -> MeetingOrder:
    """Meeting nodes in raster order from the guard's corner.

    The scan direction is anchored to the rectangle spanned by the meeting
    nodes and the guard corner, so the ordering cannot change while the
    guard is stationary, whatever the other robots do.
    """
    anchor = rect_of(list(c.meeting_nodes) + [guard_corner])
    if guard_corner not in anchor.corners():
        raise OrderingUndefined(f"{guard_corner} is not a corner of its anchor rectangle")
    lam = lambda_labels(c)
    if not anchor.is_square:
        axis = AXIS_Y if anchor.q < anchor.p else AXIS_X
        chosen = scan(lam, anchor, guard_corner, axis)
    else:
        sy = scan(lam, anchor, guard_corner, AXIS_Y)
        sx = scan(lam, anchor, guard_corner, AXIS_X)
        # equal strings mean the anchored meeting pattern is symmetric in
        # the corner's diagonal; the fixed fallback keeps the ordering
        # independent of robot positions (the stationary-guard invariant)
        chosen = sy if sy.symbols >= sx.symbols else sx
    order = tuple(sorted(c.meeting_nodes, key=chosen.offsets))
    return MeetingOrder(order, OrderKind.O_DOUBLE_PRIME)
