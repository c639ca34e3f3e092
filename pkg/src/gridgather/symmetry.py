"""Grid isometries, configuration automorphisms, orbits and gatherability.

A finite labeled point set on the square grid can only be preserved by
reflections (vertical, horizontal, diagonal, antidiagonal), rotations
(90/180/270 degrees) and the identity; translations never preserve a
finite nonempty set.  Every candidate isometry is anchored at the center
of the bounding rectangle of the labeled points, because an automorphism
must map that rectangle onto itself.

Anchors are stored as doubled integers so axes through edge midpoints and
centers at edge/face midpoints stay exact: an even doubled coordinate
lies on a node, an odd one between nodes.

Degenerate rectangles get special candidate sets: a single node keeps its
whole point stabilizer, while a line drops the along-line reflection
(it permutes the line's nodes identically, i.e. acts as the identity).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Iterable, Mapping

from .grid import Configuration, EmptyPointSet, Node, Rect, mer, rect_of


class UniverseNotStable(ValueError):
    """The isometry does not map the requested universe onto itself."""


class IsoKind(Enum):
    IDENTITY = "identity"
    REFLECT_V = "reflect-vertical"
    REFLECT_H = "reflect-horizontal"
    REFLECT_D = "reflect-diagonal"
    REFLECT_A = "reflect-antidiagonal"
    ROT90 = "rotate-90"
    ROT180 = "rotate-180"
    ROT270 = "rotate-270"


_REFLECTIONS = {IsoKind.REFLECT_V, IsoKind.REFLECT_H, IsoKind.REFLECT_D, IsoKind.REFLECT_A}
_ROTATIONS = {IsoKind.ROT90, IsoKind.ROT180, IsoKind.ROT270}


@dataclass(frozen=True)
class Isometry:
    """A grid isometry with anchor in doubled coordinates.

    Field meaning by kind:
      REFLECT_V: axis x = ax2/2            (ay2 normalized to 0)
      REFLECT_H: axis y = ay2/2            (ax2 normalized to 0)
      REFLECT_D: axis y = x + ay2/2        (ax2 normalized to 0, ay2 = 2t)
      REFLECT_A: axis x + y = ay2/2        (ax2 normalized to 0, ay2 = 2u)
      ROT90/180/270: center (ax2/2, ay2/2)
    """

    kind: IsoKind
    ax2: int = 0
    ay2: int = 0

    def __post_init__(self) -> None:
        if self.kind is IsoKind.REFLECT_V:
            object.__setattr__(self, "ay2", 0)
        elif self.kind is IsoKind.REFLECT_H:
            object.__setattr__(self, "ax2", 0)
        elif self.kind in (IsoKind.REFLECT_D, IsoKind.REFLECT_A):
            if self.kind is IsoKind.REFLECT_D:
                t2 = self.ay2 - self.ax2
            else:
                t2 = self.ay2 + self.ax2
            if t2 % 2 != 0:
                raise ValueError("diagonal axis must pass through nodes")
            object.__setattr__(self, "ax2", 0)
            object.__setattr__(self, "ay2", t2)
        elif self.kind in (IsoKind.ROT90, IsoKind.ROT270):
            if (self.ax2 + self.ay2) % 2 != 0:
                raise ValueError("90-degree rotation center must be node or face center")
        elif self.kind is IsoKind.IDENTITY:
            object.__setattr__(self, "ax2", 0)
            object.__setattr__(self, "ay2", 0)

    @property
    def is_reflection(self) -> bool:
        return self.kind in _REFLECTIONS

    @property
    def is_rotation(self) -> bool:
        return self.kind in _ROTATIONS

    @property
    def order(self) -> int:
        if self.kind is IsoKind.IDENTITY:
            return 1
        return 4 if self.kind in (IsoKind.ROT90, IsoKind.ROT270) else 2

    def apply(self, node: Node) -> Node:
        x, y = node
        k = self.kind
        if k is IsoKind.IDENTITY:
            return node
        if k is IsoKind.REFLECT_V:
            return (self.ax2 - x, y)
        if k is IsoKind.REFLECT_H:
            return (x, self.ay2 - y)
        if k is IsoKind.REFLECT_D:
            t = self.ay2 // 2
            return (y - t, x + t)
        if k is IsoKind.REFLECT_A:
            u = self.ay2 // 2
            return (u - y, u - x)
        if k is IsoKind.ROT180:
            return (self.ax2 - x, self.ay2 - y)
        s = (self.ax2 + self.ay2) // 2
        d = (self.ay2 - self.ax2) // 2
        if k is IsoKind.ROT90:
            return (s - y, x + d)
        return (y - d, s - x)  # ROT270

    def fixes_node(self, node: Node) -> bool:
        x, y = node
        k = self.kind
        if k is IsoKind.IDENTITY:
            return True
        if k is IsoKind.REFLECT_V:
            return 2 * x == self.ax2
        if k is IsoKind.REFLECT_H:
            return 2 * y == self.ay2
        if k is IsoKind.REFLECT_D:
            return 2 * (y - x) == self.ay2
        if k is IsoKind.REFLECT_A:
            return 2 * (x + y) == self.ay2
        return 2 * x == self.ax2 and 2 * y == self.ay2

    def fixed_nodes_in(self, rect: Rect) -> tuple[Node, ...]:
        return tuple(v for v in rect.nodes() if self.fixes_node(v))

    def signed_offset2(self, node: Node) -> int:
        """Doubled signed distance from a reflection axis (0 on the axis)."""
        x, y = node
        k = self.kind
        if k is IsoKind.REFLECT_V:
            return 2 * x - self.ax2
        if k is IsoKind.REFLECT_H:
            return 2 * y - self.ay2
        if k is IsoKind.REFLECT_D:
            return 2 * (y - x) - self.ay2
        if k is IsoKind.REFLECT_A:
            return 2 * (x + y) - self.ay2
        raise ValueError(f"{self.kind} has no axis")

    def as_map(self, nodes: Iterable[Node]) -> dict[Node, Node]:
        return {n: self.apply(n) for n in nodes}

    def describe(self) -> str:
        k = self.kind
        if k is IsoKind.REFLECT_V:
            return f"vertical axis x={_half(self.ax2)}"
        if k is IsoKind.REFLECT_H:
            return f"horizontal axis y={_half(self.ay2)}"
        if k is IsoKind.REFLECT_D:
            return f"diagonal axis y=x+{self.ay2 // 2}"
        if k is IsoKind.REFLECT_A:
            return f"antidiagonal axis x+y={self.ay2 // 2}"
        if k in _ROTATIONS:
            deg = {IsoKind.ROT90: 90, IsoKind.ROT180: 180, IsoKind.ROT270: 270}[k]
            return f"{deg}-degree rotation about ({_half(self.ax2)},{_half(self.ay2)})"
        return "identity"


def _half(v2: int) -> str:
    return str(v2 // 2) if v2 % 2 == 0 else f"{v2 / 2:.1f}"


@dataclass(frozen=True)
class SymmetryReport:
    automorphisms: tuple[Isometry, ...]
    unique_reflection_axis: Isometry | None
    rotation_center: tuple[int, int] | None
    is_asymmetric: bool

    @property
    def reflections(self) -> tuple[Isometry, ...]:
        return tuple(a for a in self.automorphisms if a.is_reflection)

    @property
    def rotations(self) -> tuple[Isometry, ...]:
        return tuple(a for a in self.automorphisms if a.is_rotation)


def candidate_isometries(rect: Rect) -> tuple[Isometry, ...]:
    cx2, cy2 = rect.center2()
    p, q = rect.p, rect.q
    if p == 0 and q == 0:
        # single node: the whole point stabilizer fixes it
        return (
            Isometry(IsoKind.REFLECT_V, ax2=cx2),
            Isometry(IsoKind.REFLECT_H, ay2=cy2),
            Isometry(IsoKind.REFLECT_D, ax2=cx2, ay2=cy2),
            Isometry(IsoKind.REFLECT_A, ax2=cx2, ay2=cy2),
            Isometry(IsoKind.ROT90, ax2=cx2, ay2=cy2),
            Isometry(IsoKind.ROT180, ax2=cx2, ay2=cy2),
            Isometry(IsoKind.ROT270, ax2=cx2, ay2=cy2),
        )
    if q == 0:
        return (
            Isometry(IsoKind.REFLECT_V, ax2=cx2),
            Isometry(IsoKind.ROT180, ax2=cx2, ay2=cy2),
        )
    if p == 0:
        return (
            Isometry(IsoKind.REFLECT_H, ay2=cy2),
            Isometry(IsoKind.ROT180, ax2=cx2, ay2=cy2),
        )
    if p == q:
        return (
            Isometry(IsoKind.REFLECT_V, ax2=cx2),
            Isometry(IsoKind.REFLECT_H, ay2=cy2),
            Isometry(IsoKind.REFLECT_D, ax2=cx2, ay2=cy2),
            Isometry(IsoKind.REFLECT_A, ax2=cx2, ay2=cy2),
            Isometry(IsoKind.ROT90, ax2=cx2, ay2=cy2),
            Isometry(IsoKind.ROT180, ax2=cx2, ay2=cy2),
            Isometry(IsoKind.ROT270, ax2=cx2, ay2=cy2),
        )
    return (
        Isometry(IsoKind.REFLECT_V, ax2=cx2),
        Isometry(IsoKind.REFLECT_H, ay2=cy2),
        Isometry(IsoKind.ROT180, ax2=cx2, ay2=cy2),
    )


def find_automorphisms(
    points: Mapping[Node, int] | Iterable[tuple[Node, int]],
) -> SymmetryReport:
    """All label-preserving isometries of a finite labeled point set.

    Candidates are anchored at the bounding-rectangle center: any
    automorphism maps the rectangle onto itself, so the enumeration is
    complete for the eight grid point-group kinds.
    """
    pts = dict(points)
    if not pts:
        raise EmptyPointSet("no labeled points")
    triples = frozenset((x, y, l) for (x, y), l in pts.items())
    rect = rect_of(pts)
    autos = []
    for iso in candidate_isometries(rect):
        mapped = frozenset((*iso.apply((x, y)), l) for (x, y, l) in triples)
        if mapped == triples:
            autos.append(iso)
    reflections = [a for a in autos if a.is_reflection]
    rotations = [a for a in autos if a.is_rotation]
    return SymmetryReport(
        automorphisms=tuple(autos),
        unique_reflection_axis=reflections[0] if len(reflections) == 1 else None,
        rotation_center=(rotations[0].ax2, rotations[0].ay2) if rotations else None,
        is_asymmetric=not autos,
    )


@dataclass(frozen=True)
class OrbitPartition:
    orbits: tuple[tuple[Node, ...], ...]
    generator: Isometry


def orbits(universe: Rect, iso: Isometry) -> OrbitPartition:
    """Partition the universe's nodes into cycles of the isometry."""
    imgs = [iso.apply(c) for c in universe.corners()]
    if rect_of(imgs) != universe:
        raise UniverseNotStable(f"{iso.describe()} does not stabilize {universe}")
    seen: set[Node] = set()
    cycles: list[tuple[Node, ...]] = []
    for v in universe.nodes():
        if v in seen:
            continue
        cyc = [v]
        w = iso.apply(v)
        while w != v:
            cyc.append(w)
            w = iso.apply(w)
        seen.update(cyc)
        cycles.append(tuple(cyc))
    return OrbitPartition(orbits=tuple(cycles), generator=iso)


def is_partitive(c: Configuration, iso: Isometry, excluded: frozenset[Node] | set[Node]) -> bool:
    """True iff every MER node outside ``excluded`` has a full-size orbit.

    Orbit sizes under a single isometry are 1 (fixed) or the isometry's
    order, so partitivity reduces to all in-universe fixed nodes being
    excluded.
    """
    universe = mer(c)
    return all(v in excluded for v in iso.fixed_nodes_in(universe))


def is_ungatherable(c: Configuration) -> bool:
    """True iff some automorphism fixes no robot and no meeting node.

    Covers reflections with nothing on the axis (including edge-type axes,
    whose fixed node set is empty) and rotations whose center carries
    nothing (including non-node centers).
    """
    report = find_automorphisms(c.labeled_points())
    anchored = set(c.robots) | set(c.meeting_nodes)
    for phi in report.automorphisms:
        if not any(phi.fixes_node(p) for p in anchored):
            return True
    return False


# Global point-group operations about the origin, for tests and generators.
POINT_OPS: dict[str, Callable[[Node], Node]] = {
    "id": lambda n: n,
    "rot90": lambda n: (-n[1], n[0]),
    "rot180": lambda n: (-n[0], -n[1]),
    "rot270": lambda n: (n[1], -n[0]),
    "flip_x": lambda n: (n[0], -n[1]),
    "flip_y": lambda n: (-n[0], n[1]),
    "flip_diag": lambda n: (n[1], n[0]),
    "flip_anti": lambda n: (-n[1], -n[0]),
}


def transform_config(c: Configuration, op: str, dx: int = 0, dy: int = 0) -> Configuration:
    f = POINT_OPS[op]

    def g(n: Node) -> Node:
        x, y = f(n)
        return (x + dx, y + dy)

    return Configuration(
        tuple(g(r) for r in c.robots), frozenset(g(m) for m in c.meeting_nodes)
    )


def transform_node(n: Node, op: str, dx: int = 0, dy: int = 0) -> Node:
    x, y = POINT_OPS[op](n)
    return (x + dx, y + dy)
