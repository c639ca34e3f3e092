"""Class-targeted random configuration generation.

Every generator rejection-samples: build a candidate shaped like the
requested class, then confirm with the classifier (closed loop).  The
meeting-node rotation center and reflection axes are always node-anchored
except for the ungatherable family, which also exercises edge-type axes
and non-node centers.
"""

from __future__ import annotations

import random

from .classify import ConfigClass, classify
from .grid import Configuration, Node
from .symmetry import Isometry, IsoKind

CLASS_NAMES = ("I11", "I12", "I13", "I21", "I22", "I31", "I32", "U")


class InfeasibleClassParams(ValueError):
    """The requested class/size combination cannot be satisfied."""


def _sample_distinct(rng: random.Random, d: int, k: int, forbid: set[Node] | None = None) -> list[Node]:
    forbid = forbid or set()
    pool = [(x, y) for x in range(d + 1) for y in range(d + 1) if (x, y) not in forbid]
    if k > len(pool):
        raise InfeasibleClassParams(f"cannot place {k} distinct nodes in a {d}x{d} box")
    return rng.sample(pool, k)


def _mirror_axis(rng: random.Random, d: int, edge_type: bool) -> Isometry:
    kinds = [IsoKind.REFLECT_V, IsoKind.REFLECT_H, IsoKind.REFLECT_D, IsoKind.REFLECT_A]
    kind = rng.choice(kinds if not edge_type else kinds[:2])
    if kind is IsoKind.REFLECT_V:
        ax2 = d if not edge_type else d + (1 if d % 2 == 0 else 0)
        if edge_type and ax2 % 2 == 0:
            ax2 += 1
        return Isometry(kind, ax2=ax2)
    if kind is IsoKind.REFLECT_H:
        ay2 = d if not edge_type else d + (1 if d % 2 == 0 else 0)
        if edge_type and ay2 % 2 == 0:
            ay2 += 1
        return Isometry(kind, ay2=ay2)
    if kind is IsoKind.REFLECT_D:
        return Isometry(kind, ax2=0, ay2=0)
    return Isometry(kind, ax2=0, ay2=2 * d)


def _center(rng: random.Random, d: int, node_type: bool) -> tuple[int, int]:
    if node_type:
        c = 2 * (d // 2)
        return (c, c)
    return (d, d) if d % 2 == 1 else (d + 1, d + 1)


def _orbit_fill(rng: random.Random, d: int, count: int, images) -> set[Node] | None:
    """Fill a set closed under the image maps, hitting ``count`` exactly."""
    out: set[Node] = set()
    for _ in range(200):
        if len(out) == count:
            return out
        if len(out) > count:
            return None
        v = (rng.randrange(d + 1), rng.randrange(d + 1))
        orbit = {v}
        for f in images:
            orbit |= {f(w) for w in list(orbit)}
            orbit |= {f(w) for w in list(orbit)}
        if all(0 <= w[0] <= d and 0 <= w[1] <= d for w in orbit):
            if len(out | orbit) <= count:
                out |= orbit
    return out if len(out) == count else None


def _axis_symmetric_meeting(
    rng: random.Random, d: int, count: int, axis: Isometry, on_axis: bool
) -> set[Node] | None:
    out: set[Node] = set()
    want_on_axis = 1 + rng.randrange(2) if on_axis else 0
    for _ in range(300):
        if len(out) >= count and (not on_axis or any(axis.fixes_node(m) for m in out)):
            break
        v = (rng.randrange(d + 1), rng.randrange(d + 1))
        if axis.fixes_node(v):
            if want_on_axis <= 0 or not on_axis:
                continue
            if len(out) + 1 <= count:
                out.add(v)
                want_on_axis -= 1
            continue
        w = axis.apply(v)
        if not (0 <= w[0] <= d and 0 <= w[1] <= d):
            continue
        if len(out) + 2 <= count:
            out |= {v, w}
    if len(out) != count:
        return None
    if on_axis and not any(axis.fixes_node(m) for m in out):
        return None
    if not on_axis and any(axis.fixes_node(m) for m in out):
        return None
    return out


def _rot_images(center2: tuple[int, int], quarter: bool):
    cx2, cy2 = center2

    def rot180(v: Node) -> Node:
        return (cx2 - v[0], cy2 - v[1])

    if not quarter:
        return [rot180]
    s = (cx2 + cy2) // 2
    dd = (cy2 - cx2) // 2

    def rot90(v: Node) -> Node:
        return (s - v[1], v[0] + dd)

    return [rot90]


def _robots_anywhere(rng: random.Random, d: int, n: int) -> list[Node]:
    return _sample_distinct(rng, d, n)


def _mirror_robots(
    rng: random.Random, d: int, n: int, axis: Isometry, n_on_axis: int
) -> list[Node] | None:
    out: set[Node] = set()
    on = 0
    for _ in range(400):
        if len(out) == n and on >= n_on_axis:
            return sorted(out)
        v = (rng.randrange(d + 1), rng.randrange(d + 1))
        if axis.fixes_node(v):
            if on < n_on_axis and len(out) + 1 <= n and v not in out:
                out.add(v)
                on += 1
            continue
        w = axis.apply(v)
        if not (0 <= w[0] <= d and 0 <= w[1] <= d) or v in out or w in out:
            continue
        if len(out) + 2 <= n:
            out |= {v, w}
    return None


def generate(
    cls: str, n: int, d: int, seed: int = 0, max_attempts: int = 4000
) -> Configuration:
    """One configuration of the requested class, n robots, box side d."""
    if cls not in CLASS_NAMES:
        raise InfeasibleClassParams(f"unknown class {cls!r}")
    if n < 1 or d < 1:
        raise InfeasibleClassParams("need n >= 1 and d >= 1")
    if n > (d + 1) * (d + 1):
        raise InfeasibleClassParams(f"{n} distinct robots cannot fit a {d}x{d} box")
    if cls == "I32" and n % 2 == 0:
        # center robot plus full rotation orbits forces an odd robot count
        raise InfeasibleClassParams("I32 needs an odd number of robots")
    rng = random.Random(seed)
    want = ConfigClass(cls)
    for _ in range(max_attempts):
        c = _candidate(rng, want, n, d)
        if c is None:
            continue
        if classify(c).value is want:
            return c
    raise InfeasibleClassParams(f"no {cls} configuration found for n={n}, d={d}")


def _candidate(rng: random.Random, want: ConfigClass, n: int, d: int) -> Configuration | None:
    try:
        if want is ConfigClass.I11:
            m = set(_sample_distinct(rng, d, min(2 + rng.randrange(4), (d + 1) ** 2)))
            r = _robots_anywhere(rng, d, n)
            return Configuration(tuple(r), frozenset(m))

        if want is ConfigClass.I12:
            axis = _mirror_axis(rng, d, edge_type=False)
            m = _axis_symmetric_meeting(rng, d, 3 + rng.randrange(3), axis, on_axis=True)
            if not m:
                return None
            return Configuration(tuple(_robots_anywhere(rng, d, n)), frozenset(m))

        if want is ConfigClass.I13:
            center2 = _center(rng, d, node_type=True)
            images = _rot_images(center2, quarter=rng.random() < 0.4)
            m = _orbit_fill(rng, d, 2 + 2 * rng.randrange(1, 3), images)
            if m is None:
                return None
            m.add((center2[0] // 2, center2[1] // 2))
            return Configuration(tuple(_robots_anywhere(rng, d, n)), frozenset(m))

        if want in (ConfigClass.I21, ConfigClass.I31):
            axis = _mirror_axis(rng, d, edge_type=False)
            m = _axis_symmetric_meeting(rng, d, 2 + 2 * rng.randrange(1, 3), axis, on_axis=False)
            if not m:
                return None
            if want is ConfigClass.I21:
                r = _robots_anywhere(rng, d, n)
            else:
                robots = _mirror_robots(rng, d, n, axis, n_on_axis=1 + (n % 2 == 0))
                if robots is None:
                    return None
                r = robots
            return Configuration(tuple(r), frozenset(m))

        # rotational meeting nodes without a meeting node at the center
        node_center = want is not ConfigClass.U or rng.random() < 0.5
        center2 = _center(rng, d, node_type=node_center)
        images = _rot_images(center2, quarter=rng.random() < 0.4)
        m = _orbit_fill(rng, d, 2 + 2 * rng.randrange(1, 3), images)
        if m is None:
            return None
        cnode = (center2[0] // 2, center2[1] // 2) if center2[0] % 2 == 0 else None
        if cnode in m:
            return None

        if want is ConfigClass.I22:
            return Configuration(tuple(_robots_anywhere(rng, d, n)), frozenset(m))

        if want is ConfigClass.I32:
            if cnode is None:
                return None
            robots = _orbit_fill(rng, d, n - 1, images)
            if robots is None or cnode in robots or len(robots) != n - 1:
                return None
            return Configuration(tuple(robots | {cnode}), frozenset(m))

        # U: either rotational with empty center, or a mirror with empty axis
        if rng.random() < 0.5:
            robots = _orbit_fill(rng, d, n, images)
            if robots is None or (cnode is not None and cnode in robots):
                return None
            if cnode is not None and cnode in m:
                return None
            return Configuration(tuple(robots), frozenset(m))
        axis = _mirror_axis(rng, d, edge_type=rng.random() < 0.5)
        m2 = _axis_symmetric_meeting(rng, d, 2 + 2 * rng.randrange(1, 3), axis, on_axis=False)
        if not m2:
            return None
        robots = _mirror_robots(rng, d, n, axis, n_on_axis=0)
        if robots is None:
            return None
        return Configuration(tuple(robots), frozenset(m2))
    except (InfeasibleClassParams, ValueError):
        return None


def random_configuration(rng: random.Random, n_max: int = 20, d_max: int = 30) -> Configuration:
    """A loosely random configuration for fuzzing (any class)."""
    d = rng.randrange(1, d_max + 1)
    n = rng.randrange(1, min(n_max, (d + 1) ** 2) + 1)
    if rng.random() < 0.5:
        cls = rng.choice(CLASS_NAMES)
        try:
            return generate(cls, n, d, seed=rng.randrange(1 << 30), max_attempts=60)
        except InfeasibleClassParams:
            pass
    robots = _sample_distinct(rng, d, n)
    m = _sample_distinct(rng, d, rng.randrange(1, min(7, (d + 1) ** 2 - 0)))
    return Configuration(tuple(robots), frozenset(m))
