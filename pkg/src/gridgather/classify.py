"""Configuration taxonomy and phase inference.

Classes
-------
I11  meeting nodes orderable (every M-automorphism fixes M pointwise)
I12  unique reflection axis with at least one meeting node on it
I13  rotational meeting-node symmetry with a meeting node at the center
I21  M reflection-symmetric, nothing of M on the axis, whole config asymmetric
I22  M rotation-symmetric, nothing of M at the center, whole config asymmetric
I31  config symmetric about an axis holding a robot but no meeting node
I32  config rotation-symmetric with a robot, no meeting node, at the center
U    some symmetry fixes neither robots nor meeting nodes (ungatherable)
RUNNING_ASYM  the I21/I22 situation with robot multiplicities present

When the meeting nodes admit several symmetries the rotation branch takes
precedence over single-axis analysis.  Mid-run configurations with
multiplicities reuse the same structural predicates.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

from .grid import (
    Configuration,
    Node,
    is_final,
    lambda_labels,
    manhattan,
    mer,
    mer_f,
)
from .strings import ordering_O_double_prime
from .symmetry import Isometry, IsoKind, SymmetryReport, find_automorphisms


class Ungatherable(ValueError):
    """Raised when an operation requires a gatherable configuration."""


class ConfigClass(Enum):
    I11 = "I11"
    I12 = "I12"
    I13 = "I13"
    I21 = "I21"
    I22 = "I22"
    I31 = "I31"
    I32 = "I32"
    U = "U"
    FINAL = "Final"
    RUNNING_ASYM = "RunningAsym"


class Phase(Enum):
    MOVE_TO_TARGET = "MoveToInvariantTarget"
    SYMMETRY_BREAK = "SymmetryBreak"
    GUARD_SELECT = "GuardSelect"
    GUARD_PLACE = "GuardPlace"
    MAKE_MULTIPLICITY = "MakeMultiplicity"
    GUARD_MOVE = "GuardMove"
    DONE = "Done"


@dataclass(frozen=True)
class Witness:
    """Supporting data for a classification verdict."""

    axis: Isometry | None = None
    center2: tuple[int, int] | None = None
    comp_axis: Isometry | None = None
    clean_iso: Isometry | None = None


@dataclass(frozen=True)
class Classification:
    value: ConfigClass
    witness: Witness


def _complementary_axis(axis: Isometry, center2: tuple[int, int]) -> Isometry:
    """The reflection obtained by composing a 180-degree turn with ``axis``."""
    cx2, cy2 = center2
    k = axis.kind
    if k is IsoKind.REFLECT_V:
        return Isometry(IsoKind.REFLECT_H, ay2=cy2)
    if k is IsoKind.REFLECT_H:
        return Isometry(IsoKind.REFLECT_V, ax2=cx2)
    if k is IsoKind.REFLECT_D:
        return Isometry(IsoKind.REFLECT_A, ax2=cx2, ay2=cy2)
    return Isometry(IsoKind.REFLECT_D, ax2=cx2, ay2=cy2)


def _meeting_symmetry(c: Configuration) -> tuple[SymmetryReport, bool]:
    rep = find_automorphisms(lambda_labels(c))
    pointwise = all(
        phi.apply(m) == m for phi in rep.automorphisms for m in c.meeting_nodes
    )
    return rep, pointwise


@lru_cache(maxsize=1 << 14)
def classify(c: Configuration) -> Classification:
    if is_final(c):
        return Classification(ConfigClass.FINAL, Witness())

    full = find_automorphisms(c.labeled_points())
    anchored = set(c.robots) | set(c.meeting_nodes)
    for phi in full.automorphisms:
        if not any(phi.fixes_node(p) for p in anchored):
            return Classification(ConfigClass.U, Witness(clean_iso=phi))

    m_rep, m_pointwise = _meeting_symmetry(c)
    if m_pointwise:
        return Classification(ConfigClass.I11, Witness())

    occupied = set(c.robots)
    asym_value = ConfigClass.RUNNING_ASYM if c.has_multiplicity() else None

    if m_rep.rotations:
        center2 = m_rep.rotation_center
        assert center2 is not None
        cx2, cy2 = center2
        center_node = (cx2 // 2, cy2 // 2) if cx2 % 2 == 0 and cy2 % 2 == 0 else None
        if center_node is not None and center_node in c.meeting_nodes:
            return Classification(ConfigClass.I13, Witness(center2=center2))
        wit = Witness(center2=center2)
        if not full.automorphisms:
            return Classification(asym_value or ConfigClass.I22, wit)
        if full.rotations:
            # the ungatherable gate already excluded a clean center
            assert center_node is not None and center_node in occupied
            return Classification(ConfigClass.I32, wit)
        sigma = full.automorphisms[0]
        assert len(full.automorphisms) == 1 and sigma.is_reflection
        comp = _complementary_axis(sigma, center2)
        swit = Witness(axis=sigma, center2=center2, comp_axis=comp)
        if any(sigma.fixes_node(m) for m in c.meeting_nodes):
            return Classification(ConfigClass.I12, swit)
        assert any(sigma.fixes_node(r) for r in occupied)
        return Classification(ConfigClass.I31, swit)

    reflections = m_rep.reflections
    assert len(reflections) == 1, "no rotation implies a single reflection"
    axis = reflections[0]
    wit = Witness(axis=axis)
    if any(axis.fixes_node(m) for m in c.meeting_nodes):
        return Classification(ConfigClass.I12, wit)
    if not full.automorphisms:
        return Classification(asym_value or ConfigClass.I21, wit)
    assert all(a == axis for a in full.automorphisms)
    assert any(axis.fixes_node(r) for r in occupied)
    return Classification(ConfigClass.I31, wit)


_GUARD_CLASSES = {ConfigClass.I21, ConfigClass.I22, ConfigClass.RUNNING_ASYM}
_TARGET_CLASSES = {ConfigClass.I11, ConfigClass.I12, ConfigClass.I13}


def witness_dist2(node: Node, witness: Witness) -> int:
    """Doubled Manhattan distance from the symmetry witness (axis or center)."""
    if witness.axis is not None:
        return abs(witness.axis.signed_offset2(node))
    assert witness.center2 is not None
    cx2, cy2 = witness.center2
    return abs(2 * node[0] - cx2) + abs(2 * node[1] - cy2)


def valid_guard(c: Configuration, witness: Witness) -> Node | None:
    """The placed guard position, if one is currently recognizable.

    A valid guard is the unique strict maximizer of witness distance over
    all robot positions, lies farther from the witness than every meeting
    node and sits strictly outside MER_F.  Identification is purely
    positional: multiplicity is invisible at other nodes, so any
    count-sensitive rule would make observers disagree.
    """
    positions = set(c.robots)
    g = max(positions, key=lambda p: (witness_dist2(p, witness), p))
    gd = witness_dist2(g, witness)
    if any(p != g and witness_dist2(p, witness) >= gd for p in positions):
        return None
    if gd <= max(witness_dist2(m, witness) for m in c.meeting_nodes):
        return None
    if mer_f(c).contains(g):
        return None
    return g


def guard_anchor_rect(c: Configuration, g: Node):
    """Rectangle spanned by the meeting nodes and the guard.

    Guard placement and the O'' ordering anchor here rather than at the
    full MER: other robots cannot stretch this rectangle, so the guard's
    corner target and the resulting ordering never drift under stale
    interleavings.
    """
    from .grid import rect_of

    return rect_of(list(c.meeting_nodes) + [g])


def guard_at_anchor_corner(c: Configuration, g: Node) -> bool:
    return g in guard_anchor_rect(c, g).corners()


def guarded_target(c: Configuration, witness: Witness, g: Node) -> Node:
    """Meeting node closest to the guard; raster order from the guard's
    corner breaks ties (fallback when the guard is off its corner:
    witness distance, then coordinates)."""
    if guard_at_anchor_corner(c, g):
        order = ordering_O_double_prime(c, g)
        rank = {m: i for i, m in enumerate(order.ordered)}
        return min(c.meeting_nodes, key=lambda m: (manhattan(m, g), rank[m]))
    return min(
        c.meeting_nodes, key=lambda m: (manhattan(m, g), witness_dist2(m, witness), m)
    )


def infer_phase(c: Configuration) -> Phase:
    cls = classify(c)
    if cls.value is ConfigClass.U:
        raise Ungatherable("configuration is ungatherable")
    if cls.value is ConfigClass.FINAL:
        return Phase.DONE
    if cls.value in _TARGET_CLASSES:
        return Phase.MOVE_TO_TARGET
    if cls.value in (ConfigClass.I31, ConfigClass.I32):
        return Phase.SYMMETRY_BREAK
    assert cls.value in _GUARD_CLASSES
    counts = c.robot_counts()
    if len(counts) == 1:
        # a lone robot or one clump: no other position to anchor a guard,
        # so everything marches to the nearest meeting node
        return Phase.MOVE_TO_TARGET
    g = valid_guard(c, cls.witness)
    if len(counts) == 2:
        on_meeting = [p for p in counts if p in c.meeting_nodes]
        # finalization: the other position must actually be the target,
        # not just some meeting node a mover is passing over
        if len(on_meeting) == 1 and (
            g is None or on_meeting[0] == guarded_target(c, cls.witness, g)
        ):
            return Phase.GUARD_MOVE
    if g is None:
        return Phase.GUARD_SELECT
    if not guard_at_anchor_corner(c, g):
        return Phase.GUARD_PLACE
    return Phase.MAKE_MULTIPLICITY
