"""The per-robot decision function.

A robot sees the full configuration with occupancy only (it cannot count
robots anywhere but on its own node) plus the multiplicity bit of its own
node.  ``make_snapshot`` builds exactly that view, and ``decide`` is a
pure function of it: same snapshot, same decision, for every robot.

All string and view computations inside the decision function use
occupancy-collapsed labels so that every observer of one configuration
computes identical corners, views and tie-breaks.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

from .classify import (
    Classification,
    ConfigClass,
    Phase,
    Ungatherable,
    Witness,
    classify,
    guard_anchor_rect,
    guarded_target,
    infer_phase,
    valid_guard,
    witness_dist2,
)
from .grid import Configuration, Node, lambda_labels, manhattan, mer, mer_f, occupancy_labels
from .strings import (
    OrderingUndefined,
    max_scans,
    ordering_O,
    ordering_O_prime,
    scan_sort_key,
)
from .symmetry import Isometry, find_automorphisms


class NoGuardYet(ValueError):
    """Target requested for a guarded class before a guard is placed."""


class SymmetricConfiguration(ValueError):
    """Guard designation requested for a symmetric configuration."""


@dataclass(frozen=True)
class Snapshot:
    """What one robot sees: occupancy everywhere, true bit at its own node."""

    config: Configuration
    self_node: Node


@dataclass(frozen=True)
class Decision:
    move_to: Node | None = None

    @property
    def is_null(self) -> bool:
        return self.move_to is None


_STAY = Decision(None)


def make_snapshot(c: Configuration, observer: Node) -> Snapshot:
    counts = c.robot_counts()
    if not counts.get(observer):
        raise ValueError(f"no robot at {observer}")
    robots: list[Node] = sorted(set(c.robots))
    if counts[observer] >= 2:
        robots.append(observer)
    return Snapshot(Configuration(tuple(robots), c.meeting_nodes), observer)


def _occ_key(c: Configuration) -> Callable[[Node], tuple]:
    """Canonical raster sort key from the maximal occupancy-label scans."""
    return scan_sort_key(max_scans(occupancy_labels(c), mer(c)))


def _m_key(c: Configuration) -> Callable[[Node], tuple]:
    """Raster sort key in the fixed meeting-node frame.

    Robots cannot perturb this order however they move, which keeps
    repeated guard designation stable under stale-move interleavings.
    """
    return scan_sort_key(max_scans(lambda_labels(c), mer_f(c)))


def _sign(v: int) -> int:
    return (v > 0) - (v < 0)


def _has_witness(w: Witness) -> bool:
    return w.axis is not None or w.center2 is not None


def _symmetric_after(c: Configuration, frm: Node, dest: Node) -> bool:
    """Would moving one robot frm -> dest leave a symmetric occupancy view?"""
    robots = list(c.robots)
    robots.remove(frm)
    robots.append(dest)
    moved = c.with_robots(robots)
    return bool(find_automorphisms(occupancy_labels(moved)).automorphisms)


def step_toward(
    frm: Node,
    to: Node,
    c: Configuration,
    witness: Witness | None = None,
    tie: Callable[[Node], tuple] | None = None,
    avoid_axis: Isometry | None = None,
    avoid_symmetry: bool = False,
) -> Node:
    """One shortest-path step from ``frm`` toward ``to``.

    When both axes shorten the path: optionally prefer a step whose
    resulting configuration stays asymmetric (guard machinery relies on
    asymmetry), then the step that weakly decreases the witness distance,
    then (when given) the step farther from ``avoid_axis``, then the
    earlier node in the canonical scan order.
    """
    if frm == to:
        raise ValueError("already at destination")
    dx = to[0] - frm[0]
    dy = to[1] - frm[1]
    cands: list[Node] = []
    if dx:
        cands.append((frm[0] + (1 if dx > 0 else -1), frm[1]))
    if dy:
        cands.append((frm[0], frm[1] + (1 if dy > 0 else -1)))
    if len(cands) == 1:
        return cands[0]
    if tie is None:
        tie = _occ_key(c)

    def key(cand: Node) -> tuple:
        parts: list = []
        if avoid_symmetry:
            parts.append(_symmetric_after(c, frm, cand))
        if witness is not None and _has_witness(witness):
            parts.append(_sign(witness_dist2(cand, witness) - witness_dist2(frm, witness)))
        if avoid_axis is not None:
            parts.append(-abs(avoid_axis.signed_offset2(cand)))
        parts.append(tie(cand))
        parts.append(cand)
        return tuple(parts)

    return min(cands, key=key)


def _neg(t: tuple) -> tuple:
    return tuple(-v for v in t)


def _sliver_target(c: Configuration, wit: Witness) -> Node:
    """Target for the rotational-M / single-axis case.

    The axis is the configuration's own reflection; meeting nodes on it
    are ranked by how many robots share their side of the complementary
    reflection (crossing that line as mirrored twins is what creates
    ungatherable intermediate symmetries), then by closeness to the
    meeting-node rotation center, then by canonical scan position.
    """
    axis = wit.axis
    comp = wit.comp_axis
    assert axis is not None and comp is not None and wit.center2 is not None
    on_axis = [m for m in sorted(c.meeting_nodes) if axis.fixes_node(m)]
    assert on_axis
    cx2, cy2 = wit.center2
    tie = _occ_key(c)

    def side_count(t: Node) -> int:
        st = _sign(comp.signed_offset2(t))
        if st == 0:
            return 0
        return sum(1 for r in set(c.robots) if _sign(comp.signed_offset2(r)) == st)

    def cdist2(t: Node) -> int:
        return abs(2 * t[0] - cx2) + abs(2 * t[1] - cy2)

    return max(on_axis, key=lambda t: (side_count(t), -cdist2(t), _neg(tie(t))))


def target_meeting_node(c: Configuration) -> Node:
    """The unique meeting node the current configuration points at."""
    cls = classify(c)
    v = cls.value
    if v is ConfigClass.U:
        raise Ungatherable("no target for an ungatherable configuration")
    if v is ConfigClass.FINAL:
        raise ValueError("configuration is already final")
    if v is ConfigClass.I11:
        return ordering_O(c).highest()
    if v is ConfigClass.I13:
        cx2, cy2 = cls.witness.center2
        return (cx2 // 2, cy2 // 2)
    if v is ConfigClass.I12:
        try:
            return ordering_O_prime(c, cls.witness.axis).highest()
        except OrderingUndefined:
            return _sliver_target(c, cls.witness)
    if v in (ConfigClass.I31, ConfigClass.I32):
        raise NoGuardYet("symmetry must be broken before a target exists")
    # guarded classes
    counts = c.robot_counts()
    if len(counts) == 1:
        pos = c.robots[0]
        tie = _occ_key(c)
        return min(c.meeting_nodes, key=lambda m: (manhattan(pos, m), tie(m)))
    g = valid_guard(c, cls.witness)
    if g is None:
        raise NoGuardYet("no valid guard placed yet")
    return guarded_target(c, cls.witness, g)


def guard_designate(c: Configuration) -> Node:
    """The robot that guard selection moves, per the published rule."""
    rep = find_automorphisms(c.labeled_points())
    if rep.automorphisms:
        raise SymmetricConfiguration("guard designation needs an asymmetric configuration")
    cls = classify(c)
    if cls.value not in (ConfigClass.I21, ConfigClass.I22, ConfigClass.RUNNING_ASYM):
        raise ValueError(f"no guard designation in class {cls.value.value}")
    return _designate(c, cls.witness)


def _designate(c: Configuration, wit: Witness) -> Node:
    """Farthest-from-witness robot position to move next in selection.

    Positional on purpose: every observer's occupancy view ranks the same
    positions the same way, multiplicities included.  Ties resolve in the
    meeting-node frame so the choice cannot oscillate while the tied
    robots themselves drift.
    """
    cands = list(set(c.robots))
    dmax = max(witness_dist2(p, wit) for p in cands)
    far = [p for p in cands if witness_dist2(p, wit) == dmax]
    if len(far) == 1:
        return far[0]
    tie = _m_key(c)
    return max(far, key=lambda p: (tie(p), p))


def _resulting_string(c: Configuration, me: Node, dest: Node) -> str:
    robots = list(c.robots)
    robots.remove(me)
    robots.append(dest)
    moved = c.with_robots(robots)
    labels = occupancy_labels(moved)
    return max(s.symbols for s in max_scans(labels, mer(moved)))


def _choose_break_dest(
    c: Configuration, me: Node, cands: list[Node], toward: Node | None = None
) -> Node:
    """Destination for a symmetry-breaking move.

    The published rule leaves the side free, so the pick is biased toward
    useful outcomes: an empty destination first (no needless
    multiplicities), then one whose result is actually asymmetric, then
    progress toward the standing target (or failing that the nearest
    meeting node), then the largest resulting canonical string.
    Remaining ties are symmetry-equivalent.
    """
    occ = set(c.robots)

    def progress(dest: Node) -> int:
        if toward is not None:
            return manhattan(dest, toward)
        return min(manhattan(dest, m) for m in c.meeting_nodes)

    def key(dest: Node) -> tuple:
        return (
            dest in occ,
            _symmetric_after(c, me, dest),
            progress(dest),
            _neg_str(_resulting_string(c, me, dest)),
            dest,
        )

    return min(cands, key=key)


def _neg_str(s: str) -> tuple:
    return tuple(-ord(ch) for ch in s)


def _neighbors(n: Node) -> list[Node]:
    x, y = n
    return [(x + 1, y), (x - 1, y), (x, y + 1), (x, y - 1)]


def _u_view_evasion(c: Configuration, me: Node, clean: Isometry) -> Decision:
    """Move for a single robot whose own view looks ungatherable.

    A hidden multiplicity elsewhere may make the true configuration
    asymmetric (residents of a multiplicity never observe a clean
    symmetry, so only singles land here).  Against a reflection the robot
    slides parallel to the axis: perpendicular to the line joining it to
    its apparent mirror partner, so no exchange of places is possible and
    the very next view is asymmetric for everybody.  Against a rotation
    it steps toward the center; an occupied center is no longer clean.
    """
    nbrs = _neighbors(me)
    if clean.is_reflection:
        d0 = abs(clean.signed_offset2(me))
        pool = [n for n in nbrs if abs(clean.signed_offset2(n)) == d0]
    else:
        def d2(n: Node) -> int:
            return abs(2 * n[0] - clean.ax2) + abs(2 * n[1] - clean.ay2)

        pool = [n for n in nbrs if d2(n) < d2(me)]
    if not pool:
        pool = nbrs
    tie = _occ_key(c)
    return Decision(min(pool, key=lambda n: (_symmetric_after(c, me, n), tie(n), n)))


def decide(s: Snapshot) -> Decision:
    """Destination for the robot owning this snapshot (None = stay)."""
    c = s.config
    me = s.self_node
    cls = classify(c)
    counts = c.robot_counts()
    my_mult = counts[me] >= 2
    if cls.value is ConfigClass.U:
        if my_mult:
            return _STAY
        return _u_view_evasion(c, me, cls.witness.clean_iso)
    if cls.value is ConfigClass.FINAL:
        return _STAY
    phase = infer_phase(c)

    if phase is Phase.DONE:
        return _STAY

    if phase is Phase.MOVE_TO_TARGET:
        t = target_meeting_node(c)
        if me == t:
            return _STAY
        wit = cls.witness if _has_witness(cls.witness) else None
        return Decision(step_toward(me, t, c, witness=wit, avoid_axis=cls.witness.comp_axis))

    if phase is Phase.SYMMETRY_BREAK:
        # when a guard is already positionally recognizable (re-broken
        # symmetry during the multiplicity phase), steer the break toward
        # the standing target instead of an arbitrary side; the guard is
        # measured from the meeting-node witness, not the transient axis
        toward = None
        if cls.witness.center2 is not None:
            guard_wit = Witness(center2=cls.witness.center2)
        else:
            guard_wit = cls.witness
        g = valid_guard(c, guard_wit)
        if g is not None and g != me:
            toward = guarded_target(c, guard_wit, g)
        if cls.value is ConfigClass.I31:
            axis = cls.witness.axis
            on_axis = [p for p in counts if axis.fixes_node(p)]
            tie = _occ_key(c)
            mover = max(on_axis, key=lambda p: (tie(p), p))
            if me != mover:
                return _STAY
            cands = [n for n in _neighbors(me) if not axis.fixes_node(n)]
            return Decision(_choose_break_dest(c, me, cands, toward))
        cx2, cy2 = cls.witness.center2
        center = (cx2 // 2, cy2 // 2)
        if me != center:
            return _STAY
        return Decision(_choose_break_dest(c, me, _neighbors(me), toward))

    wit = cls.witness

    if phase is Phase.GUARD_SELECT:
        desig = _designate(c, wit)
        if me != desig:
            return _STAY
        if my_mult and me in c.meeting_nodes and len(counts) == 2:
            # endgame anchor: a clump already on a meeting node waits for
            # the lone remaining position to walk over
            return _STAY
        d0 = witness_dist2(me, wit)
        tied = sum(1 for p in counts if witness_dist2(p, wit) == d0) > 1
        d1 = max(witness_dist2(m, wit) for m in c.meeting_nodes)
        tie = _m_key(c)
        if tied and d0 > d1:
            # a tie beyond the meeting envelope resolves downward: the
            # descent is bounded, and the robot left behind becomes the
            # unique farthest guard; always climbing would let stale
            # moves of the tied partner escalate the race forever
            down = [n for n in _neighbors(me) if witness_dist2(n, wit) < d0]
            return Decision(
                min(down, key=lambda n: (_symmetric_after(c, me, n), tie(n), n))
            )
        away = [n for n in _neighbors(me) if witness_dist2(n, wit) > d0]
        return Decision(
            min(away, key=lambda n: (_symmetric_after(c, me, n), tie(n), n))
        )

    if phase is Phase.GUARD_PLACE:
        g = valid_guard(c, wit)
        if me != g:
            return _STAY
        corners = [k for k in guard_anchor_rect(c, me).distinct_corners() if k != me]
        if wit.axis is not None:
            side = [k for k in corners if wit.axis.signed_offset2(k) == wit.axis.signed_offset2(me)]
            if side:
                corners = side
        else:
            # center witness: only corners reachable without ever moving
            # closer to the center, or guard validity flickers away
            cx2, cy2 = wit.center2

            def monotone(k: Node) -> bool:
                ok_x = k[0] == me[0] or (k[0] - me[0]) * (2 * me[0] - cx2) > 0 or 2 * me[0] == cx2
                ok_y = k[1] == me[1] or (k[1] - me[1]) * (2 * me[1] - cy2) > 0 or 2 * me[1] == cy2
                return ok_x and ok_y

            quad = [k for k in corners if monotone(k)]
            if quad:
                corners = quad
        dmin = min(manhattan(me, k) for k in corners)
        best = [k for k in corners if manhattan(me, k) == dmin]
        if len(best) > 1:
            best.sort(key=lambda k: (_resulting_string(c, me, step_toward(me, k, c, witness=wit)),
                                     (-k[0], -k[1])), reverse=True)
        corner = best[0]
        dx = corner[0] - me[0]
        dy = corner[1] - me[1]
        cands = []
        if dx:
            cands.append((me[0] + (1 if dx > 0 else -1), me[1]))
        if dy:
            cands.append((me[0], me[1] + (1 if dy > 0 else -1)))
        d0 = witness_dist2(me, wit)
        safe = [n for n in cands if witness_dist2(n, wit) >= d0]
        tie = _occ_key(c)
        pool = safe or cands
        return Decision(
            min(
                pool,
                key=lambda n: (_symmetric_after(c, me, n), -witness_dist2(n, wit), tie(n), n),
            )
        )

    if phase is Phase.MAKE_MULTIPLICITY:
        g = valid_guard(c, wit)
        assert g is not None
        t = target_meeting_node(c)
        if me == g or me == t:
            return _STAY
        others = [p for p in counts if p != g and p != t]
        dmin = min(manhattan(p, t) for p in others)
        if manhattan(me, t) != dmin:
            return _STAY
        return Decision(step_toward(me, t, c, witness=wit, avoid_symmetry=True))

    assert phase is Phase.GUARD_MOVE
    # the position on the meeting node stays; the off-meeting position
    # (normally the lone guard, possibly a merged clump) walks over
    if me in c.meeting_nodes:
        return _STAY
    other = next(p for p in counts if p != me)
    return Decision(step_toward(me, other, c, witness=wit, avoid_symmetry=True))


decide = lru_cache(maxsize=1 << 16)(decide)
