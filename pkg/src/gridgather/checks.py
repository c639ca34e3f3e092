"""Trace invariant validation.

Replays a trace configuration by configuration and checks the safety
properties every correct run must satisfy: robot conservation, single
edge moves, never entering the ungatherable set, target invariance
inside target-driven phases, a stable unique guard from its first
recognition to finalization, no phase regression from finalization back
to guard selection, and strict progress of symmetry breaking.
"""

from __future__ import annotations

from dataclasses import dataclass

from .classify import (
    ConfigClass,
    Phase,
    Witness,
    classify,
    infer_phase,
    valid_guard,
    witness_dist2,
)
from .grid import Configuration, manhattan
from .robot import target_meeting_node
from .scheduler import RunTrace


class InvariantViolation(AssertionError):
    def __init__(self, messages: list[str], trace: RunTrace):
        super().__init__("; ".join(messages))
        self.messages = messages
        self.trace = trace


@dataclass
class TraceReport:
    violations: list[str]

    @property
    def ok(self) -> bool:
        return not self.violations


def _witness_fixed_count(c: Configuration, wit: Witness) -> int:
    """Robot positions on the symmetry witness (axis nodes or center)."""
    positions = set(c.robots)
    if wit.axis is not None:
        return sum(1 for p in positions if wit.axis.fixes_node(p))
    if wit.center2 is not None:
        cx2, cy2 = wit.center2
        if cx2 % 2 == 0 and cy2 % 2 == 0:
            return 1 if (cx2 // 2, cy2 // 2) in positions else 0
    return 0


def validate_trace(trace: RunTrace, max_reports: int = 8) -> TraceReport:
    violations: list[str] = []

    def report(msg: str) -> None:
        if len(violations) < max_reports:
            violations.append(msg)

    n = len(trace.initial.robots)
    positions = list(trace.initial.robots)
    steps: list[tuple[Configuration, tuple]] = [(trace.initial, tuple(positions))]
    for e in trace.move_events():
        if manhattan(e.frm, e.to) > 1:
            report(f"t={e.t}: move longer than one edge")
        if positions[e.robot] != e.frm:
            report(f"t={e.t}: robot {e.robot} moved from a node it did not occupy")
        if e.to == e.frm:
            continue  # null movement, configuration unchanged
        positions[e.robot] = e.to
        cfg = Configuration(tuple(positions), trace.initial.meeting_nodes)
        if len(cfg.robots) != n:
            report(f"t={e.t}: robot count not conserved")
        steps.append((cfg, tuple(positions)))

    guard_id: int | None = None
    final_phase_seen = False
    prev_phase: Phase | None = None
    prev_target = None
    prev_break_count: int | None = None

    for k, (c, ids) in enumerate(steps):
        cls = classify(c)
        if cls.value is ConfigClass.U:
            report(f"config {k}: run entered the ungatherable set")
            break
        if cls.value is ConfigClass.FINAL:
            break
        phase = infer_phase(c)

        # (a) target invariance inside target-driven phases; the
        # rotational-M single-axis extension of I12 has a robot-dependent
        # side rule, so only orderings the published lemmas cover bind here
        sliver = cls.value is ConfigClass.I12 and cls.witness.comp_axis is not None
        if phase in (Phase.MOVE_TO_TARGET, Phase.MAKE_MULTIPLICITY) and not sliver:
            t = target_meeting_node(c)
            if prev_phase is phase and prev_target is not None and t != prev_target:
                report(f"config {k}: target changed within phase {phase.value}")
            prev_target = t
        else:
            prev_target = None

        # (b) guard uniqueness and identity stability
        if phase in (Phase.GUARD_SELECT, Phase.GUARD_PLACE, Phase.MAKE_MULTIPLICITY):
            g = valid_guard(c, cls.witness)
            if g is not None:
                gd = witness_dist2(g, cls.witness)
                counts = c.robot_counts()
                if any(p != g and witness_dist2(p, cls.witness) >= gd for p in counts):
                    report(f"config {k}: guard is not the unique strict farthest robot")
                owners = [i for i, p in enumerate(ids) if p == g]
                if len(owners) == 1:
                    if guard_id is not None and owners[0] != guard_id:
                        report(f"config {k}: guard identity changed")
                    guard_id = owners[0]

        # (c) no regression from finalization back to guard selection
        if phase is Phase.GUARD_MOVE:
            final_phase_seen = True
        if final_phase_seen and phase is Phase.GUARD_SELECT:
            report(f"config {k}: phase regressed from finalization to guard selection")

        # (d) symmetry breaking strictly shrinks the occupied witness set
        if prev_phase is Phase.SYMMETRY_BREAK and prev_break_count is not None:
            if cls.value in (ConfigClass.I31, ConfigClass.I32):
                after = _witness_fixed_count(c, cls.witness)
                if after >= prev_break_count:
                    report(f"config {k}: symmetry breaking made no progress")
        prev_break_count = (
            _witness_fixed_count(c, cls.witness) if phase is Phase.SYMMETRY_BREAK else None
        )

        prev_phase = phase

    return TraceReport(violations)


def assert_trace_ok(trace: RunTrace) -> None:
    rep = validate_trace(trace)
    if not rep.ok:
        raise InvariantViolation(rep.violations, trace)
