"""Execution drivers: FSYNC/SSYNC/ASYNC schedulers, traces, adversaries.

A run is a deterministic function of (initial configuration, policy,
step budget).  Moves are instantaneous single-edge relocations; the
ASYNC scheduler splits Look from Move so decisions are frozen while the
world changes, which models pending moves under stale snapshots.  A
robot's own position can only change through its own Move, so a frozen
destination stays adjacent to its owner.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from enum import Enum

from .classify import ConfigClass, classify
from .grid import Configuration, Node, is_final, manhattan, mer
from .robot import decide, make_snapshot
from .symmetry import Isometry, find_automorphisms

GENERATOR_NAME = "random.Random"


class NotPartitive(ValueError):
    """The configuration has no symmetry with a robot-free fixed set."""


class PartitivityViolation(AssertionError):
    """A symmetric-adversary round broke the partitive invariant."""


class SchedulerKind(Enum):
    FSYNC = "fsync"
    SSYNC = "ssync"
    ASYNC = "async"


class Outcome(Enum):
    GATHERED = "Gathered"
    STEP_LIMIT = "StepLimit"
    UNGATHERABLE = "Ungatherable"


@dataclass(frozen=True)
class SchedulerPolicy:
    kind: SchedulerKind
    seed: int = 0
    fairness_window: int = 64
    async_split: int = 8

    def __post_init__(self) -> None:
        if self.fairness_window < 1 or self.async_split < 1:
            raise ValueError("fairness_window and async_split must be positive")


@dataclass(frozen=True)
class TraceEvent:
    t: int
    robot: int
    phase: str  # "look" | "move"
    frm: Node
    to: Node


@dataclass(frozen=True)
class RunTrace:
    initial: Configuration
    policy: SchedulerPolicy
    events: tuple[TraceEvent, ...]
    total_moves: int
    outcome: Outcome
    gathered_at: Node | None

    def move_events(self) -> list[TraceEvent]:
        return [e for e in self.events if e.phase == "move"]


def default_max_steps(c0: Configuration, policy: SchedulerPolicy) -> int:
    box = mer(c0)
    d = max(box.p, box.q, 1)
    return 16 * d * len(c0.robots) * policy.fairness_window


def _decision_for(cfg: Configuration, pos: Node) -> Node | None:
    return decide(make_snapshot(cfg, pos)).move_to


def run(c0: Configuration, policy: SchedulerPolicy, max_steps: int | None = None) -> RunTrace:
    if classify(c0).value is ConfigClass.U:
        return RunTrace(c0, policy, (), 0, Outcome.UNGATHERABLE, None)
    if max_steps is None:
        max_steps = default_max_steps(c0, policy)
    positions = list(c0.robots)
    n = len(positions)
    rng = random.Random(policy.seed)
    events: list[TraceEvent] = []
    moves = 0
    t = 0

    def cfg_now() -> Configuration:
        return Configuration(tuple(positions), c0.meeting_nodes)

    def finish(outcome: Outcome, at: Node | None) -> RunTrace:
        return RunTrace(c0, policy, tuple(events), moves, outcome, at)

    if policy.kind in (SchedulerKind.FSYNC, SchedulerKind.SSYNC):
        last_act = [0] * n
        while t < max_steps:
            cfg = cfg_now()
            if is_final(cfg):
                return finish(Outcome.GATHERED, positions[0])
            if policy.kind is SchedulerKind.FSYNC:
                active = list(range(n))
            else:
                active = [i for i in range(n) if t - last_act[i] >= policy.fairness_window]
                active += [i for i in range(n) if i not in active and rng.random() < 0.5]
                if not active:
                    active = [rng.randrange(n)]
                active.sort()
            decisions = {i: _decision_for(cfg, positions[i]) for i in active}
            if policy.kind is SchedulerKind.FSYNC and all(d is None for d in decisions.values()):
                return finish(Outcome.STEP_LIMIT, None)  # oblivious deadlock
            for i in active:
                to = decisions[i] if decisions[i] is not None else positions[i]
                events.append(TraceEvent(t, i, "look", positions[i], to))
                t += 1
            for i in active:
                to = decisions[i] if decisions[i] is not None else positions[i]
                events.append(TraceEvent(t, i, "move", positions[i], to))
                if to != positions[i]:
                    moves += 1
                positions[i] = to
                last_act[i] = t
                t += 1
        return finish(Outcome.STEP_LIMIT, None)

    # ASYNC: interleave look/move per robot with bounded split and fairness
    pending: dict[int, Node | None] = {}
    pending_since: dict[int, int] = {}
    last_act = [0] * n
    while t < max_steps:
        cfg = cfg_now()
        if is_final(cfg) and all(d is None for d in pending.values()):
            return finish(Outcome.GATHERED, positions[0])
        forced_moves = sorted(
            i for i in pending if t - pending_since[i] >= policy.async_split
        )
        starved = sorted(
            i for i in range(n) if i not in pending and t - last_act[i] >= policy.fairness_window
        )
        if forced_moves:
            i = rng.choice(forced_moves)
        elif starved:
            i = rng.choice(starved)
        else:
            i = rng.randrange(n)
        if i in pending:
            dest = pending.pop(i)
            del pending_since[i]
            to = dest if dest is not None else positions[i]
            events.append(TraceEvent(t, i, "move", positions[i], to))
            if to != positions[i]:
                moves += 1
            positions[i] = to
            last_act[i] = t
            t += 1
        else:
            d = _decision_for(cfg, positions[i])
            pending[i] = d
            pending_since[i] = t
            events.append(TraceEvent(t, i, "look", positions[i], d if d is not None else positions[i]))
            t += 1
    return finish(Outcome.STEP_LIMIT, None)


def replay(trace: RunTrace) -> Configuration:
    """Re-apply the trace's move events to its initial configuration."""
    positions = list(trace.initial.robots)
    for e in trace.move_events():
        if positions[e.robot] != e.frm:
            raise ValueError(f"trace corrupt at t={e.t}: robot {e.robot} not at {e.frm}")
        if manhattan(e.frm, e.to) > 1:
            raise ValueError(f"trace corrupt at t={e.t}: move longer than one edge")
        positions[e.robot] = e.to
    return Configuration(tuple(positions), trace.initial.meeting_nodes)


def _nearest_meeting_step(cfg: Configuration, pos: Node) -> Node | None:
    """Generic fallback mover used only to drive adversary runs on U inputs."""
    if pos in cfg.meeting_nodes:
        return None
    m = min(cfg.meeting_nodes, key=lambda mm: (manhattan(pos, mm), mm))
    cands = []
    if m[0] != pos[0]:
        cands.append((pos[0] + (1 if m[0] > pos[0] else -1), pos[1]))
    if m[1] != pos[1]:
        cands.append((pos[0], pos[1] + (1 if m[1] > pos[1] else -1)))
    return min(cands)


def partitive_witness(c: Configuration) -> Isometry | None:
    """An automorphism whose fixed nodes carry no robot, if one exists."""
    rep = find_automorphisms(c.labeled_points())
    occupied = set(c.robots)
    for phi in rep.automorphisms:
        if not any(phi.fixes_node(r) for r in occupied):
            return phi
    return None


def run_symmetric_adversary(c0: Configuration, rounds: int = 100) -> RunTrace:
    """FSYNC execution where orbit mates receive orbit-mapped decisions.

    Models the adversary of the impossibility argument: indistinguishable
    robots in one orbit are steered to symmetric destinations.  After
    every round the witness automorphism must still preserve the
    configuration; a failure raises PartitivityViolation.
    """
    phi = partitive_witness(c0)
    if phi is None:
        raise NotPartitive("no automorphism with a robot-free fixed node set")
    positions = list(c0.robots)
    events: list[TraceEvent] = []
    moves = 0
    t = 0
    policy = SchedulerPolicy(SchedulerKind.FSYNC, seed=0)
    for _ in range(rounds):
        cfg = Configuration(tuple(positions), c0.meeting_nodes)
        dest_of: dict[Node, Node] = {}
        for pos in set(positions):
            if pos in dest_of:
                continue
            orbit = [pos]
            w = phi.apply(pos)
            while w != pos:
                orbit.append(w)
                w = phi.apply(w)
            rep_pos = min(orbit)
            if classify(cfg).value is ConfigClass.U:
                d = _nearest_meeting_step(cfg, rep_pos)
            else:
                d = _decision_for(cfg, rep_pos)
            dest = d if d is not None else rep_pos
            p, q = rep_pos, dest
            for _ in orbit:
                dest_of[p] = q
                p = phi.apply(p)
                q = phi.apply(q)
        for i, pos in enumerate(positions):
            to = dest_of[pos]
            events.append(TraceEvent(t, i, "move", pos, to))
            if to != pos:
                moves += 1
            t += 1
        positions = [dest_of[pos] for pos in positions]
        new_cfg = Configuration(tuple(positions), c0.meeting_nodes)
        labeled = new_cfg.labeled_points()
        mapped = {phi.apply(v): l for v, l in labeled.items()}
        if mapped != labeled:
            raise PartitivityViolation(
                f"{phi.describe()} stopped preserving the configuration after round {t}"
            )
    return RunTrace(c0, policy, tuple(events), moves, Outcome.STEP_LIMIT, None)


def adversarial_search(
    c0: Configuration, budget: int, base_seed: int = 0, max_steps: int | None = None
) -> RunTrace:
    """Randomized search over ASYNC schedules for the costliest run.

    Invariant checking is the caller's business (see ``checks``); this
    returns the trace with the most moves, starting from the FSYNC
    baseline at budget zero.
    """
    worst = run(c0, SchedulerPolicy(SchedulerKind.FSYNC, seed=base_seed), max_steps)
    rng = random.Random(base_seed)
    for _ in range(max(0, budget)):
        pol = SchedulerPolicy(
            SchedulerKind.ASYNC,
            seed=rng.randrange(1 << 30),
            fairness_window=rng.choice([16, 32, 64]),
            async_split=rng.choice([1, 2, 4, 8, 16]),
        )
        tr = run(c0, pol, max_steps)
        if tr.total_moves > worst.total_moves:
            worst = tr
    return worst
