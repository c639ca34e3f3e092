"""Exhaustive exploration of asynchronous interleavings at small scope.

State = per-robot (position, frozen decision or none).  Actions: a robot
without a pending decision looks (its decision is computed and frozen),
a robot with one moves.  Null cycles are quotiented away: a robot whose
decision would be "stay" contributes no action, because a null
look/move pair never changes anything any other robot can observe.

Because looks and moves interleave freely, the reachable graph covers
every FSYNC/SSYNC/ASYNC schedule.  Gathering under every fair schedule
is equivalent to: the quotient graph is acyclic, has no dead ends except
final configurations, and every leaf is final.
"""

from __future__ import annotations

from dataclasses import dataclass

from .classify import ConfigClass, Ungatherable, classify
from .grid import Configuration, Node, is_final
from .robot import decide, make_snapshot

State = tuple[tuple[Node, Node | None], ...]


def _state_key(entry: tuple[Node, Node | None]) -> tuple:
    pos, pend = entry
    return (pos, pend is not None, pend or (0, 0))


@dataclass
class ExploreReport:
    ok: bool
    states: int
    reason: str = ""
    path: tuple[State, ...] = ()

    def __bool__(self) -> bool:
        return self.ok


def _successors(state: State, meeting: frozenset[Node]) -> list[State]:
    positions = tuple(p for p, _ in state)
    cfg = Configuration(positions, meeting)
    succs: list[State] = []
    seen_groups: set[tuple[Node, Node | None]] = set()
    for i, (pos, pend) in enumerate(state):
        group = (pos, pend)
        if group in seen_groups:
            continue
        seen_groups.add(group)
        if pend is not None:
            nxt = state[:i] + ((pend, None),) + state[i + 1 :]
        else:
            d = decide(make_snapshot(cfg, pos)).move_to
            if d is None:
                continue
            nxt = state[:i] + ((pos, d),) + state[i + 1 :]
        succs.append(tuple(sorted(nxt, key=_state_key)))
    return succs


def explore_interleavings(c0: Configuration, max_states: int = 500_000) -> ExploreReport:
    """Check that every fair asynchronous schedule gathers.

    Iterative DFS with cycle detection; reports the first livelock,
    deadlock, mid-run ungatherable classification or budget overrun.
    """
    meeting = c0.meeting_nodes

    def truly_ungatherable(state: State) -> bool:
        cfg = Configuration(tuple(p for p, _ in state), meeting)
        return classify(cfg).value is ConfigClass.U

    start: State = tuple(sorted(((r, None) for r in c0.robots), key=_state_key))
    WHITE, GRAY, BLACK = 0, 1, 2
    color: dict[State, int] = {start: GRAY}
    if truly_ungatherable(start):
        return ExploreReport(False, 1, "initial state classifies as ungatherable", (start,))
    try:
        stack: list[tuple[State, list[State], int]] = [
            (start, _successors(start, meeting), 0)
        ]
    except Ungatherable:
        return ExploreReport(False, 1, "initial state classifies as ungatherable", (start,))

    def dfs_path() -> tuple[State, ...]:
        return tuple(entry[0] for entry in stack)

    while stack:
        state, succs, idx = stack.pop()
        if idx == 0 and not succs:
            positions = tuple(p for p, _ in state)
            if not is_final(Configuration(positions, meeting)):
                return ExploreReport(
                    False, len(color), f"deadlock at {state}", dfs_path() + (state,)
                )
        if idx < len(succs):
            stack.append((state, succs, idx + 1))
            nxt = succs[idx]
            c = color.get(nxt, WHITE)
            if c == GRAY:
                return ExploreReport(
                    False, len(color), f"livelock cycle through {nxt}", dfs_path() + (nxt,)
                )
            if c == WHITE:
                if len(color) >= max_states:
                    return ExploreReport(False, len(color), "state budget exceeded", ())
                color[nxt] = GRAY
                if truly_ungatherable(nxt):
                    return ExploreReport(
                        False,
                        len(color),
                        f"ungatherable state reached: {nxt}",
                        dfs_path() + (nxt,),
                    )
                try:
                    stack.append((nxt, _successors(nxt, meeting), 0))
                except Ungatherable:
                    return ExploreReport(
                        False,
                        len(color),
                        f"ungatherable state reached: {nxt}",
                        dfs_path() + (nxt,),
                    )
        else:
            color[state] = BLACK
    return ExploreReport(True, len(color))
