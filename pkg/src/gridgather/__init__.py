"""Gathering over meeting nodes on the infinite grid.

A deterministic simulator, classifier and verification harness for
oblivious look-compute-move robots that must gather on one of a set of
pre-marked meeting nodes under adversarial asynchronous scheduling.
"""

from .classify import (
    Classification,
    ConfigClass,
    Phase,
    Ungatherable,
    classify,
    infer_phase,
    valid_guard,
)
from .grid import (
    Configuration,
    Node,
    NodeLabel,
    Rect,
    distinct_robot_positions,
    is_final,
    manhattan,
    mer,
    mer_f,
)
from .robot import Decision, Snapshot, decide, guard_designate, make_snapshot, step_toward, target_meeting_node
from .scheduler import (
    Outcome,
    RunTrace,
    SchedulerKind,
    SchedulerPolicy,
    adversarial_search,
    replay,
    run,
    run_symmetric_adversary,
)
from .symmetry import (
    Isometry,
    IsoKind,
    OrbitPartition,
    SymmetryReport,
    find_automorphisms,
    is_partitive,
    is_ungatherable,
    orbits,
)

__all__ = [
    "Classification",
    "ConfigClass",
    "Configuration",
    "Decision",
    "Isometry",
    "IsoKind",
    "Node",
    "NodeLabel",
    "OrbitPartition",
    "Outcome",
    "Phase",
    "Rect",
    "RunTrace",
    "SchedulerKind",
    "SchedulerPolicy",
    "Snapshot",
    "SymmetryReport",
    "Ungatherable",
    "adversarial_search",
    "classify",
    "decide",
    "distinct_robot_positions",
    "find_automorphisms",
    "guard_designate",
    "infer_phase",
    "is_final",
    "is_partitive",
    "is_ungatherable",
    "make_snapshot",
    "manhattan",
    "mer",
    "mer_f",
    "orbits",
    "replay",
    "run",
    "run_symmetric_adversary",
    "step_toward",
    "target_meeting_node",
    "valid_guard",
]

__version__ = "0.1.0"
