"""Configuration files (JSON) and run traces (JSONL).

Config file: {"robots": [[x, y], ...], "meeting_nodes": [[x, y], ...],
"name": optional}.  Duplicate robot entries are rejected (configurations
on disk are initial configurations).

Trace file: one JSON object per line; a header carrying seed, policy and
generator name, then {"t", "r", "ph", "from", "to"} events.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .grid import Configuration
from .scheduler import (
    GENERATOR_NAME,
    Outcome,
    RunTrace,
    SchedulerKind,
    SchedulerPolicy,
    TraceEvent,
)


class ConfigFormatError(ValueError):
    pass


def _parse_pairs(raw: Any, field: str) -> list[tuple[int, int]]:
    if not isinstance(raw, list):
        raise ConfigFormatError(f"field {field!r} must be a list of [x, y] pairs")
    out = []
    for i, item in enumerate(raw):
        if (
            not isinstance(item, (list, tuple))
            or len(item) != 2
            or not all(isinstance(v, int) and not isinstance(v, bool) for v in item)
        ):
            raise ConfigFormatError(f"{field}[{i}] must be a pair of integers, got {item!r}")
        out.append((item[0], item[1]))
    return out


def config_from_dict(doc: dict) -> Configuration:
    if not isinstance(doc, dict):
        raise ConfigFormatError("configuration document must be a JSON object")
    for field in ("robots", "meeting_nodes"):
        if field not in doc:
            raise ConfigFormatError(f"missing field {field!r}")
    robots = _parse_pairs(doc["robots"], "robots")
    meeting = _parse_pairs(doc["meeting_nodes"], "meeting_nodes")
    if len(set(robots)) != len(robots):
        dupes = sorted({r for r in robots if robots.count(r) > 1})
        raise ConfigFormatError(f"duplicate robot entries {dupes}")
    if len(set(meeting)) != len(meeting):
        raise ConfigFormatError("duplicate meeting-node entries")
    if not robots:
        raise ConfigFormatError("need at least one robot")
    if not meeting:
        raise ConfigFormatError("need at least one meeting node")
    return Configuration(tuple(robots), frozenset(meeting))


def config_to_dict(c: Configuration, name: str | None = None) -> dict:
    doc: dict[str, Any] = {
        "robots": [list(r) for r in c.robots],
        "meeting_nodes": [list(m) for m in sorted(c.meeting_nodes)],
    }
    if name:
        doc["name"] = name
    return doc


def load_config(path: str | Path) -> Configuration:
    p = Path(path)
    try:
        doc = json.loads(p.read_text())
    except json.JSONDecodeError as e:
        raise ConfigFormatError(f"{p}: invalid JSON at line {e.lineno}, column {e.colno}: {e.msg}")
    try:
        return config_from_dict(doc)
    except ConfigFormatError as e:
        raise ConfigFormatError(f"{p}: {e}")


def save_config(c: Configuration, path: str | Path, name: str | None = None) -> None:
    Path(path).write_text(json.dumps(config_to_dict(c, name), indent=2) + "\n")


def write_trace(trace: RunTrace, path: str | Path) -> None:
    lines = [
        json.dumps(
            {
                "policy": trace.policy.kind.value,
                "seed": trace.policy.seed,
                "fairness_window": trace.policy.fairness_window,
                "async_split": trace.policy.async_split,
                "generator": GENERATOR_NAME,
                "outcome": trace.outcome.value,
                "total_moves": trace.total_moves,
                "config": config_to_dict(trace.initial),
            }
        )
    ]
    for e in trace.events:
        lines.append(
            json.dumps(
                {"t": e.t, "r": e.robot, "ph": e.phase, "from": list(e.frm), "to": list(e.to)}
            )
        )
    Path(path).write_text("\n".join(lines) + "\n")


def read_trace(path: str | Path) -> RunTrace:
    lines = Path(path).read_text().splitlines()
    if not lines:
        raise ConfigFormatError(f"{path}: empty trace")
    header = json.loads(lines[0])
    policy = SchedulerPolicy(
        SchedulerKind(header["policy"]),
        seed=header["seed"],
        fairness_window=header["fairness_window"],
        async_split=header["async_split"],
    )
    initial = config_from_dict(header["config"])
    events = []
    for line in lines[1:]:
        d = json.loads(line)
        events.append(
            TraceEvent(d["t"], d["r"], d["ph"], tuple(d["from"]), tuple(d["to"]))
        )
    outcome = Outcome(header["outcome"])
    gathered = None
    if outcome is Outcome.GATHERED and events:
        gathered = events[-1].to
    return RunTrace(initial, policy, tuple(events), header["total_moves"], outcome, gathered)
