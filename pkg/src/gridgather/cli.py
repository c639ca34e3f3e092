"""Command-line harness: classify | run | gen | bench | render.

Exit codes for ``run``: 0 gathered, 2 ungatherable, 3 step limit.
GRIDGATHER_SEED overrides the default seed of any command.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from .classify import ConfigClass, classify
from .generate import CLASS_NAMES, InfeasibleClassParams, generate
from .grid import Configuration, mer
from .io import ConfigFormatError, config_to_dict, load_config, save_config, write_trace
from .render import render_ascii
from .scheduler import Outcome, RunTrace, SchedulerKind, SchedulerPolicy, run
from .strings import NoUniqueKeyCorner, key_corner, leading_corners


def _default_seed() -> int:
    env = os.environ.get("GRIDGATHER_SEED")
    return int(env) if env else 0


def cmd_classify(args: argparse.Namespace) -> int:
    c = load_config(args.path)
    cls = classify(c)
    print(f"class={cls.value.value}")
    w = cls.witness
    if w.clean_iso is not None:
        print(f"ungatherable witness: {w.clean_iso.describe()}")
    if w.axis is not None:
        print(f"axis: {w.axis.describe()}")
    if w.center2 is not None:
        cx2, cy2 = w.center2
        print(f"center: ({cx2 / 2:g},{cy2 / 2:g})")
    try:
        corner, s = key_corner(c)
        print(f"key corner: {corner} string={s.symbols}")
    except NoUniqueKeyCorner as e:
        print(f"key corner: none (tied corners {list(e.corners)})")
    leads = leading_corners(c)
    print(f"leading corners: {[corner for corner, _ in leads]}")
    return 0


def cmd_run(args: argparse.Namespace) -> int:
    c = load_config(args.path)
    policy = SchedulerPolicy(
        SchedulerKind(args.scheduler),
        seed=args.seed,
        fairness_window=args.fairness_window,
        async_split=args.async_split,
    )
    trace = run(c, policy, args.max_steps)
    if args.trace:
        write_trace(trace, args.trace)
    if trace.outcome is Outcome.GATHERED:
        x, y = trace.gathered_at
        print(f"Gathered at ({x},{y}), moves={trace.total_moves}, events={len(trace.events)}")
        return 0
    if trace.outcome is Outcome.UNGATHERABLE:
        print("Ungatherable")
        return 2
    print(f"StepLimit after {len(trace.events)} events, moves={trace.total_moves}")
    return 3


def cmd_gen(args: argparse.Namespace) -> int:
    outdir = Path(args.out) if args.out else None
    if outdir:
        outdir.mkdir(parents=True, exist_ok=True)
    for i in range(args.count):
        try:
            c = generate(args.cls, args.n, args.d, seed=args.seed + i)
        except InfeasibleClassParams as e:
            print(f"InfeasibleClassParams: {e}", file=sys.stderr)
            return 1
        name = f"{args.cls.lower()}_n{args.n}_d{args.d}_s{args.seed + i}"
        if outdir:
            save_config(c, outdir / f"{name}.json", name=name)
            print(outdir / f"{name}.json")
        else:
            import json

            print(json.dumps(config_to_dict(c, name)))
    return 0


def _line_family(n: int) -> Configuration:
    return Configuration(tuple((i, 0) for i in range(1, n + 1)), frozenset({(0, 0)}))


def cmd_bench(args: argparse.Namespace) -> int:
    scheds = (
        [SchedulerKind(s) for s in args.schedulers.split(",") if s]
        if args.schedulers
        else list(SchedulerKind)
    )
    rows: list[tuple[str, str, str, int, int, int, float]] = []
    failures: list[str] = []

    def add_run(name: str, c: Configuration, kind: SchedulerKind) -> RunTrace:
        policy = SchedulerPolicy(kind, seed=args.seed)
        tr = run(c, policy)
        box = mer(c)
        d = max(box.p, box.q, 1)
        n = len(c.robots)
        ratio = tr.total_moves / (d * n)
        rows.append((name, kind.value, tr.outcome.value, tr.total_moves, d, n, ratio))
        if tr.outcome is Outcome.STEP_LIMIT:
            failures.append(f"{name}/{kind.value}: step limit")
        return tr

    corpus = sorted(Path(args.corpus).glob("*.json")) if args.corpus else []
    for path in corpus:
        c = load_config(path)
        for kind in scheds:
            add_run(path.stem, c, kind)

    for n in range(2, args.line_max + 1):
        c = _line_family(n)
        tr = add_run(f"line_n{n}", c, SchedulerKind.FSYNC)
        expect = n * (n + 1) // 2
        if tr.total_moves != expect:
            failures.append(f"line_n{n}: moves {tr.total_moves} != {expect}")

    print(f"{'config':24} {'sched':6} {'outcome':12} {'moves':>6} {'D':>4} {'n':>4} {'moves/(D*n)':>12}")
    for name, kind, outcome, moves, d, n, ratio in rows:
        print(f"{name:24} {kind:6} {outcome:12} {moves:6d} {d:4d} {n:4d} {ratio:12.3f}")
    gatherable = [r for r in rows if r[2] == Outcome.GATHERED.value]
    max_ratio = max((r[6] for r in gatherable), default=0.0)
    print(f"summary: runs={len(rows)} max_ratio={max_ratio:.3f} failures={len(failures)}")
    for f in failures:
        print(f"  FAIL {f}")
    return 1 if failures else 0


def cmd_render(args: argparse.Namespace) -> int:
    c = load_config(args.path)
    print(render_ascii(c, margin=args.margin))
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="gridgather",
        description="Gathering over meeting nodes on the infinite grid: "
        "classifier, simulator and benchmark harness.",
    )
    sub = parser.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("classify", help="classify a configuration file")
    p.add_argument("path")
    p.set_defaults(fn=cmd_classify)

    p = sub.add_parser("run", help="simulate a run to completion")
    p.add_argument("path")
    p.add_argument("--scheduler", choices=[k.value for k in SchedulerKind], default="async")
    p.add_argument("--seed", type=int, default=_default_seed())
    p.add_argument("--max-steps", type=int, default=None)
    p.add_argument("--fairness-window", type=int, default=64)
    p.add_argument("--async-split", type=int, default=8)
    p.add_argument("--trace", default=None, help="write a JSONL trace here")
    p.set_defaults(fn=cmd_run)

    p = sub.add_parser("gen", help="generate configurations of a class")
    p.add_argument("--class", dest="cls", required=True, choices=CLASS_NAMES)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, default=10)
    p.add_argument("--seed", type=int, default=_default_seed())
    p.add_argument("--count", type=int, default=1)
    p.add_argument("--out", default=None, help="directory for generated files")
    p.set_defaults(fn=cmd_gen)

    p = sub.add_parser("bench", help="run a corpus and report the move bound")
    p.add_argument("corpus", nargs="?", default=None)
    p.add_argument("--schedulers", default="", help="comma list: fsync,ssync,async")
    p.add_argument("--seed", type=int, default=_default_seed())
    p.add_argument("--line-max", type=int, default=50)
    p.set_defaults(fn=cmd_bench)

    p = sub.add_parser("render", help="ASCII-render a configuration")
    p.add_argument("path")
    p.add_argument("--margin", type=int, default=0)
    p.set_defaults(fn=cmd_render)

    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except ConfigFormatError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
