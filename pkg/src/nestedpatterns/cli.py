"""Command-line entry point: ``nested-patterns <command>``."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Callable, TextIO

from .counter import build_counter, run_counter
from .dynamics import Trace, run
from .economy import compare
from .ensemble import EnsembleConfig, SignalWeights, build_ensemble
from .errors import CounterTimeout, NestedPatternError
from .io import emit_trace_csv, parse_config, read_trace_csv, render_strength_plot, trace_to_json

# Relative pattern strengths for the 5 x 5 ensemble, delta = 0.5.
# neuron id -> values at steps 3, 4, 5
TABLE1_STEPS = (3, 4, 5)
TABLE1 = {
    1: (7.5, 5.0, 0.0),
    2: (7.5, 5.0, 0.0),
    3: (7.5, 5.0, 0.0),
    4: (7.5, 5.0, 0.0),
    5: (7.5, 5.0, 0.0),
    6: (7.5, 7.5, 5.0),
    7: (7.5, 7.5, 5.0),
    8: (7.5, 7.5, 5.0),
    9: (7.5, 7.5, 5.0),
    10: (7.5, 7.5, 5.0),
    11: (5.0, 7.5, 7.5),
    12: (5.0, 7.5, 7.5),
    13: (5.0, 7.5, 7.5),
    14: (5.0, 7.5, 7.5),
    15: (5.0, 7.5, 7.5),
    16: (0.0, 5.0, 7.5),
    17: (0.0, 5.0, 7.5),
    18: (0.0, 5.0, 7.5),
    19: (0.0, 5.0, 7.5),
    20: (0.0, 5.0, 7.5),
    21: (0.0, 0.0, 5.0),
    22: (0.0, 0.0, 5.0),
    23: (0.0, 0.0, 5.0),
    24: (0.0, 0.0, 5.0),
    25: (0.0, 0.0, 5.0),
}
TABLE1_CONFIG = build_ensemble(5, 5, SignalWeights(delta=0.5), steps=5)
TABLE1_TOL = 1e-9


def cmd_reproduce_table1(runner: Callable[[EnsembleConfig], Trace] = run, out: TextIO | None = None) -> int:
    """Exit 0 when every Table 1 cell matches, 1 on any mismatch, 2 on error."""
    out = out if out is not None else sys.stdout
    try:
        trace = runner(TABLE1_CONFIG)
        got = {(r.neuron_id, r.step): r.value for r in trace.rows}
        mismatches = []
        for nid, expected in TABLE1.items():
            for t, want in zip(TABLE1_STEPS, expected):
                have = got[(nid, t)]
                if abs(have - want) > TABLE1_TOL:
                    mismatches.append((nid, t, want, have))
    except Exception as exc:  # noqa: BLE001 - any engine failure maps to exit 2
        print(f"error: {type(exc).__name__}: {exc}", file=out)
        return 2
    total = len(TABLE1) * len(TABLE1_STEPS)
    for nid, t, want, have in mismatches:
        print(f"neuron {nid:>2} t={t}: expected {want!r}, got {have!r} (diff {have - want:+g})", file=out)
    print(f"{total - len(mismatches)}/{total} cells match", file=out)
    return 0 if not mismatches else 1


def _simulate(args) -> int:
    spec = parse_config(Path(args.config).read_text())
    trace = spec.run()
    csv_text = emit_trace_csv(trace)
    if args.out:
        Path(args.out).write_text(csv_text)
    else:
        sys.stdout.write(csv_text)
    if args.json:
        Path(args.json).write_text(trace_to_json(trace))
    if args.svg:
        Path(args.svg).write_text(render_strength_plot(trace))
    return 0


def _counter(args) -> int:
    network = build_counter(args.levels, args.pattern_size, SignalWeights(delta=args.delta))
    try:
        log = run_counter(network, args.max_steps)
    except CounterTimeout as exc:
        print(json.dumps(exc.log.as_dict(), indent=1))
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(json.dumps(log.as_dict(), indent=1))
    return 0


def _economy(args) -> int:
    radii = [float(r) for r in args.radii.split(",") if r.strip()]
    reports = compare(radii, args.nodes, args.separation)
    doc = {mode: report.as_dict() for mode, report in reports.items()}
    doc["inward_cheaper"] = reports["inward"].total < reports["outward"].total
    print(json.dumps(doc, indent=1))
    return 0


def _plot(args) -> int:
    trace = read_trace_csv(Path(args.inp).read_text())
    Path(args.out).write_text(render_strength_plot(trace))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="nested-patterns",
                                     description="Nested firing-pattern ensemble simulator.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="run a config file and write the trace")
    p.add_argument("--config", required=True)
    p.add_argument("--out", help="CSV trace path (default: stdout)")
    p.add_argument("--json", help="also write a JSON trace")
    p.add_argument("--svg", help="also write a strength plot")
    p.set_defaults(func=_simulate)

    p = sub.add_parser("reproduce-table1", help="check the engine against the embedded 5x5 table")
    p.set_defaults(func=lambda args: cmd_reproduce_table1())

    p = sub.add_parser("counter", help="run the on/off-switch counter")
    p.add_argument("--levels", type=int, required=True)
    p.add_argument("--pattern-size", type=int, required=True)
    p.add_argument("--max-steps", type=int, default=64)
    p.add_argument("--delta", type=float, default=0.5)
    p.set_defaults(func=_counter)

    p = sub.add_parser("economy", help="compare inward and outward wiring cost")
    p.add_argument("--radii", required=True, help="comma-separated, strictly decreasing")
    p.add_argument("--nodes", type=int, required=True)
    p.add_argument("--separation", type=float, required=True)
    p.set_defaults(func=_economy)

    p = sub.add_parser("plot", help="render a CSV trace as SVG")
    p.add_argument("--in", dest="inp", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_plot)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (NestedPatternError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
