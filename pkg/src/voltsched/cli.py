"""Command-line pipeline: schedule, compare, simulate.

Exit codes are a stable contract: 0 ok, 1 validation failure,
2 enumeration guard tripped, 3 I/O failure.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
import time
from pathlib import Path

from . import __version__
from .controller import riccati_backward
from .model import load_scenario, validate_scenario
from .scheduler import (
    Schedule,
    SearchSpaceTooLarge,
    brute_force_schedule,
    read_sequence,
    round_robin_schedule,
    schedule_objective,
    sliding_window_schedule,
    trace_series,
    write_schedule,
)
from .simulator import run_episode, run_monte_carlo, write_episode_csv, write_summary_csv

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_GUARD = 2
EXIT_IO = 3


class _Exit(Exception):
    def __init__(self, code: int, message: str):
        self.code = code
        self.message = message


def _load(path):
    try:
        scenario = load_scenario(path)
    except (OSError, json.JSONDecodeError) as exc:
        raise _Exit(EXIT_IO, f"cannot read scenario {path}: {exc}")
    except (KeyError, ValueError, TypeError) as exc:
        raise _Exit(EXIT_VALIDATION, f"malformed scenario {path}: {exc}")
    violations = validate_scenario(scenario)
    if violations:
        raise _Exit(EXIT_VALIDATION, "invalid scenario:\n" + "\n".join(f"  - {v}" for v in violations))
    return scenario


def _write_manifest(out_dir: Path, args, files, timings) -> None:
    manifest = {
        "tool_version": __version__,
        "scenario": str(args.scenario),
        "command": args.command,
        "method": getattr(args, "method", None),
        "seed": getattr(args, "seed", None),
        "runs": getattr(args, "runs", None),
        "output_dir": str(out_dir),
        "files": [str(f) for f in files],
        "timings_seconds": timings,
    }
    with open(out_dir / "manifest.json", "w") as f:
        json.dump(manifest, f, indent=2)
        f.write("\n")


def cmd_schedule(args) -> int:
    out_dir = Path(args.out)
    scenario = _load(args.scenario)
    if args.d is not None:
        if not 1 <= args.d <= scenario.horizon:
            raise _Exit(EXIT_VALIDATION, f"--d must be in 1..{scenario.horizon}, got {args.d}")
        scenario = dataclasses.replace(scenario, window=args.d)
    t0 = time.perf_counter()
    try:
        if args.method == "brute":
            sched = brute_force_schedule(scenario)
        elif args.method == "window":
            sched = sliding_window_schedule(scenario)
        else:
            sched = round_robin_schedule(scenario)
    except SearchSpaceTooLarge as exc:
        raise _Exit(EXIT_GUARD, str(exc))
    t_search = time.perf_counter() - t0
    try:
        out_dir.mkdir(parents=True, exist_ok=True)
        path = out_dir / f"schedule_{sched.method}.txt"
        sidecar = write_schedule(sched, path)
        _write_manifest(out_dir, args, [path, sidecar], {"search": t_search})
    except OSError as exc:
        raise _Exit(EXIT_IO, f"cannot write outputs: {exc}")
    print(f"objective: {sched.objective!r}")
    print(f"sequence: {' '.join(str(i) for i in sched.sequence)}")
    return EXIT_OK


def cmd_compare(args) -> int:
    out_dir = Path(args.out)
    scenario = _load(args.scenario)
    timings = {}
    t0 = time.perf_counter()
    try:
        window = sliding_window_schedule(scenario)
    except SearchSpaceTooLarge as exc:
        raise _Exit(EXIT_GUARD, str(exc))
    rr = round_robin_schedule(scenario)
    timings["schedule"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    summary = run_monte_carlo(
        scenario, [window, rr], runs=args.runs, base_seed=args.seed, initial_belief=args.prior
    )
    timings["monte_carlo"] = time.perf_counter() - t0

    gains = riccati_backward(scenario.plant, scenario.costs, scenario.horizon)
    files = []
    try:
        out_dir.mkdir(parents=True, exist_ok=True)
        for sched in (window, rr):
            rec = run_episode(scenario, sched, gains, seed=args.seed, initial_belief=args.prior)
            p = out_dir / f"episode_{sched.method}.csv"
            write_episode_csv(rec, p)
            files.append(p)
        summary_path = out_dir / "summary.csv"
        write_summary_csv(summary, summary_path)
        files.append(summary_path)
        _write_manifest(out_dir, args, files, timings)
    except OSError as exc:
        raise _Exit(EXIT_IO, f"cannot write outputs: {exc}")

    reduction = 100.0 * (1.0 - summary.total_cost["sliding_window"] / summary.total_cost["round_robin"])
    print(f"cost reduction: {reduction:.1f}%")
    return EXIT_OK


def cmd_simulate(args) -> int:
    out_dir = Path(args.out)
    scenario = _load(args.scenario)
    try:
        seq = read_sequence(args.schedule)
    except OSError as exc:
        raise _Exit(EXIT_IO, f"cannot read schedule {args.schedule}: {exc}")
    except ValueError as exc:
        raise _Exit(EXIT_VALIDATION, f"malformed schedule {args.schedule}: {exc}")
    if len(seq) != scenario.horizon:
        raise _Exit(
            EXIT_VALIDATION,
            f"schedule length {len(seq)} does not match scenario horizon {scenario.horizon}",
        )
    if any(not 1 <= i <= scenario.num_sensors for i in seq):
        raise _Exit(EXIT_VALIDATION, f"schedule contains indices outside 1..{scenario.num_sensors}")
    traces = trace_series(seq, scenario)
    sched = Schedule(
        sequence=seq, objective=sum(traces), method="custom", per_step_trace=tuple(traces)
    )
    t0 = time.perf_counter()
    gains = riccati_backward(scenario.plant, scenario.costs, scenario.horizon)
    rec = run_episode(scenario, sched, gains, seed=args.seed, initial_belief=args.prior)
    timing = time.perf_counter() - t0
    try:
        out_dir.mkdir(parents=True, exist_ok=True)
        path = out_dir / "episode.csv"
        write_episode_csv(rec, path)
        _write_manifest(out_dir, args, [path], {"simulate": timing})
    except OSError as exc:
        raise _Exit(EXIT_IO, f"cannot write outputs: {exc}")
    print(f"episode written: {path} (cumulative cost {rec.cum_cost[-1]!r})")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="voltsched", description="Sensor scheduling for voltage regulation"
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("schedule", help="compute a sensor querying sequence")
    p.add_argument("--scenario", required=True, help="scenario JSON file")
    p.add_argument("--method", required=True, choices=["brute", "window", "roundrobin"])
    p.add_argument("--d", type=int, default=None, help="sliding-window size (overrides scenario)")
    p.add_argument("--out", default=".", help="output directory")
    p.set_defaults(func=cmd_schedule)

    p = sub.add_parser("compare", help="sliding-window vs round-robin Monte Carlo comparison")
    p.add_argument("--scenario", required=True)
    p.add_argument("--runs", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument(
        "--prior",
        choices=["zero", "truth", "noisy"],
        default="zero",
        help="initial estimate: zero (deviation must be learned through sensors, "
        "the regime where scheduling matters), truth, or noisy (truth + N(0, P0))",
    )
    p.add_argument("--out", default=".")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("simulate", help="run one episode with a schedule file")
    p.add_argument("--scenario", required=True)
    p.add_argument("--schedule", required=True, help="whitespace-separated index list file")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--prior", choices=["zero", "truth", "noisy"], default="zero")
    p.add_argument("--out", default=".")
    p.set_defaults(func=cmd_simulate)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except _Exit as exc:
        print(exc.message, file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
