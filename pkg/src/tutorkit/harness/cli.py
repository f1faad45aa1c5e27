"""Command line for scripted runs and log statistics.

Subcommands:
  run      play a scenario file and write events.jsonl + transcript.txt
  stats    print the statistics of one event log
  compare  print a side-by-side table for two or more event logs
"""

from __future__ import annotations

import argparse
import sys

from pathlib import Path

from tutorkit.errors import TutorError
from tutorkit.harness.scenario import Scenario, run_scenario
from tutorkit.harness.stats import compare_variants, compute_stats, format_stats
from tutorkit.orchestrator.events import CorruptLogError, read_events


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tutorkit-harness",
        description="Run scripted tutoring scenarios and compare their logs.",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    run = commands.add_parser("run", help="play a scenario to completion")
    run.add_argument("--scenario", required=True, type=Path,
                     help="scenario JSON file")
    run.add_argument("--out", required=True, type=Path,
                     help="directory for events.jsonl and transcript.txt")

    stats = commands.add_parser("stats", help="statistics for one event log")
    stats.add_argument("--log", required=True, type=Path,
                       help="events.jsonl file")

    compare = commands.add_parser(
        "compare", help="compare statistics across event logs"
    )
    compare.add_argument("--logs", required=True,
                         help="comma-separated events.jsonl files")
    compare.add_argument("--format", choices=("text", "tsv"), default="text",
                         help="table format (default: text)")
    return parser


def _cmd_run(args) -> int:
    scenario = Scenario.load(args.scenario)
    result = run_scenario(scenario, args.out)
    state = result.state
    finish = state.finish_reason or "still active"
    print(f"session {state.session_id}: {state.round} rounds, {finish}")
    print(f"events: {result.events_path}")
    print(f"transcript: {result.transcript_path}")
    return 0


def _cmd_stats(args) -> int:
    stats = compute_stats(read_events(args.log))
    sys.stdout.write(format_stats(stats))
    return 0


def _cmd_compare(args) -> int:
    paths = [Path(part.strip()) for part in args.logs.split(",") if part.strip()]
    if len(paths) < 2:
        raise ValueError("--logs needs at least two comma-separated files")
    stats = [compute_stats(read_events(path)) for path in paths]
    sys.stdout.write(compare_variants(stats, fmt=args.format))
    return 0


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    handler = {
        "run": _cmd_run,
        "stats": _cmd_stats,
        "compare": _cmd_compare,
    }[args.command]
    try:
        return handler(args)
    except (TutorError, CorruptLogError, OSError, ValueError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
