"""Command line entry point: ``pwmirror <group> <command> <scenario>``."""

from __future__ import annotations

import argparse
import sys

from . import scenario

COMMANDS = {
    "pw": ("eval", "mirror"),
    "weight": ("e2",),
    "perverse": ("e2", "oracle"),
    "lg": ("discriminant", "gluing", "kkp"),
    "check": ("all",),
}

EXIT_OK, EXIT_FAIL, EXIT_LOAD = 0, 1, 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pwmirror", description="Run scenario checks for weight and perverse filtrations.")
    groups = parser.add_subparsers(dest="group", required=True)
    for group, commands in COMMANDS.items():
        gp = groups.add_parser(group)
        sub = gp.add_subparsers(dest="command", required=True)
        for command in commands:
            cp = sub.add_parser(command)
            cp.add_argument("scenario", help="scenario JSON file")
            cp.add_argument("--format", choices=("text", "json"), default="text")
            cp.add_argument("--task", help="run only the task with this name")
            cp.add_argument("--strict-validation", action="store_true", help="reject tables stored in raw mode")
            cp.add_argument("--timings", action="store_true", help="include per-task wall-clock times")
            cp.add_argument("--plot-dir", help="write heatmaps of computed tables here (needs matplotlib)")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        sc = scenario.load(args.scenario, strict=args.strict_validation)
    except (scenario.ParseError, scenario.ValidationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_LOAD
    ops = scenario.COMMAND_OPS[f"{args.group} {args.command}"]
    if args.task is not None and not any(t.name == args.task for t in sc.tasks):
        print(f"error: no task named {args.task!r}", file=sys.stderr)
        return EXIT_LOAD
    report = scenario.run(sc, ops=ops, only=args.task)
    sys.stdout.write(scenario.emit(report, args.format, timings=args.timings))
    if args.plot_dir:
        from .plotting import plot_report

        for path in plot_report(report, args.plot_dir):
            print(f"wrote {path}", file=sys.stderr)
    return EXIT_OK if report.ok else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
