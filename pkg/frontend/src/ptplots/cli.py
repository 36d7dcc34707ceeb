"""One small command per figure kind; flags --in, --out, --style."""

from __future__ import annotations

import argparse
import sys

from .figspec import FigureSpec, SchemaError
from .render import render


def _run(kind: str, description: str, argv, needs_summary: bool = False) -> int:
    parser = argparse.ArgumentParser(description=description)
    parser.add_argument("--in", dest="inputs", action="append", required=True,
                        help="input CSV (repeatable)")
    parser.add_argument("--out", required=True, help="output image path")
    parser.add_argument("--style", default=None, help="matplotlib style file")
    if needs_summary:
        parser.add_argument("--summary", default=None,
                            help="summary.json carrying the closed-form overlay")
    args = parser.parse_args(argv)
    extra = {}
    if needs_summary and args.summary:
        extra["summary"] = args.summary
    try:
        spec = FigureSpec(kind=kind, inputs=args.inputs, output=args.out,
                          style=args.style, extra=extra)
        render(spec)
        return 0
    except SchemaError as exc:
        print(f"schema error: {exc}", file=sys.stderr)
        return 2


def index_traces_main(argv=None) -> int:
    return _run("index_traces", "Plot index-process staircase trajectories", argv)


def barrier_main(argv=None) -> int:
    return _run("barrier_curve", "Plot the estimated communication barrier", argv,
                needs_summary=True)


def schedule_main(argv=None) -> int:
    return _run("schedule_evolution", "Plot annealing schedules across rounds", argv)


def acceptance_main(argv=None) -> int:
    return _run("acceptance_boxes", "Plot per-round swap acceptance box plots", argv)


def logz_main(argv=None) -> int:
    return _run("logz_progression", "Plot the normalizing-constant progression", argv)


if __name__ == "__main__":
    sys.exit(index_traces_main())
