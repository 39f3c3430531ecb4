"""Main entry point for the monce_eval package when run as a module."""

import argparse
import sys
from typing import List, Optional

from .evaluation import (
    CRITERION_CHOICES,
    EXIT_INPUT_ERROR,
    cmd_evaluate,
    cmd_plot,
    cmd_synth,
)
from .logger import get_logger, set_log_level

log = get_logger(__name__)

LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


def build_parser() -> argparse.ArgumentParser:
    """Argument parser with the evaluate, synth and plot subcommands."""
    parser = argparse.ArgumentParser(
        prog="monce",
        description="MONCE evaluation of long-term, non-contiguous multi-object tracking.",
    )
    parser.add_argument(
        "--log-level",
        type=str.upper,
        choices=LOG_LEVELS,
        default=None,
        help="logging level (overrides log_level from the config)",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    evaluate = commands.add_parser("evaluate", help="score predictions against ground truth")
    evaluate.add_argument("--gt", required=True, help="ground truth track file (CSV)")
    evaluate.add_argument("--pred", required=True, help="prediction track file (CSV)")
    evaluate.add_argument("--config", default=None, help="evaluation config (key=value)")
    evaluate.add_argument("--out", default="monce_out", help="output folder")
    evaluate.add_argument(
        "--criterion",
        choices=sorted(CRITERION_CHOICES),
        default=None,
        help="UID criteria to evaluate (default from the config: both)",
    )
    evaluate.add_argument(
        "--no-kde",
        action="store_true",
        help="average EAO over the full observed sequence length range",
    )
    evaluate.add_argument("--html", action="store_true", help="also write dashboard.html")

    synth = commands.add_parser("synth", help="generate a synthetic scenario")
    synth.add_argument("--scenario", required=True, help="scenario file (key=value)")
    synth.add_argument("--seed", type=int, default=0, help="seed for stochastic degradations")
    synth.add_argument("--out-gt", required=True, help="ground truth CSV to write")
    synth.add_argument("--out-pred", required=True, help="prediction CSV to write")

    plot = commands.add_parser("plot", help="re-render the dashboard from a saved report")
    plot.add_argument("--report", required=True, help="report.json written by evaluate")
    plot.add_argument("--out", required=True, help="output folder")
    plot.add_argument("--html", action="store_true", help="also write dashboard.html")
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """Parse arguments and dispatch to a command; returns the exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_INPUT_ERROR if e.code else 0
    if args.log_level:
        set_log_level(args.log_level)

    if args.command == "evaluate":
        code = cmd_evaluate(
            args.gt,
            args.pred,
            config_path=args.config,
            out_dir=args.out,
            criterion=args.criterion,
            no_kde=args.no_kde,
            html=args.html,
            log_level=args.log_level,
        )
    elif args.command == "synth":
        code = cmd_synth(args.scenario, args.seed, args.out_gt, args.out_pred)
    else:
        code = cmd_plot(args.report, args.out, html=args.html)
    return code


def run():
    """Run the main function of the package."""
    sys.exit(main())


if __name__ == "__main__":
    run()
