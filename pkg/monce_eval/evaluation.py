"""Module for running MONCE evaluations and the CLI commands built on them."""

from __future__ import annotations

import asyncio
import dataclasses
import time
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Callable, Dict, List, Optional, Tuple, Union

from .configuration import EvalConfig, Output
from .exceptions import EvaluationError, InputError, MatcherInvariantError
from .ingest import (
    align_video_length,
    parse_config,
    parse_track_file,
    read_report,
    write_report,
    write_track_file,
)
from .logger import get_logger, set_log_level
from .metrics import assemble_report_async
from .plotting import build_plot_specs, render_plot
from .synth import generate, parse_scenario
from .typings import MetricReport, PlotKind, TrackSet, UidCriterion
from .utilities import format_percentage, format_score

log = get_logger(__name__)

EXIT_OK = 0
EXIT_EVALUATION_ERROR = 1
EXIT_INPUT_ERROR = 2

CRITERION_CHOICES: Dict[str, Tuple[UidCriterion, ...]] = {
    "any": (UidCriterion.ANY_UID,),
    "original": (UidCriterion.ORIGINAL_UID,),
    "both": (UidCriterion.ANY_UID, UidCriterion.ORIGINAL_UID),
}

PathLike = Union[str, Path]


async def load_tracks(
    gt_path: PathLike, pred_path: PathLike, cfg: EvalConfig
) -> Tuple[TrackSet, TrackSet]:
    """Parse the ground truth and prediction files concurrently and align their lengths."""
    loop = asyncio.get_running_loop()
    with ThreadPoolExecutor(max_workers=2) as executor:
        gt, pred = await asyncio.gather(
            loop.run_in_executor(executor, parse_track_file, gt_path),
            loop.run_in_executor(executor, parse_track_file, pred_path),
        )
    return align_video_length(gt, pred, cfg.video_length)


async def evaluate(gt_path: PathLike, pred_path: PathLike, cfg: EvalConfig) -> MetricReport:
    """Load both streams and compute the full report."""
    load_start_time = time.time()
    gt, pred = await load_tracks(gt_path, pred_path, cfg)
    log.info("Loaded tracks in %.2f seconds", time.time() - load_start_time)
    return await assemble_report_async(gt, pred, cfg)


def write_outputs(report: MetricReport, out_dir: PathLike, html: bool = False) -> Output:
    """Write the report JSON, every dashboard panel and the dashboard page."""
    output = Output(str(out_dir), html=html)
    write_report(report, output.report_path)
    render_outputs(report, output)
    return output


def render_outputs(report: MetricReport, output: Output) -> Dict[PlotKind, Path]:
    """Render the panels sequentially and write the dashboard."""
    render_start_time = time.time()
    plots = {
        spec.kind: output.write_plot(spec.kind, render_plot(spec))
        for spec in build_plot_specs(report)
    }
    output.write_dashboard(report, plots)
    output.finalize()
    log.info("Rendered %s panels in %.2f seconds", len(plots), time.time() - render_start_time)
    return plots


def summary_lines(report: MetricReport) -> List[str]:
    """The headline numbers printed on stdout."""
    lines = [
        f"EAO {format_score(report.eao)}",
        f"EAO_P {format_score(report.eao_p)}",
    ]
    for criterion in report.criteria:
        if criterion is report.headline_criterion:
            continue
        lines.append(f"EAO[{criterion.value}] {format_score(report.eao_by_criterion[criterion])}")
        lines.append(
            f"EAO_P[{criterion.value}] {format_score(report.eao_p_by_criterion[criterion])}"
        )
    for p, t in sorted(report.longevity_stats.items()):
        lines.append(f"LONGEVITY@{format_percentage(p)} {t}")
    lines.append(f"REID_SHORT {format_score(report.reid.short_rate)} ({report.reid.short_count})")
    lines.append(f"REID_LONG {format_score(report.reid.long_rate)} ({report.reid.long_count})")
    return lines


def _run_command(name: str, command: Callable[[], int]) -> int:
    """Run a command body, mapping failures to exit codes."""
    start_time = time.time()
    try:
        code = command()
    except FileNotFoundError as e:
        log.error("%s: %s", name, e)
        return EXIT_INPUT_ERROR
    except (InputError, OSError, UnicodeDecodeError) as e:
        log.error("%s: invalid input: %s", name, e)
        return EXIT_INPUT_ERROR
    except (EvaluationError, MatcherInvariantError) as e:
        log.error("%s: evaluation failed: %s", name, e)
        return EXIT_EVALUATION_ERROR
    log.info("%s finished in %.2f seconds", name, time.time() - start_time)
    return code


# pylint: disable=too-many-arguments
def cmd_evaluate(
    gt_path: PathLike,
    pred_path: PathLike,
    config_path: Optional[PathLike] = None,
    out_dir: PathLike = "monce_out",
    criterion: Optional[str] = None,
    no_kde: bool = False,
    html: bool = False,
    log_level: Optional[str] = None,
) -> int:
    """Evaluate predictions against ground truth and write the dashboard.

    Args:
        gt_path (PathLike): Ground truth track file.
        pred_path (PathLike): Prediction track file.
        config_path (Optional[PathLike]): Evaluation config, None for the defaults.
        out_dir (PathLike): Output folder.
        criterion (Optional[str]): "any", "original" or "both"; overrides the config.
        no_kde (bool): Average EAO over the full observed length range.
        html (bool): Also write dashboard.html.
        log_level (Optional[str]): Overrides log_level from the config.

    Returns:
        int: 0 on success, 1 on evaluation errors, 2 on missing or malformed input.
    """

    def body() -> int:
        cfg = parse_config(config_path)
        overrides = {}
        if criterion is not None:
            if criterion not in CRITERION_CHOICES:
                raise InputError(f"criterion must be one of {sorted(CRITERION_CHOICES)}")
            overrides["criteria"] = CRITERION_CHOICES[criterion]
        if no_kde:
            overrides["use_kde_range"] = False
        if log_level is not None:
            overrides["log_level"] = log_level
        cfg = dataclasses.replace(cfg, **overrides)
        set_log_level(cfg.log_level)
        for path in (gt_path, pred_path):
            if not Path(path).is_file():
                raise FileNotFoundError(f"track file not found: {path}")

        report = asyncio.run(evaluate(gt_path, pred_path, cfg))
        output = write_outputs(report, out_dir, html)
        for line in summary_lines(report):
            print(line)
        log.info("Wrote the dashboard to %s", output.folder)
        return EXIT_OK

    return _run_command("evaluate", body)


def cmd_synth(
    scenario_path: PathLike, seed: int, out_gt: PathLike, out_pred: PathLike
) -> int:
    """Generate a synthetic ground truth / prediction pair from a scenario file."""

    def body() -> int:
        scenario = parse_scenario(scenario_path)
        gt, pred = generate(scenario, seed)
        write_track_file(gt, out_gt)
        write_track_file(pred, out_pred)
        return EXIT_OK

    return _run_command("synth", body)


def cmd_plot(report_path: PathLike, out_dir: PathLike, html: bool = False) -> int:
    """Re-render the dashboard panels and page from a saved report."""

    def body() -> int:
        report = read_report(report_path)
        output = Output(str(out_dir), html=html)
        render_outputs(report, output)
        return EXIT_OK

    return _run_command("plot", body)
