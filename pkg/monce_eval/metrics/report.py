""" Assembly of the full MONCE dashboard payload. """

import asyncio
import time
from concurrent.futures import ThreadPoolExecutor
from typing import Mapping

from ..configuration.config import EvalConfig
from ..matching import classify
from ..sequences import all_absence_runs, build_sequences
from ..typings import MetricReport, OutcomeTable, TrackSet, UidCriterion
from .curves import (
    absence_prediction_curve,
    localization_curve,
    longevity_curve,
    tracking_precision_curve,
    tracking_recall_curve,
)
from .summary import eao, eao_p, kde_range, longevity_statistic, reid_rates
from ..logger import get_logger

log = get_logger(__name__)


async def classify_criteria(
    gt: TrackSet, pred: TrackSet, cfg: EvalConfig
) -> Mapping[UidCriterion, OutcomeTable]:
    """Classify the configured criteria concurrently, one worker per criterion."""
    loop = asyncio.get_running_loop()
    with ThreadPoolExecutor(max_workers=len(cfg.criteria)) as executor:
        tasks = [
            loop.run_in_executor(executor, classify, gt, pred, criterion, cfg)
            for criterion in cfg.criteria
        ]
        tables = await asyncio.gather(*tasks)
    return dict(zip(cfg.criteria, tables))


async def assemble_report_async(
    gt: TrackSet, pred: TrackSet, cfg: EvalConfig
) -> MetricReport:
    """Coroutine form of assemble_report for callers already inside an event loop."""
    start_time = time.time()
    tables = await classify_criteria(gt, pred, cfg)
    report = build_report(gt, pred, tables, cfg)
    log.info("Assembled MONCE report in %.2f seconds", time.time() - start_time)
    return report


def assemble_report(gt: TrackSet, pred: TrackSet, cfg: EvalConfig) -> MetricReport:
    """Run the matcher under every configured criterion and compute the dashboard.

    EAO and EAO_P come from the headline criterion's (any UID when evaluated)
    recall and precision curves over the KDE range of ground truth sequence
    lengths; REID, localization and absence prediction use the same table.
    """
    return asyncio.run(assemble_report_async(gt, pred, cfg))


# pylint: disable=too-many-locals
def build_report(
    gt: TrackSet,
    pred: TrackSet,
    tables: Mapping[UidCriterion, OutcomeTable],
    cfg: EvalConfig,
) -> MetricReport:
    """Compute every curve and score from already classified outcome tables."""
    sequences = build_sequences(gt)
    runs = all_absence_runs(sequences)
    selected = kde_range([seq.length for seq in sequences], cfg)

    recall = {}
    precision = {}
    longevity = {}
    eao_values = {}
    eao_p_values = {}
    for criterion in cfg.criteria:
        table = tables[criterion]
        recall[criterion] = tracking_recall_curve(table, sequences, cfg.curve_averaging)
        precision[criterion] = tracking_precision_curve(
            table, sequences, pred, cfg.curve_averaging
        )
        longevity[criterion] = longevity_curve(table, sequences)
        eao_values[criterion] = eao(recall[criterion], selected)
        eao_p_values[criterion] = eao_p(precision[criterion], selected)

    headline = cfg.headline_criterion
    table = tables[headline]
    orphan_tracks = {uid for _, uid in table.orphan_predictions} - set(
        table.association.pred_to_gt
    )
    return MetricReport(
        eao=eao_values[headline],
        eao_p=eao_p_values[headline],
        kde_range=selected,
        longevity_stats={
            p: longevity_statistic(longevity[headline], p)
            for p in cfg.longevity_percentages
        },
        reid=reid_rates(table, runs, cfg),
        recall_curves=recall,
        precision_curves=precision,
        longevity_curves=longevity,
        localization_curve=localization_curve(table, sequences, cfg),
        absence_curve=absence_prediction_curve(table, runs),
        config=cfg,
        headline_criterion=headline,
        eao_by_criterion=eao_values,
        eao_p_by_criterion=eao_p_values,
        video_length=gt.video_length,
        sequence_count=len(sequences),
        absence_run_count=len(runs),
        orphan_track_count=len(orphan_tracks),
    )
