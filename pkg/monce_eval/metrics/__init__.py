"""MONCE metric computations."""

from .curves import (
    absence_prediction_curve,
    localization_curve,
    longevity_curve,
    tracking_precision_curve,
    tracking_recall_curve,
)
from .report import assemble_report, assemble_report_async, build_report
from .summary import eao, eao_p, kde_range, longevity_statistic, reid_rates

__all__ = [
    "absence_prediction_curve",
    "assemble_report",
    "assemble_report_async",
    "build_report",
    "eao",
    "eao_p",
    "kde_range",
    "localization_curve",
    "longevity_curve",
    "longevity_statistic",
    "reid_rates",
    "tracking_precision_curve",
    "tracking_recall_curve",
]
