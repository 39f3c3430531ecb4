""" Dashboard panels: plot specs built from a report and their SVG rendering. """

import io
import threading
from typing import List, Optional, Sequence, Tuple

import matplotlib

matplotlib.use("Agg")

# pylint: disable=wrong-import-position
from matplotlib import rc_context
from matplotlib.figure import Figure

from .typings import (
    LengthCurve,
    MetricReport,
    PlotKind,
    PlotSeries,
    PlotSpec,
    UidCriterion,
)
from .logger import get_logger

log = get_logger(__name__)

SVG_RC = {
    "svg.hashsalt": "monce-eval",
    "svg.fonttype": "none",
    "font.family": "DejaVu Sans",
    "axes.grid": True,
    "grid.alpha": 0.3,
}
FIGURE_SIZE = (6.4, 4.0)
# null-annotated point for a report without absence runs
NO_ABSENCES = ((1, None),)

# rcParams are process global
_RENDER_LOCK = threading.Lock()


def _length_series(label: str, curve: LengthCurve) -> PlotSeries:
    return PlotSeries(label=label, points=tuple((p.t, p.value) for p in curve.points))


def build_plot_specs(report: MetricReport) -> Tuple[PlotSpec, ...]:
    """One plot spec per dashboard panel, in PlotKind order.

    Recall, precision and longevity panels carry one series per evaluated
    criterion; the longevity counts panel adds the total number of tracks.
    """
    criteria: Sequence[UidCriterion] = report.criteria
    headline = report.headline_criterion

    recall = tuple(_length_series(c.label, report.recall_curves[c]) for c in criteria)
    precision = tuple(
        _length_series(c.label, report.precision_curves[c]) for c in criteria
    )
    counts: List[PlotSeries] = [
        PlotSeries(
            label=f"successful ({c.label})",
            points=tuple((p.t, p.successes) for p in report.longevity_curves[c].points),
        )
        for c in criteria
    ]
    counts.append(
        PlotSeries(
            label="total",
            points=tuple((p.t, p.total) for p in report.longevity_curves[headline].points),
        )
    )
    rates = tuple(
        PlotSeries(
            label=c.label,
            points=tuple((p.t, p.rate) for p in report.longevity_curves[c].points),
        )
        for c in criteria
    )
    localization = (
        PlotSeries(
            label="TP frames of successful tracks",
            points=tuple((p.threshold, p.rate) for p in report.localization_curve),
        ),
    )
    absence = (
        PlotSeries(
            label="absence prediction",
            points=tuple((p.t_a, p.rate) for p in report.absence_curve) or NO_ABSENCES,
        ),
    )

    kde = report.kde_range
    return (
        PlotSpec(
            PlotKind.RECALL,
            recall,
            "sequence length T (frames)",
            "tracking recall",
            f"Tracking recall (EAO {report.eao:.3f}, T in [{kde.t_lo}, {kde.t_hi}])",
        ),
        PlotSpec(
            PlotKind.PRECISION,
            precision,
            "sequence length T (frames)",
            "tracking precision",
            f"Tracking precision (EAO_P {report.eao_p:.3f})",
        ),
        PlotSpec(
            PlotKind.LONGEVITY_COUNTS,
            tuple(counts),
            "sequence length T (frames)",
            "tracks",
            "Longevity: successful tracks",
        ),
        PlotSpec(
            PlotKind.LONGEVITY_RATE,
            rates,
            "sequence length T (frames)",
            "success rate",
            "Longevity: success rate",
        ),
        PlotSpec(
            PlotKind.LOCALIZATION,
            localization,
            "IOU threshold",
            "share of TP frames",
            "Localization",
        ),
        PlotSpec(
            PlotKind.ABSENCE,
            absence,
            "absence length T_a (frames)",
            "true negative rate",
            "Absence prediction",
        ),
    )


def _defined(points) -> Tuple[List[float], List[float]]:
    xs, ys = [], []
    for x, y in points:
        if y is not None:
            xs.append(x)
            ys.append(y)
    return xs, ys


def draw_plot(spec: PlotSpec) -> Figure:
    """Draw a plot spec on a fresh figure.

    Series are drawn as stair steps held until the next point. Points with a
    None value are left out; a panel without any defined point shows a
    "no data" note, and a single point is drawn as a marker.
    """
    fig = Figure(figsize=FIGURE_SIZE)
    ax = fig.add_subplot(1, 1, 1)
    ax.set_title(spec.title, fontsize=10)
    ax.set_xlabel(spec.x_label)
    ax.set_ylabel(spec.y_label)

    all_x: List[float] = []
    for series in spec.series:
        xs, ys = _defined(series.points)
        if not xs:
            continue
        all_x.extend(xs)
        marker: Optional[str] = "o" if len(xs) == 1 else None
        ax.plot(
            xs, ys, label=series.label, marker=marker, linewidth=1.2, drawstyle="steps-post"
        )

    if not all_x:
        ax.text(
            0.5,
            0.5,
            "no data",
            transform=ax.transAxes,
            ha="center",
            va="center",
            color="gray",
        )
    elif min(all_x) == max(all_x):
        ax.set_xlim(all_x[0] - 1, all_x[0] + 1)

    if len(spec.series) > 1 and all_x:
        ax.legend(loc="best", fontsize=8)
    fig.tight_layout()
    return fig


def render_plot(spec: PlotSpec) -> str:
    """Render a plot spec to SVG text; identical specs give identical bytes."""
    with _RENDER_LOCK, rc_context(SVG_RC):
        fig = draw_plot(spec)
        buffer = io.StringIO()
        fig.savefig(buffer, format="svg", metadata={"Date": None})
    log.debug("Rendered %s panel", spec.kind.value)
    return buffer.getvalue()
