""" Top-level MONCE scores: EAO, EAO_P, longevity statistics and REID rates. """

from typing import Sequence

import numpy as np
from scipy.stats import gaussian_kde

from ..configuration.config import EvalConfig
from ..exceptions import EvaluationError
from ..typings import (
    AbsenceRun,
    BandwidthRule,
    KdeRange,
    LengthCurve,
    LongevityCurve,
    Outcome,
    OutcomeTable,
    ReidRates,
)
from ..logger import get_logger

log = get_logger(__name__)

# Lengths are integer frame counts; narrower kernels would resolve nothing.
MIN_BANDWIDTH = 1.0


def silverman_bandwidth(lengths: np.ndarray) -> float:
    """Silverman's rule of thumb 0.9 * min(std, IQR / 1.34) * n^(-1/5), floored at one frame."""
    spread = float(np.std(lengths, ddof=1))
    q75, q25 = np.percentile(lengths, [75, 25])
    spread = min(spread, float(q75 - q25) / 1.34)
    return max(0.9 * spread * lengths.size ** (-0.2), MIN_BANDWIDTH)


def kde_range(lengths: Sequence[int], cfg: EvalConfig) -> KdeRange:
    """Select the most common range of sequence lengths for EAO averaging.

    A Gaussian KDE is evaluated on every integer length between the shortest and
    longest sequence; the range is the maximal contiguous interval around the
    density mode where the density stays at or above kde_density_fraction of
    the peak.
    """
    data = np.asarray(lengths, dtype=np.float64)
    if data.size == 0:
        raise EvaluationError("kde_range needs at least one sequence length")
    lo, hi = int(data.min()), int(data.max())
    values, counts = np.unique(data.astype(np.int64), return_counts=True)
    most_common = int(values[np.argmax(counts)])

    if not cfg.use_kde_range:
        return KdeRange(lo, hi, 0.0, most_common, rule="full observed range")
    if lo == hi:
        return KdeRange(lo, hi, 0.0, lo, rule="single sequence length")

    if cfg.kde_bandwidth_rule is BandwidthRule.FIXED:
        bandwidth = float(cfg.kde_bandwidth)
    else:
        bandwidth = silverman_bandwidth(data)
    kde = gaussian_kde(data, bw_method=bandwidth / float(np.std(data, ddof=1)))
    grid = np.arange(lo, hi + 1)
    density = kde(grid)
    peak = int(np.argmax(density))
    floor = cfg.kde_density_fraction * density[peak]
    left = peak
    while left > 0 and density[left - 1] >= floor:
        left -= 1
    right = peak
    while right < grid.size - 1 and density[right + 1] >= floor:
        right += 1
    rule = (
        f"gaussian KDE ({cfg.bandwidth_label}), mode-anchored interval with "
        f"density >= {cfg.kde_density_fraction!r} of peak"
    )
    selected = KdeRange(
        t_lo=int(grid[left]),
        t_hi=int(grid[right]),
        bandwidth=bandwidth,
        peak_length=int(grid[peak]),
        rule=rule,
    )
    log.info(
        "KDE range [%s, %s] (peak %s, bandwidth %.3f)",
        selected.t_lo,
        selected.t_hi,
        selected.peak_length,
        bandwidth,
    )
    return selected


def _range_mean(curve: LengthCurve, selected: KdeRange, name: str) -> float:
    values = [
        p.value
        for p in curve.points
        if selected.t_lo <= p.t <= selected.t_hi and p.support > 0 and p.value is not None
    ]
    if not values:
        raise EvaluationError(
            f"{name}: no curve points in length range [{selected.t_lo}, {selected.t_hi}]"
        )
    return sum(values) / len(values)


def eao(curve: LengthCurve, selected: KdeRange) -> float:
    """Expected average overlap: mean tracking recall over the selected length range."""
    return _range_mean(curve, selected, "EAO")


def eao_p(curve: LengthCurve, selected: KdeRange) -> float:
    """Expected average overlap precision: mean tracking precision over the same range."""
    return _range_mean(curve, selected, "EAO_P")


def longevity_statistic(curve: LongevityCurve, p: float) -> int:
    """Largest T such that the success rate is at least p for every length up to T.

    Returns 0 when the rate at T = 1 is already below p.
    """
    if not curve.points:
        raise EvaluationError("longevity statistic needs a non-empty curve")
    reached = 0
    for point in curve.points:
        if point.rate < p:
            break
        reached = point.t
    return reached


def reid_rates(
    outcomes: OutcomeTable, runs: Sequence[AbsenceRun], cfg: EvalConfig
) -> ReidRates:
    """Re-identification rates after short and long absences.

    Terminal absences are excluded. An absence scores 1 when the first frame after
    it is a TP for the same ground truth.
    """
    by_uid = {seq.gt_uid: seq for seq in outcomes.sequences}
    short_scores = []
    long_scores = []
    for run in runs:
        if run.ends_at_video_end:
            continue
        outcome, _ = by_uid[run.gt_uid].outcome(run.reappearance_frame)
        score = 1.0 if outcome is Outcome.TP else 0.0
        if run.length < cfg.reid_threshold:
            short_scores.append(score)
        else:
            long_scores.append(score)
    return ReidRates(
        short_rate=sum(short_scores) / len(short_scores) if short_scores else None,
        long_rate=sum(long_scores) / len(long_scores) if long_scores else None,
        short_count=len(short_scores),
        long_count=len(long_scores),
        threshold=cfg.reid_threshold,
    )
