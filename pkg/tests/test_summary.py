import numpy as np
import pytest
from scipy.stats import norm

from monce_eval.configuration import EvalConfig
from monce_eval.exceptions import EvaluationError
from monce_eval.matching import classify
from monce_eval.metrics import eao, eao_p, kde_range, longevity_statistic, reid_rates
from monce_eval.metrics.summary import silverman_bandwidth
from monce_eval.sequences import all_absence_runs, build_sequences
from monce_eval.synth import generate
from monce_eval.typings import (
    BandwidthRule,
    CurvePoint,
    Drop,
    EntitySpec,
    KdeRange,
    LengthCurve,
    LongevityCurve,
    LongevityPoint,
    Scenario,
    UidCriterion,
)


def length_curve(values, start=1):
    return LengthCurve(tuple(CurvePoint(start + k, v, 1) for k, v in enumerate(values)))


def longevity(rates, total=8):
    return LongevityCurve(
        tuple(LongevityPoint(k + 1, round(r * total), total) for k, r in enumerate(rates))
    )


def test_equal_lengths(cfg):
    selected = kde_range([40, 40, 40], cfg)
    assert (selected.t_lo, selected.t_hi) == (40, 40)


def test_full_observed_range():
    selected = kde_range([3, 7, 20], EvalConfig(use_kde_range=False))
    assert (selected.t_lo, selected.t_hi) == (3, 20)


def test_outlier_lengths_are_excluded(cfg):
    selected = kde_range([100] * 10 + [5, 1000], cfg)
    assert selected.t_lo <= 100 <= selected.t_hi
    assert selected.t_lo > 5
    assert selected.t_hi < 1000
    assert selected.peak_length == 100
    assert "silverman" in selected.rule


def test_fixed_bandwidth():
    cfg = EvalConfig(kde_bandwidth_rule=BandwidthRule.FIXED, kde_bandwidth=5.0)
    selected = kde_range([50] * 5 + [60] * 5, cfg)
    assert selected.bandwidth == 5.0
    assert selected.t_lo <= 50 and selected.t_hi >= 60


def test_range_matches_dense_grid(cfg):
    lengths = np.array([30] * 6 + [34] * 3 + [80])
    h = silverman_bandwidth(lengths)
    grid = np.arange(30, 81)
    density = norm.pdf(grid[:, None], loc=lengths[None, :], scale=h).mean(axis=1)
    keep = density >= 0.5 * density.max()
    peak = int(np.argmax(density))
    lo = peak
    while lo > 0 and keep[lo - 1]:
        lo -= 1
    hi = peak
    while hi < grid.size - 1 and keep[hi + 1]:
        hi += 1
    selected = kde_range(lengths.tolist(), cfg)
    assert (selected.t_lo, selected.t_hi) == (grid[lo], grid[hi])


def test_bandwidth_floor():
    assert silverman_bandwidth(np.array([10.0, 10.0, 10.0, 11.0])) == 1.0


def test_empty_lengths(cfg):
    with pytest.raises(EvaluationError):
        kde_range([], cfg)


def test_eao_of_constant_curve():
    curve = length_curve([1.0] * 10)
    assert eao(curve, KdeRange(3, 8, 1.0, 5)) == 1.0
    assert eao_p(curve, KdeRange(1, 10, 1.0, 5)) == 1.0


def test_eao_two_point_mean():
    assert eao(length_curve([0.3, 0.8, 1.0]), KdeRange(2, 3, 1.0, 2)) == pytest.approx(0.9)


def test_eao_skips_undefined_points():
    assert eao_p(length_curve([None, 0.4, 0.6]), KdeRange(1, 3, 1.0, 2)) == pytest.approx(0.5)


def test_eao_empty_intersection():
    with pytest.raises(EvaluationError, match="EAO"):
        eao(length_curve([1.0, 1.0]), KdeRange(5, 9, 1.0, 7))


def test_longevity_statistic_perfect():
    assert longevity_statistic(longevity([1.0] * 40), 0.9) == 40


def test_longevity_statistic_first_crossing():
    rates = [1.0] * 20 + [0.75] * 52 + [1.0] * 28
    curve = longevity(rates)
    assert longevity_statistic(curve, 0.9) == 20
    assert longevity_statistic(curve, 0.75) == 100
    assert longevity_statistic(curve, 0.5) == 100


def test_longevity_statistic_immediate_failure():
    assert longevity_statistic(longevity([0.5, 1.0], total=2), 0.9) == 0


def test_longevity_statistic_empty_curve():
    with pytest.raises(EvaluationError):
        longevity_statistic(LongevityCurve(()), 0.5)


def test_reid_short_and_long():
    # Absences of 3 and 50 frames, then a terminal absence; only the short one is reacquired.
    entity = EntitySpec("a", 0, 79, 10, 10, 20, 20, absences=((10, 12), (20, 69)))
    scenario = Scenario(90, (entity,), (Drop("a", 70, 70),), canvas=(100, 100))
    gt, pred = generate(scenario)
    cfg = EvalConfig(reid_threshold=10)
    table = classify(gt, pred, UidCriterion.ANY_UID, cfg)
    runs = all_absence_runs(build_sequences(gt))
    assert [(r.length, r.ends_at_video_end) for r in runs] == [(3, False), (50, False), (10, True)]
    rates = reid_rates(table, runs, cfg)
    assert (rates.short_rate, rates.short_count) == (1.0, 1)
    assert (rates.long_rate, rates.long_count) == (0.0, 1)
    assert rates.threshold == 10


def test_reid_without_absences(cfg):
    entity = EntitySpec("a", 0, 9, 10, 10, 20, 20)
    gt, pred = generate(Scenario(10, (entity,), canvas=(100, 100)))
    rates = reid_rates(classify(gt, pred, UidCriterion.ANY_UID, cfg), [], cfg)
    assert rates.short_rate is None and rates.long_rate is None
    assert (rates.short_count, rates.long_count) == (0, 0)
