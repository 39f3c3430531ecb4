import numpy as np
import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from monce_eval.configuration import EvalConfig
from monce_eval.ingest import report_to_json
from monce_eval.metrics import assemble_report
from monce_eval.synth import generate
from monce_eval.typings import UidCriterion, UidSwap

from builders import degraded_lane_scenario, random_lane_scenario, stream, track

ANY = UidCriterion.ANY_UID
ORIGINAL = UidCriterion.ORIGINAL_UID

seeds = st.integers(0, 2**32 - 1)
property_settings = settings(
    max_examples=100, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)


@property_settings
@given(seed=seeds)
def test_perfect_tracker_identity(seed):
    gt, pred = generate(random_lane_scenario(np.random.default_rng(seed)))
    report = assemble_report(gt, pred, EvalConfig())
    assert report.eao == 1.0
    assert report.eao_p == 1.0
    for criterion in (ANY, ORIGINAL):
        assert report.eao_by_criterion[criterion] == 1.0
        assert {p.rate for p in report.longevity_curves[criterion].points} == {1.0}
    assert {p.rate for p in report.localization_curve} == {1.0}
    assert {p.rate for p in report.absence_curve} <= {1.0}
    assert report.reid.short_rate in (None, 1.0)
    assert report.reid.long_rate in (None, 1.0)
    assert report.orphan_track_count == 0
    longest = max(s for s in (gt.video_length - gt.frames_of(u)[0].frame for u in gt.uids))
    assert set(report.longevity_stats.values()) == {longest}


@property_settings
@given(seed=seeds)
def test_curve_properties(seed):
    # No cross-entity swaps: a swapped label can favour the original UID.
    gt, pred = generate(degraded_lane_scenario(seed, allow_swaps=False))
    report = assemble_report(gt, pred, EvalConfig())

    for criterion in report.criteria:
        for curve in (report.recall_curves[criterion], report.precision_curves[criterion]):
            assert all(0.0 <= v <= 1.0 for v in curve.values if v is not None)
        totals = [p.total for p in report.longevity_curves[criterion].points]
        assert all(a >= b for a, b in zip(totals, totals[1:]))
        assert all(p.successes <= p.total for p in report.longevity_curves[criterion].points)

    any_recall = report.recall_curves[ANY].values
    original_recall = report.recall_curves[ORIGINAL].values
    assert all(o <= a + 1e-12 for o, a in zip(original_recall, any_recall))

    rates = [p.rate for p in report.localization_curve]
    if rates[0] is not None:
        assert rates[0] == 1.0
        assert all(a >= b for a, b in zip(rates, rates[1:]))
    else:
        assert set(rates) == {None}
    assert all(0.0 <= p.rate <= 1.0 for p in report.absence_curve)


def test_label_swap_can_favour_original_uid():
    # b wears a's box for one frame, before b's own entity appears.
    gt = stream(track("a", range(4)) + track("b", [2, 3], y=100), video_length=4)
    pred = stream(
        track("a", [0, 2, 3]) + track("b", [1]) + track("b", [2, 3], y=100), video_length=4
    )
    report = assemble_report(gt, pred, EvalConfig())
    assert report.recall_curves[ANY].values[:2] == [0.5, 0.5]
    assert report.recall_curves[ORIGINAL].values[:2] == [1.0, 0.75]


def test_random_label_swap_breaks_recall_dominance():
    scenario = degraded_lane_scenario(89)
    assert any(isinstance(d, UidSwap) for d in scenario.degradations)
    report = assemble_report(*generate(scenario), EvalConfig())
    pairs = zip(report.recall_curves[ORIGINAL].values, report.recall_curves[ANY].values)
    assert any(o is not None and a is not None and o > a for o, a in pairs)


@settings(max_examples=30, deadline=None)
@given(seed=seeds)
def test_scale_invariance(seed):
    gt, pred = generate(degraded_lane_scenario(seed))
    cfg = EvalConfig()
    report = assemble_report(gt, pred, cfg)
    scaled = assemble_report(gt.scaled(7), pred.scaled(7), cfg)
    assert scaled.eao == pytest.approx(report.eao, abs=1e-9)
    assert scaled.eao_p == pytest.approx(report.eao_p, abs=1e-9)
    assert scaled.longevity_stats == report.longevity_stats
    assert scaled.reid == report.reid
    assert scaled.kde_range == report.kde_range
    for criterion in report.criteria:
        assert scaled.recall_curves[criterion].values == pytest.approx(
            report.recall_curves[criterion].values, abs=1e-9
        )


def test_repeated_runs_are_byte_identical():
    gt, pred = generate(degraded_lane_scenario(7))
    first = report_to_json(assemble_report(gt, pred, EvalConfig()))
    second = report_to_json(assemble_report(gt, pred, EvalConfig()))
    assert first == second


def test_single_criterion():
    gt = stream(track("a", range(5)), video_length=5)
    report = assemble_report(gt, gt, EvalConfig(criteria=(ORIGINAL,)))
    assert report.criteria == (ORIGINAL,)
    assert report.headline_criterion is ORIGINAL
    assert list(report.recall_curves) == [ORIGINAL]


def test_report_metadata():
    gt = stream(track("a", [0, 1, 4]) + track("b", range(2, 6)), video_length=6)
    pred = stream(track("a", [0, 1, 4]) + track("z", [3], x=300), video_length=6)
    report = assemble_report(gt, pred, EvalConfig())
    assert report.video_length == 6
    assert report.sequence_count == 2
    assert report.absence_run_count == 2
    assert report.orphan_track_count == 1
    assert report.config == EvalConfig()
