""" Reconstructions of the failure modes the dashboard is meant to expose. """

import dataclasses
from pathlib import Path

import pytest

from monce_eval.configuration import EvalConfig
from monce_eval.metrics import assemble_report
from monce_eval.synth import generate, parse_scenario
from monce_eval.typings import UidCriterion, UidReset

SCENARIOS = Path(__file__).resolve().parent.parent / "scenarios"

ANY = UidCriterion.ANY_UID
ORIGINAL = UidCriterion.ORIGINAL_UID


def load(name):
    return parse_scenario(SCENARIOS / name)


def test_single_frame_uid_swap():
    gt, pred = generate(load("uid_swap.env"))
    report = assemble_report(gt, pred, EvalConfig())
    counts = report.longevity_curves[ANY]
    assert [counts.at(t).successes for t in range(1, 21)] == [8] * 20
    assert [counts.at(t).total for t in range(1, 21)] == [8] * 20
    assert (counts.at(21).successes, counts.at(21).total) == (6, 8)
    assert counts.at(72).rate == 0.75
    assert counts.at(73).rate == 1.0
    assert counts.at(100).rate == 1.0
    assert report.longevity_stats[0.9] == 20
    assert report.longevity_stats[0.75] == 100

    assert 0.98 <= report.eao <= 1.0
    assert 0.98 <= report.eao_p <= 1.0
    recall = [v for v in report.recall_curves[ANY].values if v is not None]
    precision = [v for v in report.precision_curves[ANY].values if v is not None]
    assert sum(recall) / len(recall) == pytest.approx(0.99, abs=0.01)
    assert sum(precision) / len(precision) == pytest.approx(0.99, abs=0.01)

    full = assemble_report(gt, pred, EvalConfig(use_kde_range=False))
    assert (full.kde_range.t_lo, full.kde_range.t_hi) == (72, 100)
    assert full.eao == pytest.approx(0.99, abs=0.01)
    assert full.eao_p == pytest.approx(0.99, abs=0.01)


def test_overactive_detector():
    scenario = load("overactive_detector.env")
    cfg = EvalConfig()
    gt, pred = generate(scenario)
    cluttered = assemble_report(gt, pred, cfg)
    clean = assemble_report(*generate(dataclasses.replace(scenario, degradations=())), cfg)

    assert cluttered.eao_p < 0.05
    assert cluttered.eao == pytest.approx(clean.eao, abs=1e-9)
    assert clean.eao_p == 1.0
    assert cluttered.orphan_track_count == 1000 * scenario.video_length


def test_uid_churn_separates_the_criteria():
    scenario = load("overactive_detector.env")
    churned = dataclasses.replace(
        scenario, degradations=scenario.degradations + (UidReset(1),)
    )
    report = assemble_report(*generate(churned), EvalConfig())
    any_recall = report.recall_curves[ANY].values
    original_recall = report.recall_curves[ORIGINAL].values
    # The first present frame always matches under both criteria.
    assert original_recall[0] == any_recall[0]
    assert all(o < a for o, a in zip(original_recall[1:], any_recall[1:]))


def test_ground_truth_label_reset():
    scenario = load("label_reset.env")
    assert len(scenario.entities) == 30
    gt, pred = generate(scenario)
    report = assemble_report(gt, pred, EvalConfig(criteria=(ANY,)))
    totals = [p.total for p in report.longevity_curves[ANY].points]
    assert len(totals) == 2700
    assert set(totals[:900]) == {90}
    assert set(totals[900:1800]) == {60}
    assert set(totals[1800:]) == {30}
    steps = [t + 1 for t, (a, b) in enumerate(zip(totals, totals[1:])) if a != b]
    assert steps == [900, 1800]
