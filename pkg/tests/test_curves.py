import pytest

from monce_eval.configuration import EvalConfig
from monce_eval.matching import classify
from monce_eval.metrics import (
    absence_prediction_curve,
    localization_curve,
    longevity_curve,
    tracking_precision_curve,
    tracking_recall_curve,
)
from monce_eval.sequences import all_absence_runs, build_sequences
from monce_eval.synth import generate
from monce_eval.typings import (
    CurveAveraging,
    EntitySpec,
    Scenario,
    StaleHold,
    TrackSet,
    UidCriterion,
)

from builders import stream, track

ANY = UidCriterion.ANY_UID


def curves(gt, pred, cfg, criterion=ANY):
    table = classify(gt, pred, criterion, cfg)
    sequences = build_sequences(gt)
    return table, sequences


def test_perfect_detections_give_ones(cfg):
    gt = stream(track("a", [0, 1, 2, 5, 6]) + track("b", range(3, 9)), video_length=9)
    table, sequences = curves(gt, gt, cfg)
    assert set(tracking_recall_curve(table, sequences).values) == {1.0}
    assert set(tracking_precision_curve(table, sequences, gt).values) == {1.0}
    for point in longevity_curve(table, sequences).points:
        assert point.successes == point.total
    assert {p.rate for p in localization_curve(table, sequences, cfg)} == {1.0}


def test_single_false_negative_dip(cfg):
    gt = stream(track("a", range(10)), video_length=10)
    pred = stream(track("a", [f for f in range(10) if f != 5]), video_length=10)
    table, sequences = curves(gt, pred, cfg)
    recall = tracking_recall_curve(table, sequences)
    assert recall.value_at(5) == 1.0
    assert recall.value_at(6) == pytest.approx(5 / 6)
    assert recall.value_at(10) == pytest.approx(0.9)
    assert [p.support for p in recall.points] == [1] * 10
    longevity = longevity_curve(table, sequences)
    assert [p.successes for p in longevity.points] == [1] * 5 + [0] * 5


def test_recall_averages_sequences_not_frames(cfg):
    gt = stream(track("a", range(4)) + track("b", [0]), video_length=4)
    pred = stream(track("a", range(4)), video_length=4)
    table, sequences = curves(gt, pred, cfg)
    # b is present once (missed) and absent afterwards.
    assert tracking_recall_curve(table, sequences).value_at(4) == pytest.approx(0.5)
    pooled = tracking_recall_curve(table, sequences, CurveAveraging.POOLED)
    assert pooled.value_at(4) == pytest.approx(4 / 5)


def test_extra_boxes_lower_precision(cfg):
    gt = stream(track("a", range(8)), video_length=10)
    pred = stream(track("p", range(10)), video_length=10)
    table, sequences = curves(gt, pred, cfg)
    precision = tracking_precision_curve(table, sequences, pred)
    assert precision.value_at(8) == 1.0
    assert precision.value_at(10) == pytest.approx(0.8)
    assert tracking_recall_curve(table, sequences).value_at(10) == 1.0


def test_orphan_tracks_count_as_zero_precision(cfg):
    gt = stream(track("a", range(4)), video_length=4)
    pred = stream(track("a", range(4)) + track("z", [2, 3], x=500), video_length=4)
    table, sequences = curves(gt, pred, cfg)
    precision = tracking_precision_curve(table, sequences, pred)
    # z runs from frame 2 to the video end: length 2.
    assert precision.value_at(1) == pytest.approx(0.5)
    assert precision.value_at(2) == pytest.approx(0.5)
    assert precision.value_at(3) == 1.0
    assert [p.support for p in precision.points] == [2, 2, 1, 1]
    pooled = tracking_precision_curve(table, sequences, pred, CurveAveraging.POOLED)
    assert pooled.value_at(2) == pytest.approx(2 / 4)
    assert pooled.value_at(4) == 1.0


def test_precision_is_undefined_without_predictions(cfg):
    gt = stream(track("a", range(2)), video_length=2)
    pred = TrackSet.from_entity_frames([], 2)
    table, sequences = curves(gt, pred, cfg)
    assert tracking_precision_curve(table, sequences, pred).values == [None, None]
    assert tracking_recall_curve(table, sequences).values == [0.0, 0.0]


def test_localization_thresholds(cfg):
    gt = stream(track("a", range(3)), video_length=3)
    pred = stream([(0, "p", 0, 0, 3, 10), (1, "p", 0, 0, 6, 10), (2, "p", 0, 0, 9, 10)])
    table, sequences = curves(gt, pred, cfg)
    points = {p.threshold: p.rate for p in localization_curve(table, sequences, cfg)}
    assert points[0.0] == 1.0
    assert points[0.3] == 1.0
    assert points[0.5] == pytest.approx(2 / 3)
    assert points[0.95] == 0.0
    assert points[1.0] == 0.0
    rates = list(points.values())
    assert all(a >= b for a, b in zip(rates, rates[1:]))


def test_localization_without_successful_tracks(cfg):
    gt = stream(track("a", range(3)), video_length=3)
    pred = stream(track("a", [0, 2]), video_length=3)
    table, sequences = curves(gt, pred, cfg)
    points = localization_curve(table, sequences, cfg)
    assert len(points) == 21
    assert {p.rate for p in points} == {None}


def test_localization_grid_follows_config():
    cfg = EvalConfig(localization_grid_step=0.25)
    gt = stream(track("a", range(2)), video_length=2)
    table, sequences = curves(gt, gt, cfg)
    assert [p.threshold for p in localization_curve(table, sequences, cfg)] == [
        0.0,
        0.25,
        0.5,
        0.75,
        1.0,
    ]


def held_scenario() -> Scenario:
    entity = EntitySpec("a", 0, 59, 10, 10, 20, 20, absences=((10, 19), (30, 44)))
    return Scenario(60, (entity,), (StaleHold("a", 5),), canvas=(100, 100))


def test_stale_boxes_at_the_start_of_absences(cfg):
    gt, pred = generate(held_scenario())
    table, sequences = curves(gt, pred, cfg)
    runs = all_absence_runs(sequences)
    assert [r.length for r in runs] == [10, 15]
    points = absence_prediction_curve(table, runs)
    assert len(points) == 15
    assert points[0].rate == 0.0
    assert points[4].rate == 0.0
    assert points[9].rate == pytest.approx(0.5)
    assert points[9].support == 2
    assert points[14].rate == pytest.approx(10 / 15)
    assert points[14].support == 1


def test_silent_tracker_predicts_every_absence(cfg):
    scenario = held_scenario()
    gt, pred = generate(Scenario(60, scenario.entities, canvas=(100, 100)))
    table, sequences = curves(gt, pred, cfg)
    points = absence_prediction_curve(table, all_absence_runs(sequences))
    assert {p.rate for p in points} == {1.0}


def test_no_absences_gives_empty_curve(cfg):
    gt = stream(track("a", range(3)), video_length=3)
    table, _ = curves(gt, gt, cfg)
    assert absence_prediction_curve(table, []) == ()
