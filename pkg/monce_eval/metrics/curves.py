""" Length-dependent MONCE curves computed from outcome tables. """

from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..configuration.config import EvalConfig
from ..typings import (
    AbsencePoint,
    AbsenceRun,
    CurveAveraging,
    CurvePoint,
    GroundTruthSequence,
    LengthCurve,
    LocalizationPoint,
    LongevityCurve,
    LongevityPoint,
    Outcome,
    OutcomeTable,
    SequenceOutcomes,
    TrackSet,
)
from ..logger import get_logger

log = get_logger(__name__)


def _window_sums(rows: Sequence[np.ndarray], width: int) -> np.ndarray:
    """Cumulative sums of each row, padded with NaN to a common width.

    Entry [k, t - 1] is the sum over the first t frames of row k, NaN when row k
    is shorter than t.
    """
    out = np.full((len(rows), width), np.nan, dtype=np.float64)
    for k, row in enumerate(rows):
        out[k, : len(row)] = np.cumsum(row, dtype=np.float64)
    return out


def _outcomes_by_uid(outcomes: OutcomeTable) -> Dict[str, SequenceOutcomes]:
    return {seq.gt_uid: seq for seq in outcomes.sequences}


def _length_curve(
    sums: np.ndarray,
    counts: np.ndarray,
    lengths: np.ndarray,
    averaging: CurveAveraging,
    extra_sequences: Optional[np.ndarray] = None,
    extra_frames: Optional[np.ndarray] = None,
) -> LengthCurve:
    """Combine per-sequence window sums into a curve over T = 1..width.

    extra_sequences[t - 1] counts zero-overlap sequences (orphan tracks) long enough
    for length t; extra_frames[t - 1] counts their entity frames inside the window.
    """
    width = sums.shape[1]
    t_values = np.arange(1, width + 1)
    support = (lengths[:, None] >= t_values[None, :]).sum(axis=0)
    if extra_sequences is None:
        extra_sequences = np.zeros(width, dtype=np.int64)
    if extra_frames is None:
        extra_frames = np.zeros(width, dtype=np.int64)
    support = support + extra_sequences

    valid = np.nan_to_num(counts, nan=0.0) > 0
    if averaging is CurveAveraging.POOLED:
        numerator = np.where(valid, sums, 0.0).sum(axis=0)
        denominator = np.where(valid, counts, 0.0).sum(axis=0) + extra_frames
    else:
        means = np.divide(sums, counts, out=np.zeros_like(sums), where=valid)
        numerator = means.sum(axis=0)
        denominator = valid.sum(axis=0) + extra_sequences

    points = []
    for k, t in enumerate(t_values):
        value = None
        if denominator[k] > 0:
            value = float(numerator[k] / denominator[k])
        points.append(CurvePoint(t=int(t), value=value, support=int(support[k])))
    return LengthCurve(points=tuple(points))


def tracking_recall_curve(
    outcomes: OutcomeTable,
    sequences: Sequence[GroundTruthSequence],
    averaging: CurveAveraging = CurveAveraging.PER_SEQUENCE,
) -> LengthCurve:
    """Average overlap of ground truth entity frames as a function of sequence length.

    For each T, every sequence of length >= T is trimmed to its first T frames and
    scored by the mean of (TP iou, or 0 for FN) over its present frames; the curve
    value is the mean of those per-sequence means.
    """
    by_uid = _outcomes_by_uid(outcomes)
    lengths = np.array([seq.length for seq in sequences])
    width = int(lengths.max())
    counts = _window_sums([seq.presence_mask.astype(np.float64) for seq in sequences], width)
    sums = _window_sums([by_uid[seq.gt_uid].ious for seq in sequences], width)
    return _length_curve(sums, counts, lengths, averaging)


# pylint: disable=too-many-locals
def tracking_precision_curve(
    outcomes: OutcomeTable,
    sequences: Sequence[GroundTruthSequence],
    pred: TrackSet,
    averaging: CurveAveraging = CurveAveraging.PER_SEQUENCE,
) -> LengthCurve:
    """Average overlap of predicted entity frames as a function of sequence length.

    Predicted tracks belong to the ground truth their UID is associated with; only
    their entity frames inside that sequence's window count (matched iou, else 0).
    Never-associated tracks are orphan pseudo-sequences running from their first
    predicted frame to the end of the video with zero overlap everywhere.
    """
    lengths = np.array([seq.length for seq in sequences])
    width = int(lengths.max())
    index = {seq.gt_uid: k for k, seq in enumerate(sequences)}
    counts_rows = [np.zeros(seq.length) for seq in sequences]
    sums_rows = [np.zeros(seq.length) for seq in sequences]
    orphan_frames: Dict[str, List[int]] = {}

    pred_to_gt = outcomes.association.pred_to_gt
    for ef in pred.entity_frames:
        owner = pred_to_gt.get(ef.uid)
        if owner is None:
            orphan_frames.setdefault(ef.uid, []).append(ef.frame)
            continue
        k = index[owner]
        offset = ef.frame - sequences[k].first_frame
        if offset < 0:
            continue
        counts_rows[k][offset] += 1.0
        match = outcomes.matched_predictions.get((ef.frame, ef.uid))
        if match is not None:
            sums_rows[k][offset] += match[1]

    extra_sequences, extra_frames = _orphan_window_counts(
        orphan_frames, outcomes.video_length, width
    )
    counts = _window_sums(counts_rows, width)
    sums = _window_sums(sums_rows, width)
    return _length_curve(
        sums, counts, lengths, averaging, extra_sequences, extra_frames
    )


def _orphan_window_counts(
    orphan_frames: Dict[str, List[int]], video_length: int, width: int
) -> Tuple[np.ndarray, np.ndarray]:
    """Per T: orphan tracks with length >= T, and their entity frames in the first T frames."""
    sequences = np.zeros(width, dtype=np.int64)
    frames = np.zeros(width, dtype=np.int64)
    if not orphan_frames:
        return sequences, frames
    offsets_by_length: Dict[int, List[int]] = {}
    tracks_by_length: Dict[int, int] = {}
    for track in orphan_frames.values():
        first = min(track)
        length = video_length - first
        offsets_by_length.setdefault(length, []).extend(f - first for f in track)
        tracks_by_length[length] = tracks_by_length.get(length, 0) + 1
    for length, offsets in offsets_by_length.items():
        span = min(length, width)
        sequences[:span] += tracks_by_length[length]
        histogram = np.bincount(np.asarray(offsets), minlength=length)[:span]
        frames[:span] += np.cumsum(histogram)
    return sequences, frames


def longevity_curve(
    outcomes: OutcomeTable, sequences: Sequence[GroundTruthSequence]
) -> LongevityCurve:
    """Successful and total tracks per sequence length.

    A track trimmed to T frames is successful when it holds no FN and no attributed
    FP; TP frames already require an overlap above the match threshold.
    """
    by_uid = _outcomes_by_uid(outcomes)
    lengths = np.array([seq.length for seq in sequences])
    width = int(lengths.max())
    failures = _window_sums(
        [by_uid[seq.gt_uid].failures.astype(np.float64) for seq in sequences], width
    )
    t_values = np.arange(1, width + 1)
    totals = (lengths[:, None] >= t_values[None, :]).sum(axis=0)
    successes = (failures == 0).sum(axis=0)
    return LongevityCurve(
        points=tuple(
            LongevityPoint(t=int(t), successes=int(s), total=int(n))
            for t, s, n in zip(t_values, successes, totals)
        )
    )


def localization_curve(
    outcomes: OutcomeTable,
    sequences: Sequence[GroundTruthSequence],
    cfg: EvalConfig,
) -> Tuple[LocalizationPoint, ...]:
    """Share of TP frames of fully successful tracks meeting each IOU threshold.

    The rate at threshold 0 counts overlaps strictly above 0. When no track is
    successful over its full length, every rate is None.
    """
    by_uid = _outcomes_by_uid(outcomes)
    collected = []
    for seq in sequences:
        seq_outcomes = by_uid[seq.gt_uid]
        if seq_outcomes.failures.any():
            continue
        collected.append(seq_outcomes.ious[seq_outcomes.codes == Outcome.TP])
    thresholds = cfg.localization_thresholds()
    overlaps = np.concatenate(collected) if collected else np.zeros(0)
    if overlaps.size == 0:
        log.warning("No fully successful tracks; localization curve is empty")
        return tuple(LocalizationPoint(threshold=t, rate=None) for t in thresholds)
    points = []
    for threshold in thresholds:
        if threshold == 0.0:
            hits = int((overlaps > 0.0).sum())
        else:
            hits = int((overlaps >= threshold).sum())
        points.append(LocalizationPoint(threshold=threshold, rate=hits / overlaps.size))
    return tuple(points)


def absence_prediction_curve(
    outcomes: OutcomeTable, runs: Sequence[AbsenceRun]
) -> Tuple[AbsencePoint, ...]:
    """True negative rate over the first T_a frames of every absence run of length >= T_a.

    Frames are pooled across runs before averaging.
    """
    if not runs:
        return ()
    by_uid = _outcomes_by_uid(outcomes)
    rows = []
    for run in runs:
        seq = by_uid[run.gt_uid]
        offset = run.start_frame - seq.first_frame
        window = seq.codes[offset : offset + run.length]
        rows.append((window == Outcome.TN).astype(np.float64))
    lengths = np.array([run.length for run in runs])
    width = int(lengths.max())
    negatives = _window_sums(rows, width)
    points = []
    for k in range(width):
        t_a = k + 1
        qualifying = lengths >= t_a
        n_runs = int(qualifying.sum())
        pooled = float(negatives[qualifying, k].sum())
        points.append(AbsencePoint(t_a=t_a, rate=pooled / (t_a * n_runs), support=n_runs))
    return tuple(points)
