""" Outcome classification of every ground truth sequence frame. """

import time
from typing import Dict, List, Tuple

import numpy as np

from ..configuration.config import EvalConfig
from ..exceptions import EvaluationError
from ..sequences import build_sequences
from ..typings import (
    AssociationState,
    Outcome,
    OutcomeTable,
    SequenceOutcomes,
    TrackSet,
    UidCriterion,
)
from .assignment import match_frame
from .association import advance_association
from ..logger import get_logger

log = get_logger(__name__)


# pylint: disable=too-many-locals
def classify(
    gt: TrackSet, pred: TrackSet, criterion: UidCriterion, cfg: EvalConfig
) -> OutcomeTable:
    """Fold the matcher over all frames and classify each sequence frame.

    Present frames become TP (with overlap) or FN. Absent frames become
    FP_ATTRIBUTED when a predicted entity frame whose UID is associated with the
    ground truth exists at that frame, TN otherwise. Unmatched predicted entity
    frames whose UID has no association are recorded as orphans.

    Args:
        gt (TrackSet): Ground truth stream.
        pred (TrackSet): Prediction stream with the same video length.
        criterion (UidCriterion): The UID matching criterion.
        cfg (EvalConfig): Evaluation configuration (iou_min).

    Returns:
        OutcomeTable: The classification for this criterion.

    Raises:
        EvaluationError: If the video lengths differ or the ground truth is empty.
    """
    if gt.video_length != pred.video_length:
        raise EvaluationError(
            f"video length mismatch: ground truth {gt.video_length}, "
            f"predictions {pred.video_length}"
        )
    start_time = time.time()
    sequences = build_sequences(gt)
    index = {seq.gt_uid: k for k, seq in enumerate(sequences)}
    codes = [
        np.where(seq.presence_mask, Outcome.FN, Outcome.TN).astype(np.int8)
        for seq in sequences
    ]
    ious = [np.zeros(seq.length, dtype=np.float64) for seq in sequences]
    first_frames = [seq.first_frame for seq in sequences]

    state = AssociationState.empty()
    matched: Dict[Tuple[int, str], Tuple[str, float]] = {}
    orphans: List[Tuple[int, str]] = []

    for frame in range(gt.video_length):
        gt_frames = gt.at_frame(frame)
        pred_frames = pred.at_frame(frame)
        if not gt_frames and not pred_frames:
            continue
        matching = match_frame(gt_frames, pred_frames, state, criterion, cfg.iou_min)
        state = advance_association(state, matching)

        matched_here = set()
        for gt_uid, pred_uid, overlap in matching.pairs:
            k = index[gt_uid]
            offset = frame - first_frames[k]
            codes[k][offset] = Outcome.TP
            ious[k][offset] = overlap
            matched[(frame, pred_uid)] = (gt_uid, overlap)
            matched_here.add(pred_uid)

        for ef in pred_frames:
            if ef.uid in matched_here:
                continue
            owner = state.pred_to_gt.get(ef.uid)
            if owner is None:
                orphans.append((frame, ef.uid))
                continue
            k = index[owner]
            offset = frame - first_frames[k]
            if offset >= 0 and codes[k][offset] == Outcome.TN:
                codes[k][offset] = Outcome.FP_ATTRIBUTED

    table = OutcomeTable(
        criterion=criterion,
        video_length=gt.video_length,
        sequences=tuple(
            SequenceOutcomes(
                gt_uid=seq.gt_uid,
                first_frame=seq.first_frame,
                codes=codes[k],
                ious=ious[k],
            )
            for k, seq in enumerate(sequences)
        ),
        matched_predictions=matched,
        association=state,
        orphan_predictions=tuple(orphans),
    )
    log.info(
        "Classified %s sequences under %s in %.2f seconds (%s orphan entity-frames)",
        len(sequences),
        criterion.label,
        time.time() - start_time,
        len(orphans),
    )
    return table
