""" Ground truth sequences and their absence structure. """

from typing import List

import numpy as np

from .exceptions import EvaluationError
from .typings import AbsenceRun, GroundTruthSequence, TrackSet
from .logger import get_logger

log = get_logger(__name__)


def build_sequences(gt: TrackSet) -> List[GroundTruthSequence]:
    """Build one sequence per ground truth UID.

    A sequence runs from the entity's first appearance to the end of the video;
    absences inside it count towards its length.

    Args:
        gt (TrackSet): The ground truth stream.

    Returns:
        List[GroundTruthSequence]: Sequences ordered by UID.

    Raises:
        EvaluationError: If the track set holds no entity frames.
    """
    if len(gt) == 0:
        raise EvaluationError("no ground truth entities")
    sequences = []
    for uid in gt.uids:
        frames = np.fromiter((ef.frame for ef in gt.frames_of(uid)), dtype=np.int64)
        first = int(frames.min())
        length = gt.video_length - first
        mask = np.zeros(length, dtype=bool)
        mask[frames - first] = True
        sequences.append(
            GroundTruthSequence(
                gt_uid=uid, first_frame=first, length=length, presence_mask=mask
            )
        )
    log.debug("Built %s ground truth sequences", len(sequences))
    return sequences


def absence_runs(seq: GroundTruthSequence) -> List[AbsenceRun]:
    """Maximal runs of absent frames in a sequence, ordered by start frame."""
    absent = ~seq.presence_mask
    if not absent.any():
        return []
    padded = np.concatenate(([False], absent, [False])).astype(np.int8)
    edges = np.diff(padded)
    starts = np.flatnonzero(edges == 1)
    stops = np.flatnonzero(edges == -1)
    return [
        AbsenceRun(
            gt_uid=seq.gt_uid,
            start_frame=seq.first_frame + int(start),
            length=int(stop - start),
            ends_at_video_end=bool(stop == seq.length),
        )
        for start, stop in zip(starts, stops)
    ]


def all_absence_runs(sequences: List[GroundTruthSequence]) -> List[AbsenceRun]:
    """Absence runs of every sequence, in sequence then frame order."""
    return [run for seq in sequences for run in absence_runs(seq)]
