""" Brute-force reference implementations of the matcher and the length curves.

Both oracles follow the metric definitions literally with nested loops and are
only meant for small inputs.
"""

from typing import Callable, Dict, List, Optional, Sequence, Tuple

from ..configuration.config import EvalConfig
from ..exceptions import EvaluationError
from ..matching import classify
from ..matching.assignment import TIE_TOLERANCE
from ..typings import (
    BoundingBox,
    CurveAveraging,
    CurvePoint,
    EntityFrame,
    FrameMatching,
    LengthCurve,
    LongevityCurve,
    LongevityPoint,
    Outcome,
    TrackSet,
    UidCriterion,
)

MAX_MATCH_SIZE = 6
MAX_CURVE_FRAMES = 200
MAX_CURVE_ENTITIES = 10

Eligibility = Callable[[str, str], bool]
Pairs = Tuple[Tuple[str, str, float], ...]


def box_iou(a: BoundingBox, b: BoundingBox) -> float:
    """Scalar intersection over union."""
    ax2, ay2 = a.x + a.w, a.y + a.h
    bx2, by2 = b.x + b.w, b.y + b.h
    iw = max(0.0, min(ax2, bx2) - max(a.x, b.x))
    ih = max(0.0, min(ay2, by2) - max(a.y, b.y))
    inter = iw * ih
    union = (ax2 - a.x) * (ay2 - a.y) + (bx2 - b.x) * (by2 - b.y) - inter
    return inter / union


def brute_force_match(
    gt_frames: Sequence[EntityFrame],
    pred_frames: Sequence[EntityFrame],
    eligibility: Eligibility,
    iou_min: float,
) -> FrameMatching:
    """Enumerate every matching and keep the lexicographic optimum.

    The objective is maximum cardinality, then maximum total IOU (totals within
    the matcher's tie tolerance are equal), then the smallest sorted
    (gt_uid, pred_uid) pair list.

    Raises:
        EvaluationError: With more than 6 ground truth or 6 predicted entity frames.
    """
    if len(gt_frames) > MAX_MATCH_SIZE or len(pred_frames) > MAX_MATCH_SIZE:
        raise EvaluationError(
            f"brute force matching is limited to {MAX_MATCH_SIZE}x{MAX_MATCH_SIZE}, "
            f"got {len(gt_frames)}x{len(pred_frames)}"
        )
    frames = {ef.frame for ef in gt_frames} | {ef.frame for ef in pred_frames}
    frame = min(frames) if frames else 0

    gts = sorted(gt_frames, key=lambda ef: ef.uid)
    preds = sorted(pred_frames, key=lambda ef: ef.uid)
    options: List[List[Tuple[int, float]]] = []
    for g in gts:
        row = []
        for j, p in enumerate(preds):
            overlap = box_iou(g.box, p.box)
            if overlap > iou_min and eligibility(g.uid, p.uid):
                row.append((j, overlap))
        options.append(row)

    matchings: List[Pairs] = []

    def extend(i: int, used: frozenset, chosen: List[Tuple[str, str, float]]):
        if i == len(gts):
            matchings.append(tuple(sorted(chosen, key=lambda p: (p[0], p[1]))))
            return
        extend(i + 1, used, chosen)
        for j, overlap in options[i]:
            if j in used:
                continue
            chosen.append((gts[i].uid, preds[j].uid, overlap))
            extend(i + 1, used | {j}, chosen)
            chosen.pop()

    extend(0, frozenset(), [])

    best_count = max(len(m) for m in matchings)
    best_total = max(sum(p[2] for p in m) for m in matchings if len(m) == best_count)
    optimal = [
        m
        for m in matchings
        if len(m) == best_count and abs(sum(p[2] for p in m) - best_total) <= TIE_TOLERANCE
    ]
    winner = min(optimal, key=lambda m: [(p[0], p[1]) for p in m])
    return FrameMatching(frame=frame, pairs=winner)


# pylint: disable=too-many-locals,too-many-branches
def brute_force_curves(
    gt: TrackSet,
    pred: TrackSet,
    cfg: EvalConfig,
    criterion: UidCriterion,
) -> Tuple[LengthCurve, LengthCurve, LongevityCurve]:
    """Recall, precision and longevity curves by re-trimming every sequence for every T.

    Outcomes come from classify; everything after that is recomputed from the
    definitions without the vectorized curve code.

    Raises:
        EvaluationError: With more than 200 frames or more than 10 ground truth entities.
    """
    if gt.video_length > MAX_CURVE_FRAMES or len(gt.uids) > MAX_CURVE_ENTITIES:
        raise EvaluationError(
            f"brute force curves are limited to {MAX_CURVE_FRAMES} frames and "
            f"{MAX_CURVE_ENTITIES} entities"
        )
    table = classify(gt, pred, criterion, cfg)
    pooled = cfg.curve_averaging is CurveAveraging.POOLED
    video_length = gt.video_length

    sequences = {}
    for seq in table.sequences:
        present = [
            code in (Outcome.TP, Outcome.FN) for code in seq.codes.tolist()
        ]
        sequences[seq.gt_uid] = (seq.first_frame, len(seq.codes), present, seq)

    owner_frames: Dict[str, List[Tuple[int, float]]] = {uid: [] for uid in sequences}
    orphan_first: Dict[str, int] = {}
    orphan_frames: Dict[str, List[int]] = {}
    for ef in pred.entity_frames:
        owner = table.association.pred_to_gt.get(ef.uid)
        match = table.matched_predictions.get((ef.frame, ef.uid))
        overlap = match[1] if match is not None else 0.0
        if owner is None:
            orphan_first[ef.uid] = min(orphan_first.get(ef.uid, ef.frame), ef.frame)
            orphan_frames.setdefault(ef.uid, []).append(ef.frame)
        else:
            owner_frames[owner].append((ef.frame, overlap))

    max_length = max(length for _, length, _, _ in sequences.values())
    recall_points, precision_points, longevity_points = [], [], []
    for t in range(1, max_length + 1):
        recall_num, recall_den = 0.0, 0
        precision_num, precision_den = 0.0, 0
        support, successes = 0, 0
        for uid, (first, length, present, seq) in sequences.items():
            if length < t:
                continue
            support += 1

            gt_count, gt_sum = 0, 0.0
            failed = False
            for offset in range(t):
                code = int(seq.codes[offset])
                if present[offset]:
                    gt_count += 1
                    gt_sum += float(seq.ious[offset])
                if code in (Outcome.FN, Outcome.FP_ATTRIBUTED):
                    failed = True
            if not failed:
                successes += 1
            if gt_count:
                recall_num += gt_sum if pooled else gt_sum / gt_count
                recall_den += gt_count if pooled else 1

            in_window = [
                overlap for frame, overlap in owner_frames[uid] if first <= frame < first + t
            ]
            if in_window:
                precision_num += sum(in_window) if pooled else sum(in_window) / len(in_window)
                precision_den += len(in_window) if pooled else 1

        orphan_support = 0
        for uid, first in orphan_first.items():
            if video_length - first < t:
                continue
            orphan_support += 1
            window = [f for f in orphan_frames[uid] if first <= f < first + t]
            precision_den += len(window) if pooled else 1

        recall_points.append(CurvePoint(t, _ratio(recall_num, recall_den), support))
        precision_points.append(
            CurvePoint(t, _ratio(precision_num, precision_den), support + orphan_support)
        )
        longevity_points.append(LongevityPoint(t, successes, support))

    return (
        LengthCurve(points=tuple(recall_points)),
        LengthCurve(points=tuple(precision_points)),
        LongevityCurve(points=tuple(longevity_points)),
    )


def _ratio(numerator: float, denominator: int) -> Optional[float]:
    return numerator / denominator if denominator else None
