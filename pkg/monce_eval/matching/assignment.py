""" Per-frame lexicographic matching of ground truth and predicted entity frames. """

from typing import List, Sequence, Tuple

import numpy as np
from scipy.optimize import linear_sum_assignment
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from ..typings import AssociationState, EntityFrame, FrameMatching, UidCriterion
from .association import eligible
from .geometry import boxes_to_array, iou_matrix

# Totals closer than this are treated as ties and resolved by UID order.
TIE_TOLERANCE = 1e-12

Objective = Tuple[int, float]


def match_frame(
    gt_frames: Sequence[EntityFrame],
    pred_frames: Sequence[EntityFrame],
    state: AssociationState,
    criterion: UidCriterion,
    iou_min: float,
) -> FrameMatching:
    """Match one frame's ground truth and predicted entity frames.

    Among all matchings of eligible pairs with iou > iou_min, returns the one
    with maximum cardinality, then maximum total IOU, then the lexicographically
    smallest sorted (gt_uid, pred_uid) pair list.

    Args:
        gt_frames (Sequence[EntityFrame]): Ground truth entity frames of one frame.
        pred_frames (Sequence[EntityFrame]): Predicted entity frames of the same frame.
        state (AssociationState): Associations accumulated over earlier frames.
        criterion (UidCriterion): The eligibility criterion.
        iou_min (float): Pairs need an overlap strictly above this value.

    Returns:
        FrameMatching: The selected pairs.
    """
    frame = _common_frame(gt_frames, pred_frames)
    if not gt_frames or not pred_frames:
        return FrameMatching(frame=frame)

    gts = sorted(gt_frames, key=lambda ef: ef.uid)
    preds = sorted(pred_frames, key=lambda ef: ef.uid)
    overlaps = iou_matrix(
        boxes_to_array([ef.box for ef in gts]), boxes_to_array([ef.box for ef in preds])
    )
    rows, cols = np.nonzero(overlaps > iou_min)
    edges = [
        (int(i), int(j))
        for i, j in zip(rows, cols)
        if eligible(state, gts[i].uid, preds[j].uid, criterion)
    ]
    if not edges:
        return FrameMatching(frame=frame)

    pairs = []
    for component in _components(edges, len(gts)):
        pairs.extend(_solve_component(component, overlaps))
    return FrameMatching(
        frame=frame,
        pairs=tuple(
            (gts[i].uid, preds[j].uid, float(overlaps[i, j])) for i, j in pairs
        ),
    )


def _common_frame(
    gt_frames: Sequence[EntityFrame], pred_frames: Sequence[EntityFrame]
) -> int:
    frames = {ef.frame for ef in gt_frames} | {ef.frame for ef in pred_frames}
    if len(frames) > 1:
        raise ValueError(f"entity frames span several frames: {sorted(frames)}")
    return frames.pop() if frames else 0


def _components(
    edges: List[Tuple[int, int]], n_rows: int
) -> List[List[Tuple[int, int]]]:
    """Split feasible pairs into independent connected components."""
    n_cols = max(j for _, j in edges) + 1
    size = n_rows + n_cols
    rows = np.array([i for i, _ in edges])
    cols = np.array([n_rows + j for _, j in edges])
    graph = coo_matrix((np.ones(len(edges)), (rows, cols)), shape=(size, size))
    _, labels = connected_components(graph, directed=False)
    grouped = {}
    for i, j in edges:
        grouped.setdefault(labels[i], []).append((i, j))
    return [grouped[key] for key in sorted(grouped)]


def _solve_component(
    edges: List[Tuple[int, int]], overlaps: np.ndarray
) -> List[Tuple[int, int]]:
    if len(edges) == 1:
        return list(edges)
    row_ids = sorted({i for i, _ in edges})
    col_ids = sorted({j for _, j in edges})
    feasible = np.zeros((len(row_ids), len(col_ids)), dtype=bool)
    weights = np.zeros_like(feasible, dtype=np.float64)
    row_pos = {r: k for k, r in enumerate(row_ids)}
    col_pos = {c: k for k, c in enumerate(col_ids)}
    local_edges = []
    for i, j in edges:
        r, c = row_pos[i], col_pos[j]
        feasible[r, c] = True
        weights[r, c] = overlaps[i, j]
        local_edges.append((r, c))

    best, _ = _optimum(weights, feasible)
    chosen = _lexicographic_refinement(weights, feasible, sorted(local_edges), best)
    return [(row_ids[r], col_ids[c]) for r, c in chosen]


def _optimum(
    weights: np.ndarray, feasible: np.ndarray
) -> Tuple[Objective, List[Tuple[int, int]]]:
    """Maximum cardinality, then maximum total IOU, over the feasible pairs."""
    if not feasible.any():
        return (0, 0.0), []
    # Every feasible pair is worth more than any attainable total IOU.
    bonus = float(min(feasible.shape) + 1)
    score = np.where(feasible, weights + bonus, 0.0)
    rows, cols = linear_sum_assignment(score, maximize=True)
    chosen = sorted((int(r), int(c)) for r, c in zip(rows, cols) if feasible[r, c])
    total = sum(float(weights[r, c]) for r, c in chosen)
    return (len(chosen), total), chosen


def _lexicographic_refinement(
    weights: np.ndarray,
    feasible: np.ndarray,
    ordered_edges: List[Tuple[int, int]],
    best: Objective,
) -> List[Tuple[int, int]]:
    """Fix pairs in UID order whenever the optimum remains attainable."""
    allowed = feasible.copy()
    fixed: List[Tuple[int, int]] = []
    fixed_total = 0.0
    for r, c in ordered_edges:
        if not allowed[r, c]:
            continue
        trial = allowed.copy()
        trial[r, :] = False
        trial[:, c] = False
        (count, total), _ = _optimum(weights, trial)
        count += len(fixed) + 1
        total += fixed_total + float(weights[r, c])
        if count == best[0] and abs(total - best[1]) <= TIE_TOLERANCE:
            fixed.append((r, c))
            fixed_total += float(weights[r, c])
            allowed = trial
        else:
            allowed[r, c] = False
    return fixed
