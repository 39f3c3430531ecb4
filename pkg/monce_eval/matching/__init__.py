"""Matching of predicted to ground truth entity frames."""

from .assignment import match_frame
from .association import advance_association, eligible
from .classify import classify
from .geometry import boxes_to_array, iou, iou_matrix

__all__ = [
    "advance_association",
    "boxes_to_array",
    "classify",
    "eligible",
    "iou",
    "iou_matrix",
    "match_frame",
]
