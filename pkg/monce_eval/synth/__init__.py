"""Synthetic scenarios and brute-force reference oracles."""

from .oracle import box_iou, brute_force_curves, brute_force_match
from .scenario import generate, parse_scenario

__all__ = [
    "box_iou",
    "brute_force_curves",
    "brute_force_match",
    "generate",
    "parse_scenario",
]
