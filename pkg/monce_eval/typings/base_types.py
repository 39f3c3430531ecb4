""" Base types for the monce_eval package. """

import math
from dataclasses import dataclass, field
from enum import Enum, IntEnum
from typing import Optional

import numpy as np

from ..exceptions import InputError


@dataclass(frozen=True)
class BoundingBox:
    """Axis-aligned rectangle in pixel coordinates: left edge, top edge, width, height."""

    x: float
    y: float
    w: float
    h: float

    def __post_init__(self):
        values = (self.x, self.y, self.w, self.h)
        if not all(math.isfinite(v) for v in values):
            raise InputError(f"box coordinates must be finite, got {values}")
        if self.w <= 0 or self.h <= 0:
            raise InputError(
                f"box width and height must be positive, got w={self.w} h={self.h}"
            )

    def scaled(self, factor: float) -> "BoundingBox":
        """Return a copy with every coordinate multiplied by factor."""
        return BoundingBox(
            self.x * factor, self.y * factor, self.w * factor, self.h * factor
        )


@dataclass(frozen=True)
class EntityFrame:
    """One (frame, uid, box) observation of a ground truth or predicted entity."""

    frame: int
    uid: str
    box: BoundingBox
    confidence: Optional[float] = None

    def __post_init__(self):
        if self.frame < 0:
            raise InputError(f"frame index must be >= 0, got {self.frame}")
        if self.confidence is not None and not 0.0 <= self.confidence <= 1.0:
            raise InputError(f"confidence must be in [0, 1], got {self.confidence}")


class UidCriterion(Enum):
    """Matching criteria for associating predicted UIDs with ground truth UIDs."""

    ANY_UID = "any"
    ORIGINAL_UID = "original"

    @property
    def label(self) -> str:
        """Human readable label used in plots and the dashboard."""
        return f"{self.value} UID"


class Outcome(IntEnum):
    """Per ground truth entity-frame classification codes."""

    TP = 0
    FN = 1
    TN = 2
    FP_ATTRIBUTED = 3


class BandwidthRule(Enum):
    """Bandwidth selection for the sequence length KDE."""

    SILVERMAN = "silverman"
    FIXED = "fixed"


class CurveAveraging(Enum):
    """How recall/precision windows are combined across sequences."""

    PER_SEQUENCE = "per_sequence"
    POOLED = "pooled"


@dataclass(frozen=True, eq=False)
class GroundTruthSequence:
    """All frames from a ground truth entity's first appearance until the end of the video."""

    gt_uid: str
    first_frame: int
    length: int
    presence_mask: np.ndarray = field(repr=False)

    def __post_init__(self):
        mask = np.asarray(self.presence_mask, dtype=bool)
        mask.setflags(write=False)
        object.__setattr__(self, "presence_mask", mask)
        if self.length < 1 or mask.shape != (self.length,):
            raise InputError(
                f"sequence {self.gt_uid}: mask length {mask.shape} != length {self.length}"
            )
        if not mask[0]:
            raise InputError(f"sequence {self.gt_uid} must start on a present frame")

    @property
    def present_count(self) -> int:
        """Number of frames where the entity is present."""
        return int(self.presence_mask.sum())

    @property
    def last_frame(self) -> int:
        """Index of the final frame of the sequence (the last video frame)."""
        return self.first_frame + self.length - 1


@dataclass(frozen=True)
class AbsenceRun:
    """A maximal run of frames inside a sequence where the entity is not present."""

    gt_uid: str
    start_frame: int
    length: int
    ends_at_video_end: bool

    @property
    def reappearance_frame(self) -> Optional[int]:
        """The first present frame after the run, or None for a terminal absence."""
        if self.ends_at_video_end:
            return None
        return self.start_frame + self.length
