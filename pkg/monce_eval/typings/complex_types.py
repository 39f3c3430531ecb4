""" Complex types used in the project. """

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from types import MappingProxyType
from typing import (
    TYPE_CHECKING,
    Dict,
    Iterable,
    List,
    Mapping,
    Optional,
    Sequence,
    Tuple,
)

import numpy as np

from ..exceptions import InputError
from .base_types import EntityFrame, Outcome, UidCriterion

if TYPE_CHECKING:
    from ..configuration.config import EvalConfig


@dataclass(frozen=True)
class TrackSet:
    """A full ground truth or prediction stream indexed by frame and by UID.

    Entity frames are stored in canonical (frame, uid) order, so two track sets
    built from the same observations in any order compare equal.
    """

    entity_frames: Tuple[EntityFrame, ...]
    video_length: int
    _by_frame: Mapping[int, Tuple[EntityFrame, ...]] = field(
        init=False, repr=False, compare=False
    )
    _by_uid: Mapping[str, Tuple[EntityFrame, ...]] = field(
        init=False, repr=False, compare=False
    )

    def __post_init__(self):
        frames = tuple(sorted(self.entity_frames, key=lambda ef: (ef.frame, ef.uid)))
        object.__setattr__(self, "entity_frames", frames)
        by_frame: Dict[int, List[EntityFrame]] = {}
        by_uid: Dict[str, List[EntityFrame]] = {}
        previous = None
        for ef in frames:
            key = (ef.frame, ef.uid)
            if key == previous:
                raise InputError(f"duplicate entity-frame for uid {ef.uid!r} at frame {ef.frame}")
            previous = key
            if ef.frame >= self.video_length:
                raise InputError(
                    f"frame {ef.frame} is outside the video (length {self.video_length})"
                )
            by_frame.setdefault(ef.frame, []).append(ef)
            by_uid.setdefault(ef.uid, []).append(ef)
        object.__setattr__(
            self,
            "_by_frame",
            MappingProxyType({k: tuple(v) for k, v in by_frame.items()}),
        )
        object.__setattr__(
            self,
            "_by_uid",
            MappingProxyType({k: tuple(v) for k, v in sorted(by_uid.items())}),
        )

    @classmethod
    def from_entity_frames(
        cls, entity_frames: Iterable[EntityFrame], video_length: Optional[int] = None
    ) -> "TrackSet":
        """Build a track set; video_length defaults to the last frame index + 1."""
        frames = tuple(entity_frames)
        if video_length is None:
            video_length = max((ef.frame for ef in frames), default=-1) + 1
        return cls(entity_frames=frames, video_length=video_length)

    def with_video_length(self, video_length: int) -> "TrackSet":
        """Return the same observations with a different video length."""
        return TrackSet(entity_frames=self.entity_frames, video_length=video_length)

    def scaled(self, factor: float) -> "TrackSet":
        """Return a copy with every box coordinate multiplied by factor."""
        return TrackSet(
            entity_frames=tuple(
                EntityFrame(ef.frame, ef.uid, ef.box.scaled(factor), ef.confidence)
                for ef in self.entity_frames
            ),
            video_length=self.video_length,
        )

    @property
    def uids(self) -> Tuple[str, ...]:
        """All UIDs in ascending order."""
        return tuple(self._by_uid.keys())

    def at_frame(self, frame: int) -> Tuple[EntityFrame, ...]:
        """Entity frames observed at a frame, ordered by UID."""
        return self._by_frame.get(frame, ())

    def frames_of(self, uid: str) -> Tuple[EntityFrame, ...]:
        """Entity frames of one UID in ascending frame order."""
        return self._by_uid.get(uid, ())

    def __len__(self) -> int:
        return len(self.entity_frames)


@dataclass(frozen=True)
class AssociationState:
    """Write-once UID associations accumulated while folding over frames."""

    pred_to_gt: Mapping[str, str] = field(default_factory=dict)
    gt_to_first_pred: Mapping[str, str] = field(default_factory=dict)

    @classmethod
    def empty(cls) -> "AssociationState":
        """A state with no associations."""
        return cls(pred_to_gt=MappingProxyType({}), gt_to_first_pred=MappingProxyType({}))


@dataclass(frozen=True)
class FrameMatching:
    """The matched (gt_uid, pred_uid, iou) pairs of one frame, sorted by UIDs."""

    frame: int
    pairs: Tuple[Tuple[str, str, float], ...] = ()

    def __post_init__(self):
        pairs = tuple(sorted(self.pairs, key=lambda p: (p[0], p[1])))
        object.__setattr__(self, "pairs", pairs)
        gts = [p[0] for p in pairs]
        preds = [p[1] for p in pairs]
        if len(set(gts)) != len(gts) or len(set(preds)) != len(preds):
            raise InputError(f"frame {self.frame}: matching is not one-to-one")

    @property
    def cardinality(self) -> int:
        """Number of matched pairs."""
        return len(self.pairs)

    @property
    def total_iou(self) -> float:
        """Sum of pair overlaps, accumulated in sorted pair order."""
        return sum(p[2] for p in self.pairs)


@dataclass(frozen=True, eq=False)
class SequenceOutcomes:
    """Outcome codes and TP overlaps for every frame of one ground truth sequence."""

    gt_uid: str
    first_frame: int
    codes: np.ndarray = field(repr=False)
    ious: np.ndarray = field(repr=False)

    def __post_init__(self):
        codes = np.asarray(self.codes, dtype=np.int8)
        ious = np.asarray(self.ious, dtype=np.float64)
        codes.setflags(write=False)
        ious.setflags(write=False)
        object.__setattr__(self, "codes", codes)
        object.__setattr__(self, "ious", ious)

    @property
    def length(self) -> int:
        """Sequence length in frames."""
        return int(self.codes.shape[0])

    @property
    def failures(self) -> np.ndarray:
        """Boolean mask of FN and attributed FP frames."""
        return (self.codes == Outcome.FN) | (self.codes == Outcome.FP_ATTRIBUTED)

    def outcome(self, frame: int) -> Tuple[Outcome, float]:
        """Outcome and TP overlap (0.0 otherwise) at an absolute frame index."""
        k = frame - self.first_frame
        if not 0 <= k < self.length:
            raise IndexError(f"frame {frame} outside sequence {self.gt_uid}")
        return Outcome(int(self.codes[k])), float(self.ious[k])

    def counts(self) -> Dict[Outcome, int]:
        """Number of frames per outcome."""
        return {o: int((self.codes == o).sum()) for o in Outcome}


@dataclass(frozen=True)
class OutcomeTable:
    """Per-frame, per-ground-truth classification for one UID criterion."""

    criterion: UidCriterion
    video_length: int
    sequences: Tuple[SequenceOutcomes, ...]
    matched_predictions: Mapping[Tuple[int, str], Tuple[str, float]]
    association: AssociationState
    orphan_predictions: Tuple[Tuple[int, str], ...]

    def sequence(self, gt_uid: str) -> SequenceOutcomes:
        """Outcomes of one ground truth sequence."""
        for seq in self.sequences:
            if seq.gt_uid == gt_uid:
                return seq
        raise KeyError(gt_uid)


@dataclass(frozen=True)
class CurvePoint:
    """One point of a length curve; value is None when every sequence was skipped."""

    t: int
    value: Optional[float]
    support: int


@dataclass(frozen=True)
class LengthCurve:
    """A metric value as a function of sequence length T = 1, 2, ..."""

    points: Tuple[CurvePoint, ...]

    def value_at(self, t: int) -> Optional[float]:
        """Curve value at length t (None outside the domain)."""
        if 1 <= t <= len(self.points):
            return self.points[t - 1].value
        return None

    @property
    def values(self) -> List[Optional[float]]:
        """Curve values in T order."""
        return [p.value for p in self.points]


@dataclass(frozen=True)
class LongevityPoint:
    """Successful and total tracks at one sequence length."""

    t: int
    successes: int
    total: int

    @property
    def rate(self) -> float:
        """Fraction of tracks successful at this length."""
        return self.successes / self.total if self.total else 0.0


@dataclass(frozen=True)
class LongevityCurve:
    """Longevity successes and totals per sequence length."""

    points: Tuple[LongevityPoint, ...]

    def at(self, t: int) -> LongevityPoint:
        """The point for sequence length t."""
        return self.points[t - 1]


@dataclass(frozen=True)
class LocalizationPoint:
    """Share of successful TP frames meeting an IOU threshold (None if no success set)."""

    threshold: float
    rate: Optional[float]


@dataclass(frozen=True)
class AbsencePoint:
    """Absence prediction rate over the first t_a frames of qualifying runs."""

    t_a: int
    rate: float
    support: int


@dataclass(frozen=True)
class KdeRange:
    """Range of sequence lengths used for EAO averaging."""

    t_lo: int
    t_hi: int
    bandwidth: float
    peak_length: int
    rule: str = ""


@dataclass(frozen=True)
class ReidRates:
    """Short and long term re-identification rates."""

    short_rate: Optional[float]
    long_rate: Optional[float]
    short_count: int
    long_count: int
    threshold: int


# pylint: disable=too-many-instance-attributes
@dataclass(frozen=True)
class MetricReport:
    """The complete dashboard payload."""

    eao: float
    eao_p: float
    kde_range: KdeRange
    longevity_stats: Mapping[float, int]
    reid: ReidRates
    recall_curves: Mapping[UidCriterion, LengthCurve]
    precision_curves: Mapping[UidCriterion, LengthCurve]
    longevity_curves: Mapping[UidCriterion, LongevityCurve]
    localization_curve: Tuple[LocalizationPoint, ...]
    absence_curve: Tuple[AbsencePoint, ...]
    config: "EvalConfig"
    headline_criterion: UidCriterion = UidCriterion.ANY_UID
    eao_by_criterion: Mapping[UidCriterion, float] = field(default_factory=dict)
    eao_p_by_criterion: Mapping[UidCriterion, float] = field(default_factory=dict)
    video_length: int = 0
    sequence_count: int = 0
    absence_run_count: int = 0
    orphan_track_count: int = 0

    @property
    def criteria(self) -> Tuple[UidCriterion, ...]:
        """Criteria evaluated, in enum order."""
        return tuple(c for c in UidCriterion if c in self.recall_curves)


class PlotKind(Enum):
    """Dashboard panels, one SVG each."""

    RECALL = "recall"
    PRECISION = "precision"
    LONGEVITY_COUNTS = "longevity_counts"
    LONGEVITY_RATE = "longevity_rate"
    LOCALIZATION = "localization"
    ABSENCE = "absence"


@dataclass(frozen=True)
class PlotSeries:
    """One labelled polyline; y values may be None (null-annotated points)."""

    label: str
    points: Tuple[Tuple[float, Optional[float]], ...]

    def __post_init__(self):
        if not self.points:
            raise InputError(
                f"series {self.label!r} needs at least one point; mark undefined values None"
            )


@dataclass(frozen=True)
class PlotSpec:
    """Everything needed to render one dashboard panel."""

    kind: PlotKind
    series: Tuple[PlotSeries, ...]
    x_label: str
    y_label: str
    title: str

    def __post_init__(self):
        if not self.series:
            raise InputError(f"plot {self.kind.value} needs at least one series")


def sorted_criteria(criteria: Sequence[UidCriterion]) -> Tuple[UidCriterion, ...]:
    """Criteria in canonical (enum declaration) order without duplicates."""
    return tuple(c for c in UidCriterion if c in set(criteria))
