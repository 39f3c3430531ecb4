""" Typings for the monce_eval package. """

from .base_types import (
    AbsenceRun,
    BandwidthRule,
    BoundingBox,
    CurveAveraging,
    EntityFrame,
    GroundTruthSequence,
    Outcome,
    UidCriterion,
)
from .scenario_types import (
    DEGRADATION_KINDS,
    Clutter,
    Degradation,
    Drop,
    EntitySpec,
    Jitter,
    Scenario,
    StaleHold,
    UidReset,
    UidSwap,
)
from .complex_types import (
    AbsencePoint,
    AssociationState,
    CurvePoint,
    FrameMatching,
    KdeRange,
    LengthCurve,
    LocalizationPoint,
    LongevityCurve,
    LongevityPoint,
    MetricReport,
    OutcomeTable,
    PlotKind,
    PlotSeries,
    PlotSpec,
    ReidRates,
    SequenceOutcomes,
    TrackSet,
    sorted_criteria,
)

__all__ = [
    "DEGRADATION_KINDS",
    "Clutter",
    "Degradation",
    "Drop",
    "EntitySpec",
    "Jitter",
    "Scenario",
    "StaleHold",
    "UidReset",
    "UidSwap",
    "AbsencePoint",
    "AbsenceRun",
    "AssociationState",
    "BandwidthRule",
    "BoundingBox",
    "CurveAveraging",
    "CurvePoint",
    "EntityFrame",
    "FrameMatching",
    "GroundTruthSequence",
    "KdeRange",
    "LengthCurve",
    "LocalizationPoint",
    "LongevityCurve",
    "LongevityPoint",
    "MetricReport",
    "Outcome",
    "OutcomeTable",
    "PlotKind",
    "PlotSeries",
    "PlotSpec",
    "ReidRates",
    "SequenceOutcomes",
    "TrackSet",
    "UidCriterion",
    "sorted_criteria",
]
