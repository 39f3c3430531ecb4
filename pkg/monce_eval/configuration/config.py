""" Evaluation configuration for the MONCE metrics. """

import math
import re
from dataclasses import dataclass, field
from typing import Any, Dict, Mapping, Optional, Tuple

from ..exceptions import InputError
from ..typings import BandwidthRule, CurveAveraging, UidCriterion, sorted_criteria
from .base_config import ConfigKey
from ..logger import get_logger

log = get_logger(__name__)

_FIXED_RULE = re.compile(r"^fixed\s*[(:]\s*([^)\s]+)\s*\)?$", re.IGNORECASE)
_LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")
_CRITERION_CHOICES = {
    "any": (UidCriterion.ANY_UID,),
    "original": (UidCriterion.ORIGINAL_UID,),
    "both": (UidCriterion.ANY_UID, UidCriterion.ORIGINAL_UID),
}


# pylint: disable=too-many-instance-attributes
@dataclass(frozen=True)
class EvalConfig:
    """Parameters of one MONCE evaluation.

    Args:
        iou_min (float): Minimum overlap for a valid match (strict), in [0, 1).
        reid_threshold (int): Absences shorter than this are short-term.
        kde_density_fraction (float): Share of the peak density bounding the EAO range.
        kde_bandwidth_rule (BandwidthRule): Silverman's rule or a fixed bandwidth.
        kde_bandwidth (Optional[float]): The bandwidth in frames for the fixed rule.
        localization_grid_step (float): Step of the localization threshold grid.
        use_kde_range (bool): False averages EAO over the full observed range.
        video_length (Optional[int]): Overrides the inferred video length.
        longevity_percentages (Tuple[float, ...]): Success rates for longevity statistics.
        curve_averaging (CurveAveraging): Per-sequence or frame-pooled curve averaging.
        criteria (Tuple[UidCriterion, ...]): UID criteria to evaluate.
        log_level (str): Logging level name.
    """

    iou_min: float = 0.0
    reid_threshold: int = 30
    kde_density_fraction: float = 0.5
    kde_bandwidth_rule: BandwidthRule = BandwidthRule.SILVERMAN
    kde_bandwidth: Optional[float] = None
    localization_grid_step: float = 0.05
    use_kde_range: bool = True
    video_length: Optional[int] = None
    longevity_percentages: Tuple[float, ...] = (0.5, 0.75, 0.9)
    curve_averaging: CurveAveraging = CurveAveraging.PER_SEQUENCE
    criteria: Tuple[UidCriterion, ...] = field(
        default=(UidCriterion.ANY_UID, UidCriterion.ORIGINAL_UID)
    )
    log_level: str = "INFO"

    def __post_init__(self):
        object.__setattr__(self, "criteria", sorted_criteria(self.criteria))
        object.__setattr__(
            self, "longevity_percentages", tuple(sorted(set(self.longevity_percentages)))
        )
        checks = [
            (ConfigKey.IOU_MIN, 0.0 <= self.iou_min < 1.0, "must be in [0, 1)"),
            (ConfigKey.REID_THRESHOLD, self.reid_threshold >= 1, "must be >= 1"),
            (
                ConfigKey.KDE_DENSITY_FRACTION,
                0.0 < self.kde_density_fraction <= 1.0,
                "must be in (0, 1]",
            ),
            (
                ConfigKey.KDE_BANDWIDTH_RULE,
                self.kde_bandwidth_rule is BandwidthRule.SILVERMAN
                or (
                    self.kde_bandwidth is not None
                    and math.isfinite(self.kde_bandwidth)
                    and self.kde_bandwidth > 0
                ),
                "fixed bandwidth must be a positive number",
            ),
            (
                ConfigKey.LOCALIZATION_GRID_STEP,
                0.0 < self.localization_grid_step <= 1.0,
                "must be in (0, 1]",
            ),
            (
                ConfigKey.VIDEO_LENGTH,
                self.video_length is None or self.video_length >= 1,
                "must be >= 1",
            ),
            (
                ConfigKey.LONGEVITY_PERCENTAGES,
                bool(self.longevity_percentages)
                and all(0.0 < p <= 1.0 for p in self.longevity_percentages),
                "values must be in (0, 1]",
            ),
            (ConfigKey.CRITERION, bool(self.criteria), "at least one criterion"),
            (ConfigKey.LOG_LEVEL, self.log_level in _LOG_LEVELS, "unknown level"),
        ]
        for key, ok, message in checks:
            if not ok:
                raise InputError(f"{key.value}: {message}")

    @property
    def headline_criterion(self) -> UidCriterion:
        """The criterion EAO, REID and absence prediction are reported for."""
        if UidCriterion.ANY_UID in self.criteria:
            return UidCriterion.ANY_UID
        return self.criteria[0]

    @property
    def bandwidth_label(self) -> str:
        """The bandwidth rule as written in config files."""
        if self.kde_bandwidth_rule is BandwidthRule.FIXED:
            return f"fixed({self.kde_bandwidth!r})"
        return BandwidthRule.SILVERMAN.value

    @property
    def criterion_label(self) -> str:
        """The criteria as written in config files."""
        for name, criteria in _CRITERION_CHOICES.items():
            if criteria == self.criteria:
                return name
        return "both"

    def localization_thresholds(self) -> Tuple[float, ...]:
        """Threshold grid 0, step, 2*step, ... ending exactly at 1.0."""
        step = self.localization_grid_step
        thresholds = []
        i = 0
        while i * step < 1.0 - 1e-9:
            thresholds.append(round(i * step, 10))
            i += 1
        thresholds.append(1.0)
        return tuple(thresholds)

    def to_dict(self) -> Dict[str, Any]:
        """JSON-ready representation, keyed by config key names."""
        return {
            ConfigKey.IOU_MIN.value: self.iou_min,
            ConfigKey.REID_THRESHOLD.value: self.reid_threshold,
            ConfigKey.KDE_DENSITY_FRACTION.value: self.kde_density_fraction,
            ConfigKey.KDE_BANDWIDTH_RULE.value: self.bandwidth_label,
            ConfigKey.LOCALIZATION_GRID_STEP.value: self.localization_grid_step,
            ConfigKey.USE_KDE_RANGE.value: self.use_kde_range,
            ConfigKey.VIDEO_LENGTH.value: self.video_length,
            ConfigKey.LONGEVITY_PERCENTAGES.value: list(self.longevity_percentages),
            ConfigKey.CURVE_AVERAGING.value: self.curve_averaging.value,
            ConfigKey.CRITERION.value: self.criterion_label,
            ConfigKey.LOG_LEVEL.value: self.log_level,
        }

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "EvalConfig":
        """Inverse of to_dict; also accepts the string values of config files."""
        return config_from_values({k: v for k, v in data.items() if v is not None})


def config_from_values(values: Mapping[str, Any]) -> EvalConfig:
    """Build an EvalConfig from raw key-value pairs (strings or native values).

    Args:
        values (Mapping[str, Any]): Values keyed by ConfigKey names.

    Returns:
        EvalConfig: The validated configuration with defaults for absent keys.

    Raises:
        InputError: If a key is unknown or a value cannot be parsed or is out of range.
    """
    known = {key.value for key in ConfigKey}
    for key in values:
        if key not in known:
            raise InputError(f"unknown key {key!r}")
    kwargs: Dict[str, Any] = {}
    for key in ConfigKey:
        if key.value not in values:
            continue
        raw = values[key.value]
        try:
            kwargs.update(_parse_value(key, raw))
        except (TypeError, ValueError) as e:
            if isinstance(e, InputError):
                raise
            raise InputError(f"{key.value}: cannot parse {raw!r}") from e
    config = EvalConfig(**kwargs)
    log.debug("Configuration: %s", config.to_dict())
    return config


# pylint: disable=too-many-return-statements
def _parse_value(key: ConfigKey, raw: Any) -> Dict[str, Any]:
    if key is ConfigKey.IOU_MIN:
        return {"iou_min": _finite(raw)}
    if key is ConfigKey.REID_THRESHOLD:
        return {"reid_threshold": _integer(raw)}
    if key is ConfigKey.KDE_DENSITY_FRACTION:
        return {"kde_density_fraction": _finite(raw)}
    if key is ConfigKey.KDE_BANDWIDTH_RULE:
        return _parse_bandwidth(str(raw))
    if key is ConfigKey.LOCALIZATION_GRID_STEP:
        return {"localization_grid_step": _finite(raw)}
    if key is ConfigKey.USE_KDE_RANGE:
        return {"use_kde_range": _boolean(raw)}
    if key is ConfigKey.VIDEO_LENGTH:
        return {"video_length": _integer(raw)}
    if key is ConfigKey.LONGEVITY_PERCENTAGES:
        items = raw if isinstance(raw, (list, tuple)) else str(raw).split(",")
        return {"longevity_percentages": tuple(_finite(p) for p in items if str(p).strip())}
    if key is ConfigKey.CURVE_AVERAGING:
        return {"curve_averaging": CurveAveraging(str(raw).strip().lower())}
    if key is ConfigKey.CRITERION:
        choice = str(raw).strip().lower()
        if choice not in _CRITERION_CHOICES:
            raise InputError(f"criterion: expected any, original or both, got {raw!r}")
        return {"criteria": _CRITERION_CHOICES[choice]}
    return {"log_level": str(raw).strip().upper()}


def _parse_bandwidth(raw: str) -> Dict[str, Any]:
    text = raw.strip()
    if text.lower() == BandwidthRule.SILVERMAN.value:
        return {"kde_bandwidth_rule": BandwidthRule.SILVERMAN}
    match = _FIXED_RULE.match(text)
    if not match:
        raise InputError(
            f"kde_bandwidth_rule: expected silverman or fixed(h), got {raw!r}"
        )
    return {
        "kde_bandwidth_rule": BandwidthRule.FIXED,
        "kde_bandwidth": _finite(match.group(1)),
    }


def _finite(raw: Any) -> float:
    value = float(raw)
    if not math.isfinite(value):
        raise ValueError(f"not a finite number: {raw!r}")
    return value


def _integer(raw: Any) -> int:
    if isinstance(raw, bool):
        raise ValueError("boolean is not an integer")
    if isinstance(raw, int):
        return raw
    text = str(raw).strip()
    if not re.fullmatch(r"[+-]?\d+", text):
        raise ValueError(f"not an integer: {raw!r}")
    return int(text)


def _boolean(raw: Any) -> bool:
    if isinstance(raw, bool):
        return raw
    text = str(raw).strip().lower()
    if text in ("true", "1", "yes", "on"):
        return True
    if text in ("false", "0", "no", "off"):
        return False
    raise ValueError(f"not a boolean: {raw!r}")
