""" Track file parsing, configuration loading and report serialization. """

import csv
import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple, Union

from .configuration.base_config import read_config_values
from .configuration.config import EvalConfig, config_from_values
from .exceptions import InputError
from .typings import (
    AbsencePoint,
    BoundingBox,
    CurvePoint,
    EntityFrame,
    KdeRange,
    LengthCurve,
    LocalizationPoint,
    LongevityCurve,
    LongevityPoint,
    MetricReport,
    ReidRates,
    TrackSet,
    UidCriterion,
)
from .logger import get_logger

log = get_logger(__name__)

TRACK_FORMATS = ("monce_csv",)
TRACK_COLUMNS = ("frame", "uid", "x", "y", "w", "h", "conf")
REPORT_SCHEMA_VERSION = 1

PathLike = Union[str, Path]


@dataclass(frozen=True)
class TrackFileRow:
    """One parsed CSV row."""

    frame: int
    uid: str
    x: float
    y: float
    w: float
    h: float
    confidence: Optional[float] = None

    def to_entity_frame(self) -> EntityFrame:
        """Convert the row into an entity frame (validating the box)."""
        return EntityFrame(
            frame=self.frame,
            uid=self.uid,
            box=BoundingBox(self.x, self.y, self.w, self.h),
            confidence=self.confidence,
        )


def parse_track_file(
    path: PathLike, fmt: str = "monce_csv", video_length: Optional[int] = None
) -> TrackSet:
    """Parse a `frame,uid,x,y,w,h[,conf]` CSV file into a track set.

    The header line is optional; blank lines and lines starting with `#` are
    ignored; rows may appear in any order.

    Args:
        path (PathLike): The CSV file.
        fmt (str): The file format; only "monce_csv" is supported.
        video_length (Optional[int]): Overrides the default of last frame + 1.

    Returns:
        TrackSet: The parsed stream.

    Raises:
        FileNotFoundError: If the file does not exist.
        InputError: On malformed rows (with line number), duplicate keys or an empty file.
    """
    if fmt not in TRACK_FORMATS:
        raise InputError(f"unsupported track format {fmt!r}", path=path)
    path = Path(path)
    if not path.is_file():
        raise FileNotFoundError(f"track file not found: {path}")

    frames: List[EntityFrame] = []
    seen: Dict[Tuple[int, str], int] = {}
    with open(path, "rb") as handle:
        for line_no, fields in _data_rows(_decoded_lines(handle, path), path):
            row = _parse_row(fields, path, line_no)
            key = (row.frame, row.uid)
            if key in seen:
                raise InputError(
                    f"duplicate entity-frame (frame {row.frame}, uid {row.uid!r}), "
                    f"first seen on line {seen[key]}",
                    path=path,
                    line=line_no,
                )
            seen[key] = line_no
            try:
                frames.append(row.to_entity_frame())
            except InputError as e:
                raise InputError(e.message, path=path, line=line_no) from e
    if not frames:
        raise InputError("track file holds no entity frames", path=path)
    try:
        track_set = TrackSet.from_entity_frames(frames, video_length)
    except InputError as e:
        raise InputError(e.message, path=path) from e
    log.info(
        "Parsed %s entity frames (%s uids, %s frames) from %s",
        len(track_set),
        len(track_set.uids),
        track_set.video_length,
        path,
    )
    return track_set


def _decoded_lines(handle, path: Path):
    """Yield (line number, text) pairs, failing on the first line that is not UTF-8."""
    for line_no, raw in enumerate(handle, start=1):
        try:
            yield line_no, raw.decode("utf-8")
        except UnicodeDecodeError as e:
            raise InputError(
                f"invalid UTF-8 byte {raw[e.start]:#04x} at column {e.start + 1}",
                path=path,
                line=line_no,
            ) from e


def _data_rows(lines, path: Path):
    """Yield (line number, fields) for data lines, skipping comments and the header."""
    header_checked = False
    for line_no, line in lines:
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        fields = [f.strip() for f in next(csv.reader([stripped]))]
        if not header_checked:
            header_checked = True
            if fields and fields[0].lower() == "frame":
                names = tuple(f.lower() for f in fields)
                if names not in (TRACK_COLUMNS[:6], TRACK_COLUMNS):
                    raise InputError(
                        f"unexpected header {','.join(fields)}", path=path, line=line_no
                    )
                continue
        yield line_no, fields


def _parse_row(fields: List[str], path: Path, line_no: int) -> TrackFileRow:
    if len(fields) not in (6, 7):
        raise InputError(
            f"expected 6 or 7 fields, got {len(fields)}", path=path, line=line_no
        )
    try:
        frame_text = fields[0]
        if not frame_text.lstrip("+").isdigit():
            raise ValueError(f"frame must be a non-negative integer, got {frame_text!r}")
        uid = fields[1]
        if not uid:
            raise ValueError("uid is empty")
        x, y, w, h = (float(v) for v in fields[2:6])
        if not all(math.isfinite(v) for v in (x, y, w, h)):
            raise ValueError("box coordinates must be finite")
        confidence = float(fields[6]) if len(fields) == 7 and fields[6] else None
    except ValueError as e:
        raise InputError(str(e), path=path, line=line_no) from e
    return TrackFileRow(int(frame_text), uid, x, y, w, h, confidence)


def write_track_file(track_set: TrackSet, path: PathLike) -> None:
    """Write a track set in the CSV format read by parse_track_file."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(TRACK_COLUMNS)
        for ef in track_set.entity_frames:
            writer.writerow(
                [
                    ef.frame,
                    ef.uid,
                    repr(ef.box.x),
                    repr(ef.box.y),
                    repr(ef.box.w),
                    repr(ef.box.h),
                    "" if ef.confidence is None else repr(ef.confidence),
                ]
            )
    log.info("Wrote %s entity frames to %s", len(track_set), path)


def align_video_length(
    gt: TrackSet, pred: TrackSet, video_length: Optional[int] = None
) -> Tuple[TrackSet, TrackSet]:
    """Give both streams one video length: the override, or the longer of the two."""
    length = video_length or max(gt.video_length, pred.video_length)
    return gt.with_video_length(length), pred.with_video_length(length)


def parse_config(path: Optional[PathLike]) -> EvalConfig:
    """Read an evaluation config (`key=value` lines); None gives the defaults.

    Raises:
        FileNotFoundError: If the file does not exist.
        InputError: On unknown keys or out-of-range values (naming the key).
    """
    try:
        return config_from_values(read_config_values(path))
    except InputError as e:
        if e.path is None and path is not None:
            raise InputError(e.message, path=path) from e
        raise


def report_to_dict(report: MetricReport) -> Dict[str, Any]:
    """JSON-ready representation of a report."""

    def by_criterion(mapping, convert):
        return {c.value: convert(v) for c, v in mapping.items()}

    return {
        "schema_version": REPORT_SCHEMA_VERSION,
        "eao": report.eao,
        "eao_p": report.eao_p,
        "headline_criterion": report.headline_criterion.value,
        "criteria": [c.value for c in report.criteria],
        "eao_by_criterion": by_criterion(report.eao_by_criterion, float),
        "eao_p_by_criterion": by_criterion(report.eao_p_by_criterion, float),
        "kde_range": {
            "t_lo": report.kde_range.t_lo,
            "t_hi": report.kde_range.t_hi,
            "bandwidth": report.kde_range.bandwidth,
            "peak_length": report.kde_range.peak_length,
            "rule": report.kde_range.rule,
        },
        "longevity_stats": {repr(p): t for p, t in report.longevity_stats.items()},
        "reid": {
            "short_rate": report.reid.short_rate,
            "long_rate": report.reid.long_rate,
            "short_count": report.reid.short_count,
            "long_count": report.reid.long_count,
            "threshold": report.reid.threshold,
        },
        "recall_curves": by_criterion(report.recall_curves, _length_curve_to_list),
        "precision_curves": by_criterion(report.precision_curves, _length_curve_to_list),
        "longevity_curves": by_criterion(
            report.longevity_curves,
            lambda curve: [
                {"t": p.t, "successes": p.successes, "total": p.total, "rate": p.rate}
                for p in curve.points
            ],
        ),
        "localization_curve": [
            {"threshold": p.threshold, "rate": p.rate} for p in report.localization_curve
        ],
        "absence_curve": [
            {"t_a": p.t_a, "rate": p.rate, "support": p.support}
            for p in report.absence_curve
        ],
        "config": report.config.to_dict(),
        "video_length": report.video_length,
        "sequence_count": report.sequence_count,
        "absence_run_count": report.absence_run_count,
        "orphan_track_count": report.orphan_track_count,
    }


def _length_curve_to_list(curve: LengthCurve) -> List[Dict[str, Any]]:
    return [{"t": p.t, "value": p.value, "support": p.support} for p in curve.points]


def report_from_dict(data: Dict[str, Any]) -> MetricReport:
    """Inverse of report_to_dict."""
    if data.get("schema_version") != REPORT_SCHEMA_VERSION:
        raise InputError(f"unsupported report schema {data.get('schema_version')!r}")

    def by_criterion(mapping, convert):
        return {UidCriterion(k): convert(v) for k, v in mapping.items()}

    def length_curve(points):
        return LengthCurve(
            points=tuple(CurvePoint(p["t"], p["value"], p["support"]) for p in points)
        )

    kde = data["kde_range"]
    reid = data["reid"]
    return MetricReport(
        eao=data["eao"],
        eao_p=data["eao_p"],
        kde_range=KdeRange(
            kde["t_lo"], kde["t_hi"], kde["bandwidth"], kde["peak_length"], kde["rule"]
        ),
        longevity_stats={float(p): t for p, t in data["longevity_stats"].items()},
        reid=ReidRates(
            reid["short_rate"],
            reid["long_rate"],
            reid["short_count"],
            reid["long_count"],
            reid["threshold"],
        ),
        recall_curves=by_criterion(data["recall_curves"], length_curve),
        precision_curves=by_criterion(data["precision_curves"], length_curve),
        longevity_curves=by_criterion(
            data["longevity_curves"],
            lambda points: LongevityCurve(
                points=tuple(
                    LongevityPoint(p["t"], p["successes"], p["total"]) for p in points
                )
            ),
        ),
        localization_curve=tuple(
            LocalizationPoint(p["threshold"], p["rate"])
            for p in data["localization_curve"]
        ),
        absence_curve=tuple(
            AbsencePoint(p["t_a"], p["rate"], p["support"]) for p in data["absence_curve"]
        ),
        config=EvalConfig.from_dict(data["config"]),
        headline_criterion=UidCriterion(data["headline_criterion"]),
        eao_by_criterion=by_criterion(data["eao_by_criterion"], float),
        eao_p_by_criterion=by_criterion(data["eao_p_by_criterion"], float),
        video_length=data["video_length"],
        sequence_count=data["sequence_count"],
        absence_run_count=data["absence_run_count"],
        orphan_track_count=data["orphan_track_count"],
    )


def report_to_json(report: MetricReport) -> str:
    """Deterministic JSON text of a report."""
    return json.dumps(report_to_dict(report), sort_keys=True, indent=2, allow_nan=False) + "\n"


def write_report(report: MetricReport, path: PathLike) -> None:
    """Serialize a report to JSON with sorted keys and full float precision."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        handle.write(report_to_json(report))
    log.info("Wrote report to %s", path)


def read_report(path: PathLike) -> MetricReport:
    """Load a report written by write_report."""
    path = Path(path)
    if not path.is_file():
        raise FileNotFoundError(f"report not found: {path}")
    try:
        with open(path, "r", encoding="utf-8") as handle:
            return report_from_dict(json.load(handle))
    except (KeyError, TypeError, json.JSONDecodeError) as e:
        raise InputError(f"malformed report: {e}", path=path) from e
