""" Synthetic ground truth / prediction pairs with controlled failure modes. """

import dataclasses
from pathlib import Path
from typing import Callable, Dict, List, Tuple, Union

import numpy as np

from ..configuration.base_config import KeyValueFile
from ..exceptions import InputError
from ..typings import (
    DEGRADATION_KINDS,
    BoundingBox,
    Clutter,
    Degradation,
    Drop,
    EntityFrame,
    EntitySpec,
    Jitter,
    Scenario,
    StaleHold,
    TrackSet,
    UidReset,
    UidSwap,
)
from ..logger import get_logger

log = get_logger(__name__)

SCENARIO_KEYS = ("video_length", "canvas", "entity.", "degradation.")
ENTITY_FIELDS = ("birth", "end", "x", "y", "w", "h", "vx", "vy", "absent")

Boxes = Dict[Tuple[int, str], BoundingBox]


def parse_scenario(path: Union[str, Path]) -> Scenario:
    """Read a scenario from a `key=value` file.

    Recognised keys::

        video_length=100
        canvas=1920x1080
        entity.<uid>=birth=0 end=99 x=10 y=10 w=20 h=20 vx=1 vy=0 absent=30-40,60-61
        degradation.<n>=uid_swap frame=48 uid_a=a uid_b=b frames=1

    Degradations apply in ascending order of n.

    Raises:
        FileNotFoundError: If the file does not exist.
        InputError: On unknown keys, malformed values or inconsistent parameters.
    """
    values = KeyValueFile(path, SCENARIO_KEYS).store()
    try:
        return _scenario_from_values(values)
    except InputError as e:
        raise InputError(e.message, path=path) from e


def _scenario_from_values(values: Dict[str, str]) -> Scenario:
    if "video_length" not in values:
        raise InputError("video_length is required")
    video_length = _to_int("video_length", values["video_length"])
    canvas = (1920, 1080)
    if "canvas" in values:
        parts = values["canvas"].lower().split("x")
        if len(parts) != 2:
            raise InputError(f"canvas: expected WxH, got {values['canvas']!r}")
        canvas = (_to_int("canvas", parts[0]), _to_int("canvas", parts[1]))

    entities = []
    degradations: List[Tuple[int, Degradation]] = []
    for key, value in values.items():
        if key.startswith("entity."):
            entities.append(_parse_entity(key[len("entity.") :], value, video_length))
        elif key.startswith("degradation."):
            order = _to_int(key, key[len("degradation.") :])
            degradations.append((order, _parse_degradation(key, value)))
    degradations.sort(key=lambda item: item[0])
    return Scenario(
        video_length=video_length,
        entities=tuple(entities),
        degradations=tuple(d for _, d in degradations),
        canvas=canvas,
    )


def _fields(key: str, tokens: List[str]) -> Dict[str, str]:
    out = {}
    for token in tokens:
        name, sep, value = token.partition("=")
        if not sep or not value:
            raise InputError(f"{key}: expected name=value, got {token!r}")
        out[name] = value
    return out


def _parse_entity(uid: str, value: str, video_length: int) -> EntitySpec:
    key = f"entity.{uid}"
    fields = _fields(key, value.split())
    unknown = sorted(set(fields) - set(ENTITY_FIELDS))
    if unknown:
        raise InputError(f"{key}: unknown fields {unknown}")
    for required in ("x", "y", "w", "h"):
        if required not in fields:
            raise InputError(f"{key}: {required} is required")
    absences = []
    for interval in filter(None, fields.get("absent", "").split(",")):
        start, sep, stop = interval.partition("-")
        if not sep:
            start = stop = interval
        absences.append((_to_int(key, start), _to_int(key, stop)))
    return EntitySpec(
        uid=uid,
        birth=_to_int(key, fields.get("birth", "0")),
        end=_to_int(key, fields.get("end", str(video_length - 1))),
        x=_to_float(key, fields["x"]),
        y=_to_float(key, fields["y"]),
        w=_to_float(key, fields["w"]),
        h=_to_float(key, fields["h"]),
        vx=_to_float(key, fields.get("vx", "0")),
        vy=_to_float(key, fields.get("vy", "0")),
        absences=tuple(absences),
    )


def _parse_degradation(key: str, value: str) -> Degradation:
    tokens = value.split()
    if not tokens or tokens[0] not in DEGRADATION_KINDS:
        raise InputError(
            f"{key}: expected one of {sorted(DEGRADATION_KINDS)}, got {value!r}"
        )
    cls = DEGRADATION_KINDS[tokens[0]]
    params = _fields(key, tokens[1:])
    types = {f.name: f.type for f in dataclasses.fields(cls)}
    unknown = sorted(set(params) - set(types))
    if unknown:
        raise InputError(f"{key}: unknown parameters {unknown} for {tokens[0]}")
    kwargs = {
        name: _to_int(key, raw) if types[name] is int else raw
        for name, raw in params.items()
    }
    try:
        return cls(**kwargs)
    except TypeError as e:
        raise InputError(f"{key}: {e}") from e


def _to_int(key: str, raw: str) -> int:
    try:
        return int(raw)
    except ValueError as e:
        raise InputError(f"{key}: expected an integer, got {raw!r}") from e


def _to_float(key: str, raw: str) -> float:
    try:
        return float(raw)
    except ValueError as e:
        raise InputError(f"{key}: expected a number, got {raw!r}") from e


def generate(scenario: Scenario, seed: int = 0) -> Tuple[TrackSet, TrackSet]:
    """Build the ground truth and degraded prediction streams of a scenario.

    Predictions start as exact copies of the ground truth; degradations then
    apply in order. Jitter and clutter draw from a generator seeded with seed,
    so equal seeds give equal streams.

    Args:
        scenario (Scenario): The scenario.
        seed (int): Seed for the stochastic degradations.

    Returns:
        Tuple[TrackSet, TrackSet]: (ground truth, predictions).
    """
    rng = np.random.default_rng(seed)
    gt: Boxes = {}
    for entity in scenario.entities:
        for frame in entity.present_frames():
            gt[(frame, entity.uid)] = entity.box_at(frame)
    pred: Boxes = dict(gt)

    for degradation in scenario.degradations:
        if isinstance(degradation, UidReset) and degradation.target == "gt":
            gt = _uid_reset(gt, degradation)
            continue
        apply = _APPLY[type(degradation)]
        pred = apply(pred, degradation, scenario, rng)

    log.info(
        "Generated %s ground truth and %s predicted entity frames (seed %s)",
        len(gt),
        len(pred),
        seed,
    )
    return _track_set(gt, scenario.video_length), _track_set(pred, scenario.video_length)


def _track_set(boxes: Boxes, video_length: int) -> TrackSet:
    return TrackSet.from_entity_frames(
        (EntityFrame(frame=f, uid=uid, box=box) for (f, uid), box in boxes.items()),
        video_length,
    )


def _uid_swap(pred: Boxes, d: UidSwap, _scenario: Scenario, _rng) -> Boxes:
    out = dict(pred)
    for frame in range(d.frame, d.frame + d.frames):
        box_a = out.pop((frame, d.uid_a), None)
        box_b = out.pop((frame, d.uid_b), None)
        if box_a is not None:
            out[(frame, d.uid_b)] = box_a
        if box_b is not None:
            out[(frame, d.uid_a)] = box_b
    return out


def _drop(pred: Boxes, d: Drop, _scenario: Scenario, _rng) -> Boxes:
    return {
        (f, uid): box
        for (f, uid), box in pred.items()
        if not (uid == d.uid and d.start <= f <= d.end)
    }


def _jitter(pred: Boxes, d: Jitter, _scenario: Scenario, rng) -> Boxes:
    out = dict(pred)
    for key in sorted(k for k in pred if k[1] == d.uid):
        dx, dy = rng.integers(-d.offset, d.offset + 1, size=2)
        box = out[key]
        out[key] = BoundingBox(box.x + int(dx), box.y + int(dy), box.w, box.h)
    return out


def _clutter(pred: Boxes, d: Clutter, scenario: Scenario, rng) -> Boxes:
    """False positives in a band below the canvas, so they overlap no entity."""
    out = dict(pred)
    width, height = scenario.canvas
    taken = {uid for _, uid in pred}
    for frame in range(scenario.video_length):
        xs = rng.integers(0, max(width - d.size, 0) + 1, size=d.per_frame)
        ys = rng.integers(0, height, size=d.per_frame) + height + d.size
        for k in range(d.per_frame):
            uid = f"clutter-{frame}-{k}"
            if uid in taken:
                raise InputError(f"clutter uid {uid!r} collides with an existing uid")
            out[(frame, uid)] = BoundingBox(float(xs[k]), float(ys[k]), d.size, d.size)
    return out


def _stale_hold(pred: Boxes, d: StaleHold, scenario: Scenario, _rng) -> Boxes:
    out = dict(pred)
    frames = sorted(f for f, uid in pred if uid == d.uid)
    for k, frame in enumerate(frames):
        next_frame = frames[k + 1] if k + 1 < len(frames) else scenario.video_length
        if next_frame == frame + 1:
            continue
        last = pred[(frame, d.uid)]
        for held in range(frame + 1, min(frame + d.frames, next_frame - 1) + 1):
            out[(held, d.uid)] = last
    return out


def _uid_reset(boxes: Boxes, d: UidReset, *_args) -> Boxes:
    return {(f, f"{uid}~{f // d.period}"): box for (f, uid), box in boxes.items()}


_APPLY: Dict[type, Callable] = {
    UidSwap: _uid_swap,
    Drop: _drop,
    Jitter: _jitter,
    Clutter: _clutter,
    StaleHold: _stale_hold,
    UidReset: _uid_reset,
}
