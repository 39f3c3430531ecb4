""" Synthetic scenario definitions: entities with linear motion and prediction degradations. """

from dataclasses import dataclass
from typing import Iterator, Tuple, Union

from ..exceptions import InputError
from .base_types import BoundingBox

Interval = Tuple[int, int]


@dataclass(frozen=True)
class EntitySpec:
    """One ground truth entity moving linearly with a constant box size.

    Frames birth..end are inclusive; absences are inclusive (start, end) intervals
    strictly after the birth frame.
    """

    uid: str
    birth: int
    end: int
    x: float
    y: float
    w: float
    h: float
    vx: float = 0.0
    vy: float = 0.0
    absences: Tuple[Interval, ...] = ()

    def __post_init__(self):
        if self.birth < 0 or self.end < self.birth:
            raise InputError(
                f"entity {self.uid}: need 0 <= birth <= end, got {self.birth}..{self.end}"
            )
        if self.w <= 0 or self.h <= 0:
            raise InputError(f"entity {self.uid}: box size must be positive")
        for start, stop in self.absences:
            if not self.birth < start <= stop <= self.end:
                raise InputError(
                    f"entity {self.uid}: absence {start}-{stop} must lie within "
                    f"({self.birth}, {self.end}]"
                )

    def is_present(self, frame: int) -> bool:
        """Whether the entity is visible at frame."""
        if not self.birth <= frame <= self.end:
            return False
        return not any(start <= frame <= stop for start, stop in self.absences)

    def present_frames(self) -> Iterator[int]:
        """Frames the entity is visible in, ascending."""
        return (f for f in range(self.birth, self.end + 1) if self.is_present(f))

    def box_at(self, frame: int) -> BoundingBox:
        """The entity's box at frame (position moves linearly from birth)."""
        dt = frame - self.birth
        return BoundingBox(self.x + self.vx * dt, self.y + self.vy * dt, self.w, self.h)


@dataclass(frozen=True)
class UidSwap:
    """Exchange the predicted labels of two entities for `frames` frames from `frame`."""

    frame: int
    uid_a: str
    uid_b: str
    frames: int = 1


@dataclass(frozen=True)
class Drop:
    """Remove an entity's predictions over the inclusive interval start..end."""

    uid: str
    start: int
    end: int


@dataclass(frozen=True)
class Jitter:
    """Shift an entity's predicted boxes by uniform integer offsets in [-offset, offset]."""

    uid: str
    offset: int


@dataclass(frozen=True)
class Clutter:
    """Add `per_frame` non-overlapping false positive boxes with globally fresh UIDs."""

    per_frame: int
    size: int = 10


@dataclass(frozen=True)
class StaleHold:
    """Keep emitting an entity's last predicted box for up to `frames` frames after each exit."""

    uid: str
    frames: int


@dataclass(frozen=True)
class UidReset:
    """Relabel every UID of the target stream per `period`-frame segment."""

    period: int
    target: str = "pred"


Degradation = Union[UidSwap, Drop, Jitter, Clutter, StaleHold, UidReset]

DEGRADATION_KINDS = {
    "uid_swap": UidSwap,
    "drop": Drop,
    "jitter": Jitter,
    "clutter": Clutter,
    "stale_hold": StaleHold,
    "uid_reset": UidReset,
}


@dataclass(frozen=True)
class Scenario:
    """A synthetic video: entity definitions plus ordered prediction degradations."""

    video_length: int
    entities: Tuple[EntitySpec, ...]
    degradations: Tuple[Degradation, ...] = ()
    canvas: Tuple[int, int] = (1920, 1080)

    def __post_init__(self):
        if self.video_length <= 0:
            raise InputError(f"video_length must be positive, got {self.video_length}")
        if not self.entities:
            raise InputError("a scenario needs at least one entity")
        uids = [e.uid for e in self.entities]
        if len(set(uids)) != len(uids):
            raise InputError("entity uids must be unique")
        width, height = self.canvas
        for entity in self.entities:
            if entity.end >= self.video_length:
                raise InputError(
                    f"entity {entity.uid}: end {entity.end} is outside the video "
                    f"(length {self.video_length})"
                )
            # motion is linear, so the extremes are at birth and end
            for frame in (entity.birth, entity.end):
                box = entity.box_at(frame)
                if box.x < 0 or box.y < 0 or box.x + box.w > width or box.y + box.h > height:
                    raise InputError(
                        f"entity {entity.uid}: box at frame {frame} leaves the "
                        f"{width}x{height} canvas"
                    )
        for degradation in self.degradations:
            self._check_degradation(degradation, set(uids))

    def _check_degradation(self, degradation: Degradation, uids: set):
        name = type(degradation).__name__
        for attr in ("uid", "uid_a", "uid_b"):
            uid = getattr(degradation, attr, None)
            if uid is not None and uid not in uids:
                raise InputError(f"{name}: unknown entity {uid!r}")
        if isinstance(degradation, UidSwap):
            if degradation.uid_a == degradation.uid_b:
                raise InputError(f"{name}: uid_a and uid_b must differ")
            if degradation.frames < 1 or not (
                0 <= degradation.frame
                and degradation.frame + degradation.frames <= self.video_length
            ):
                raise InputError(f"{name}: frames {degradation.frame}+{degradation.frames} out of range")
        elif isinstance(degradation, Drop):
            if not 0 <= degradation.start <= degradation.end < self.video_length:
                raise InputError(f"{name}: interval {degradation.start}-{degradation.end} out of range")
        elif isinstance(degradation, Jitter):
            if degradation.offset < 0:
                raise InputError(f"{name}: offset must be >= 0")
        elif isinstance(degradation, Clutter):
            if degradation.per_frame < 0 or degradation.size <= 0:
                raise InputError(f"{name}: per_frame must be >= 0 and size > 0")
        elif isinstance(degradation, StaleHold):
            if degradation.frames < 0:
                raise InputError(f"{name}: frames must be >= 0")
        elif isinstance(degradation, UidReset):
            if degradation.period < 1:
                raise InputError(f"{name}: period must be >= 1")
            if degradation.target not in ("pred", "gt"):
                raise InputError(f"{name}: target must be 'pred' or 'gt'")

    @property
    def uids(self) -> Tuple[str, ...]:
        """Entity uids in declaration order."""
        return tuple(e.uid for e in self.entities)

