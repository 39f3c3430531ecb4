""" Key-value configuration files shared by evaluation configs and scenarios. """

from enum import Enum
from pathlib import Path
from typing import Dict, Iterable, Optional, Union

from dotenv import dotenv_values

from ..exceptions import InputError
from ..logger import get_logger

log = get_logger(__name__)

DEFAULTS_PATH = Path(__file__).resolve().parent.parent / "defaults.env"


class ConfigKey(Enum):
    """Enum class for the recognised evaluation configuration keys."""

    IOU_MIN = "iou_min"
    REID_THRESHOLD = "reid_threshold"
    KDE_DENSITY_FRACTION = "kde_density_fraction"
    KDE_BANDWIDTH_RULE = "kde_bandwidth_rule"
    LOCALIZATION_GRID_STEP = "localization_grid_step"
    USE_KDE_RANGE = "use_kde_range"
    VIDEO_LENGTH = "video_length"
    LONGEVITY_PERCENTAGES = "longevity_percentages"
    CURVE_AVERAGING = "curve_averaging"
    CRITERION = "criterion"
    LOG_LEVEL = "log_level"


class KeyValueFile:
    """This class reads a `key=value` file and keeps its non-empty values.

    Args:
        path (Union[str, Path]): The file to read.
        allowed (Optional[Iterable[str]]): Permitted key names, or None for any key.
            Keys may also be matched by prefix when they end with a dot, e.g. "entity.".
    """

    def __init__(
        self, path: Union[str, Path], allowed: Optional[Iterable[str]] = None
    ):
        self.path = Path(path)
        self.allowed = tuple(allowed) if allowed is not None else None
        self.variables: Dict[str, str] = {}

    def store(self) -> Dict[str, str]:
        """Read the file, validate the keys and return the stored values."""
        if not self.path.is_file():
            raise FileNotFoundError(f"configuration file not found: {self.path}")
        try:
            raw = dotenv_values(self.path, encoding="utf-8")
        except UnicodeDecodeError as e:
            raise InputError(f"file is not valid UTF-8: {e.reason}", path=self.path) from e
        for key, value in raw.items():
            key = key.strip()
            if self.allowed is not None and not self._is_allowed(key):
                raise InputError(f"unknown key {key!r}", path=self.path)
            if value is None or value.strip() == "":
                continue
            self.variables[key] = value.strip()
        log.debug("Read %s keys from %s", len(self.variables), self.path)
        return self.variables

    def _is_allowed(self, key: str) -> bool:
        for name in self.allowed or ():
            if name.endswith(".") and key.startswith(name) and len(key) > len(name):
                return True
            if key == name:
                return True
        return False


def read_config_values(path: Optional[Union[str, Path]]) -> Dict[str, str]:
    """Read an evaluation config file, rejecting unknown keys.

    Args:
        path (Optional[Union[str, Path]]): The config file, or None for the shipped defaults.

    Returns:
        Dict[str, str]: The raw values keyed by config key name.
    """
    allowed = [key.value for key in ConfigKey]
    target = DEFAULTS_PATH if path is None else path
    return KeyValueFile(target, allowed).store()
