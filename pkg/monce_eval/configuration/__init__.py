"""Configuration package for monce_eval."""

from .base_config import ConfigKey, KeyValueFile, read_config_values
from .config import EvalConfig, config_from_values
from .output import Output

__all__ = [
    "ConfigKey",
    "KeyValueFile",
    "read_config_values",
    "EvalConfig",
    "config_from_values",
    "Output",
]
