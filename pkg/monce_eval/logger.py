""" This module provides a custom logger for the application. """

import logging
import sys

module_aliases = {
    "__main__": "Main",
    "monce_eval.__main__": "Main",
    "monce_eval.evaluation": "Evaluation",
    "monce_eval.ingest": "Ingest",
    "monce_eval.sequences": "Sequences",
    "monce_eval.plotting": "Plotting",
    "monce_eval.configuration.config": "Config",
    "monce_eval.configuration.base_config": "Config",
    "monce_eval.configuration.output": "Output",
    "monce_eval.matching.assignment": "Matcher",
    "monce_eval.matching.association": "Matcher",
    "monce_eval.matching.classify": "Matcher",
    "monce_eval.metrics.curves": "Metrics",
    "monce_eval.metrics.summary": "Metrics",
    "monce_eval.metrics.report": "Report",
    "monce_eval.synth.scenario": "Synth",
    "monce_eval.synth.oracle": "Oracle",
    "monce_eval.utilities.utils": "Utilities",
}

LOG_FORMAT = "%(asctime)s | %(name)s | %(levelname)s%(message)s"
TARGET_ALIAS_LENGTH = 15

_created_loggers = set()


class CustomFormatter(logging.Formatter):
    """Hides the INFO level name and brackets every other level."""

    def __init__(self):
        super().__init__(LOG_FORMAT, datefmt="%H:%M:%S")

    def format(self, record):
        level = record.levelname
        record.levelname = "" if level == "INFO" else f"[{level}] "
        try:
            return super().format(record)
        finally:
            record.levelname = level


def alias_for(name: str) -> str:
    """Fixed-width alias for a module: its table entry, else the last dotted part."""
    alias = module_aliases.get(name, name.rsplit(".", maxsplit=1)[-1])
    return alias[:TARGET_ALIAS_LENGTH].ljust(TARGET_ALIAS_LENGTH)


def get_logger(name: str) -> logging.Logger:
    """Get the stderr logger for a module, creating its handler on first use."""
    alias = alias_for(name)
    logger = logging.getLogger(alias)
    if not logger.handlers:
        handler = logging.StreamHandler(sys.stderr)
        handler.setFormatter(CustomFormatter())
        logger.addHandler(handler)
        logger.setLevel(logging.INFO)
        logger.propagate = False
    _created_loggers.add(alias)
    return logger


def set_log_level(level: str) -> None:
    """Apply a level name (e.g. "DEBUG") to every logger created by get_logger."""
    numeric = logging.getLevelName(level.upper())
    if not isinstance(numeric, int):
        raise ValueError(f"Unknown log level: {level}")
    for alias in _created_loggers:
        logging.getLogger(alias).setLevel(numeric)
