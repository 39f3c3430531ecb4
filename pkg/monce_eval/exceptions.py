""" Exceptions raised by the monce_eval package. """

from pathlib import Path
from typing import Optional, Union


class MonceError(Exception):
    """Base class for all monce_eval errors."""


class InputError(MonceError, ValueError):
    """Raised when a track, config, scenario or report input is malformed.

    Args:
        message (str): What is wrong with the input.
        path (Optional[Union[str, Path]]): The offending file, if any.
        line (Optional[int]): The 1-based line number, if known.
    """

    def __init__(
        self,
        message: str,
        path: Optional[Union[str, Path]] = None,
        line: Optional[int] = None,
    ):
        self.message = message
        self.path = str(path) if path is not None else None
        self.line = line
        location = ""
        if self.path is not None:
            location = self.path if line is None else f"{self.path}:{line}"
        elif line is not None:
            location = f"line {line}"
        super().__init__(f"{location}: {message}" if location else message)


class EvaluationError(MonceError, ValueError):
    """Raised when a metric cannot be computed from the given inputs."""


class MatcherInvariantError(MonceError, RuntimeError):
    """Raised when the association state would be rewritten (a matcher bug)."""
