""" Shared fixtures for the monce_eval test suite. """

from pathlib import Path

import pytest

from monce_eval.configuration import EvalConfig
from monce_eval.typings import UidCriterion


@pytest.fixture
def cfg() -> EvalConfig:
    """Default evaluation configuration."""
    return EvalConfig()


@pytest.fixture
def any_uid() -> UidCriterion:
    return UidCriterion.ANY_UID


@pytest.fixture
def write_file(tmp_path: Path):
    """Write text to a file under tmp_path and return its path."""

    def _write(name: str, content: str) -> Path:
        path = tmp_path / name
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(content, encoding="utf-8")
        return path

    return _write
