"""Utility functions for monce_eval."""

from .utils import (
    create_contents,
    format_percentage,
    format_score,
    markdown_table,
)

__all__ = [
    "create_contents",
    "format_percentage",
    "format_score",
    "markdown_table",
]
