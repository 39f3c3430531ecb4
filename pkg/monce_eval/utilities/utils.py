""" This module contains formatting helpers shared by the dashboard and the CLI. """

import re
from typing import List, Optional

from ..logger import get_logger

log = get_logger(__name__)


def format_score(value: Optional[float], digits: int = 3) -> str:
    """Format a score for display; undefined scores read "n/a".

    Args:
        value (Optional[float]): The score.
        digits (int): Decimal places.

    Returns:
        str: The formatted score."""
    if value is None:
        return "n/a"
    return f"{value:.{digits}f}"


def format_percentage(p: float) -> str:
    """0.5 -> "50%", 0.95 -> "95%", 0.125 -> "12.5%"."""
    text = f"{p * 100:.6f}".rstrip("0").rstrip(".")
    return f"{text}%"


def create_contents(input_array: List[str]) -> str:
    """
    Converts a list of section headers into a markdown table of contents.

    Args:
        input_array (List[str]): The section headers.

    Returns:
        str: The markdown table of contents.

    """
    markdown_links = []
    for item in input_array:
        anchor = re.sub(r"[^\w-]", "", item.replace(" ", "-")).lower()
        markdown_links.append(f"- [{item}](#{anchor})\n")
    return "".join(markdown_links)


def markdown_table(header: List[str], rows: List[List[str]]) -> str:
    """Render a simple pipe table."""
    lines = [
        "| " + " | ".join(header) + " |",
        "| " + " | ".join("-" for _ in header) + " |",
    ]
    lines.extend("| " + " | ".join(row) + " |" for row in rows)
    return "\n".join(lines) + "\n"
