""" Output module for creating and managing the evaluation output folder. """

from pathlib import Path
import re
from typing import Dict, List

import markdown

from ..typings import MetricReport, PlotKind
from ..utilities import create_contents, format_percentage, format_score, markdown_table
from ..logger import get_logger

log = get_logger(__name__)

REPORT_FILE = "report.json"
DASHBOARD_FILE = "dashboard.md"

MIDDLE_ROW = (PlotKind.RECALL, PlotKind.PRECISION)
BOTTOM_ROW = (
    PlotKind.LONGEVITY_COUNTS,
    PlotKind.LONGEVITY_RATE,
    PlotKind.LOCALIZATION,
    PlotKind.ABSENCE,
)


class Output:
    """Output module for the report, dashboard panels and dashboard page.

    Args:
        folder (str): The folder to save the output files in.
        html (bool): Also convert the dashboard to HTML on finalize."""

    def __init__(self, folder: str, html: bool = False):
        self.html = html
        self.folder = Path(folder)
        self.path = self.folder / DASHBOARD_FILE
        self.setup_folder()

    @property
    def report_path(self) -> Path:
        """Where the report JSON is written."""
        return self.folder / REPORT_FILE

    def plot_path(self, kind: PlotKind) -> Path:
        """Where the SVG of a dashboard panel is written."""
        return self.folder / f"{kind.value}.svg"

    def setup_folder(self):
        """Create the output folder and start a fresh dashboard."""
        try:
            self.folder.mkdir(parents=True, exist_ok=True)
            if self.path.exists():
                self.path.unlink()
            self.path.touch()
        except (FileNotFoundError, PermissionError) as e:
            log.error("Error occurred while initializing Output: %s", e)
            raise

    def write(self, content: str):
        """Append content to the dashboard.

        Args:
            content (str): The content to write."""
        with open(self.path, "a", encoding="utf-8") as file_output:
            file_output.write(content)

    def read(self) -> str:
        """Read the content of the dashboard."""
        with open(self.path, "r", encoding="utf-8") as file:
            return file.read()

    def write_plot(self, kind: PlotKind, svg: str) -> Path:
        """Write one rendered panel.

        Args:
            kind (PlotKind): The panel.
            svg (str): The SVG text.

        Returns:
            Path: The written file."""
        path = self.plot_path(kind)
        with open(path, "w", encoding="utf-8", newline="\n") as file_output:
            file_output.write(svg)
        log.debug("Wrote %s", path)
        return path

    def write_dashboard(self, report: MetricReport, plots: Dict[PlotKind, Path]):
        """Write the dashboard: summary numbers, then recall and precision panels,
        then longevity, localization and absence panels."""
        self.write("# MONCE evaluation\n\n<TABLEOFCONTENTS>\n\n")
        self.write("## Summary\n\n")
        self.write(markdown_table(["Score", "Value"], _summary_rows(report)))
        self.write("\n## Recall and precision\n\n")
        self.write(_image_row(plots, MIDDLE_ROW))
        self.write("\n## Longevity, localization and absence\n\n")
        self.write(_image_row(plots, BOTTOM_ROW))
        self.write("\n## Configuration\n\n")
        self.write(
            markdown_table(
                ["Key", "Value"],
                [[k, _config_value(v)] for k, v in sorted(report.config.to_dict().items())],
            )
        )
        self.set_toc()

    def set_toc(self):
        """Replace the contents placeholder with links to each second-level header."""
        content = self.read()
        headers = re.findall(r"^##\s+(.+)$", content, re.MULTILINE)
        updated_content = content.replace("<TABLEOFCONTENTS>", create_contents(headers).rstrip())
        with open(self.path, "w", encoding="utf-8") as file_output:
            file_output.write(updated_content)

    def finalize(self):
        """Finalize the dashboard, converting it to HTML when requested."""
        if self.html:
            html_text = markdown.markdown(self.read(), extensions=["tables"])
            file_html = self.path.with_suffix(".html")
            with open(file_html, "w", encoding="utf-8") as file:
                file.write(html_text)
            log.info("Wrote %s", file_html)
        log.info("Finalized the output folder %s", self.folder)


def _summary_rows(report: MetricReport) -> List[List[str]]:
    kde = report.kde_range
    rows = []
    for criterion in report.criteria:
        marker = " (headline)" if criterion is report.headline_criterion else ""
        rows.append(
            [f"EAO, {criterion.label}{marker}", format_score(report.eao_by_criterion[criterion])]
        )
        rows.append(
            [
                f"EAO_P, {criterion.label}{marker}",
                format_score(report.eao_p_by_criterion[criterion]),
            ]
        )
    rows.append(
        [
            "EAO range",
            f"[{kde.t_lo}, {kde.t_hi}] frames, peak {kde.peak_length}, "
            f"bandwidth {kde.bandwidth:.2f} ({kde.rule})",
        ]
    )
    for p, t in sorted(report.longevity_stats.items()):
        rows.append([f"Longevity at {format_percentage(p)}", f"{t} frames"])
    reid = report.reid
    rows.append(
        [
            f"REID short term (< {reid.threshold} frames)",
            f"{format_score(reid.short_rate)} ({reid.short_count} absences)",
        ]
    )
    rows.append(
        [
            f"REID long term (>= {reid.threshold} frames)",
            f"{format_score(reid.long_rate)} ({reid.long_count} absences)",
        ]
    )
    rows.append(["Ground truth sequences", str(report.sequence_count)])
    rows.append(["Never associated predicted tracks", str(report.orphan_track_count)])
    rows.append(["Video length", f"{report.video_length} frames"])
    return rows


def _image_row(plots: Dict[PlotKind, Path], kinds) -> str:
    images = [f"![{kind.value}]({plots[kind].name})" for kind in kinds if kind in plots]
    return " ".join(images) + "\n"


def _config_value(value) -> str:
    if value is None:
        return "-"
    if isinstance(value, list):
        return ", ".join(str(v) for v in value)
    return str(value)
