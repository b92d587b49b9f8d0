"""
Static plots generated from report tables.
"""
import collections
import logging
import os
import re
from typing import Dict

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402

from ..harness.reporting import Report  # noqa: E402

logger = logging.getLogger(__name__)

FIGURE_SIZE = (8, 5)
FIGURE_DPI = 120


def _file_name(name: str) -> str:
    return re.sub(r"[^A-Za-z0-9_.-]+", "_", name).strip("_") + ".png"


class FigureCollection:
    """Named matplotlib figures written out together as PNG files."""

    def __init__(self, title=""):
        self.title = " ".join(title.splitlines())  # one line title
        self.figures = collections.OrderedDict()  # remember placement order

    def __str__(self):
        return f"{self.title} ({len(self.figures)} figure(s))"

    def __len__(self):
        return len(self.figures)

    def add_figure(self, name, fig):
        fig.tight_layout()
        self.figures[name] = fig

    def save(self, directory) -> Dict[str, str]:
        """Write every figure as <name>.png and release it."""
        os.makedirs(directory, exist_ok=True)
        paths = {}
        for name, fig in self.figures.items():
            path = os.path.join(directory, _file_name(name))
            fig.savefig(path, dpi=FIGURE_DPI)
            plt.close(fig)
            paths[name] = path
        logger.info(f"Saved {len(paths)} figure(s) of '{self.title}' to {directory}")
        self.figures.clear()
        return paths


class ReportFigures(FigureCollection):
    def __init__(self, report: Report):
        super().__init__(title=f"{report.task} report")
        self.report = report

    def set_error_plot(self):
        """Median and 90th percentile error against the swept setting."""
        settings = self.report.column("setting")
        fig = plt.figure(figsize=FIGURE_SIZE)
        axes = fig.add_subplot(111)
        axes.set_title(f"{self.report.task}: error vs shots", va='bottom')
        axes.plot(settings, self.report.column("median_error"), 'o-', label="median")
        axes.plot(settings, self.report.column("p90_error"), 's--', label="90th percentile")
        if len(settings) > 1 and min(settings) > 0:
            axes.set_xscale("log")
        axes.set_xlabel("shot setting")
        axes.set_ylabel("achieved error")
        axes.legend()
        axes.grid(True)
        super().add_figure("error_vs_shots", fig)

    def set_ratio_plot(self):
        """Largest inequality ratio per degree, with the ratio-1 line."""
        degrees = self.report.column("d")
        fig = plt.figure(figsize=FIGURE_SIZE)
        axes = fig.add_subplot(111)
        axes.set_title(f"{self.report.task}: max ratio per degree", va='bottom')
        axes.bar([str(d) for d in degrees], self.report.column("max_ratio"))
        axes.axhline(1.0, color='k', linestyle=':')
        axes.set_xlabel("d")
        axes.set_ylabel("lhs / rhs")
        axes.grid(True, axis='y')
        super().add_figure("max_ratio_per_d", fig)

    def build(self) -> "ReportFigures":
        if "setting" in self.report.summary_columns:
            self.set_error_plot()
        else:
            self.set_ratio_plot()
        return self


def save_report_figures(report: Report, directory: str) -> Dict[str, str]:
    return ReportFigures(report).build().save(directory)
