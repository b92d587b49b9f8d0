"""
Per-seed rows and aggregate tables from experiment records.
"""
import csv
import logging
import os
from dataclasses import dataclass, field
from typing import Any, Dict, List, Sequence

import numpy as np
import yaml

from ..bh.reports import InequalityReport, to_builtin
from ..bh.sweeps import CSV_COLUMNS as SWEEP_COLUMNS
from ..bh.sweeps import SweepResult, SweepRow
from ..core.exceptions import ConfigError
from .experiment import LEARN_TASKS
from .records import ExperimentRecord

logger = logging.getLogger(__name__)

CSV_DELIMITER = ','
CSV_NEWLINE = ''
CSV_DIALECT = 'excel'

LEARN_COLUMNS = ("name", "repetition", "seed", "setting", "metric", "error", "bound", "success", "total_queries")
SUMMARY_COLUMNS = ("setting", "runs", "median_error", "p90_error", "success_fraction", "total_queries",
                   "mean_queries")
RATIO_COLUMNS = ("d", "max_ratio")

PER_SEED_CSV = "per_seed.csv"
SUMMARY_CSV = "summary.csv"
SUMMARY_YAML = "summary.yaml"


@dataclass
class Report:
    task: str
    columns: Sequence[str]
    rows: List[List[Any]]
    summary_columns: Sequence[str]
    summary: List[List[Any]]
    extras: Dict[str, Any] = field(default_factory=dict)

    def column(self, name: str, summary: bool = True) -> List[Any]:
        columns, rows = (self.summary_columns, self.summary) if summary else (self.columns, self.rows)
        index = list(columns).index(name)
        return [row[index] for row in rows]


def setting_of(record: ExperimentRecord) -> float:
    """The swept quantity: an explicit shot or probe count when given, else the shot multiplier."""
    for key in ("shots", "probes"):
        if record.options.get(key) is not None:
            return float(record.options[key])
    return float(record.params.get("shot_multiplier", 1.0))


def _task_of(records: List[ExperimentRecord]) -> str:
    if not records:
        raise ConfigError("Nothing to report")
    tasks = sorted({record.task for record in records})
    if len(tasks) > 1:
        raise ConfigError(f"Records mix tasks {tasks}; report one task at a time")
    return tasks[0]


def _learn_report(task: str, records: List[ExperimentRecord]) -> Report:
    rows = []
    for record in sorted(records, key=lambda r: (setting_of(r), r.name, r.repetition)):
        achieved = record.result.get("achieved_errors") or {}
        metric = achieved.get("metric")
        rows.append([record.name, record.repetition, record.seed, setting_of(record), metric,
                     achieved.get(metric), achieved.get("bound"), bool(achieved.get("success")),
                     int(record.result.get("total_queries", 0))])

    summary = []
    for setting in sorted({row[3] for row in rows}):
        group = [row for row in rows if row[3] == setting]
        errors = np.array([row[5] for row in group], dtype=float)
        queries = np.array([row[8] for row in group], dtype=float)
        summary.append([setting, len(group), float(np.median(errors)), float(np.percentile(errors, 90)),
                        float(np.mean([row[7] for row in group])), int(queries.sum()), float(queries.mean())])
    return Report(task=task, columns=LEARN_COLUMNS, rows=rows, summary_columns=SUMMARY_COLUMNS, summary=summary)


def _inequality_report(task: str, records: List[ExperimentRecord]) -> Report:
    sweep_rows = [SweepRow.from_report(record.repetition, record.seed, InequalityReport.from_document(record.result))
                  for record in sorted(records, key=lambda r: (r.name, r.repetition))]
    sweep = SweepResult(name=task, seed=sweep_rows[0].seed, rows=sweep_rows)
    rows = [[row.instance_id, row.d, row.n, row.lhs, row.rhs, row.ratio, row.field, row.seed] for row in sweep_rows]
    summary = [[d, ratio] for d, ratio in sweep.max_ratio_per_d().items()]
    return Report(task=task, columns=SWEEP_COLUMNS, rows=rows, summary_columns=RATIO_COLUMNS, summary=summary,
                  extras=sweep.summary())


def build_report(records: List[ExperimentRecord]) -> Report:
    task = _task_of(records)
    if task in LEARN_TASKS:
        return _learn_report(task, records)
    return _inequality_report(task, records)


def write_table(path: str, columns: Sequence[str], rows: List[List[Any]]) -> None:
    with open(path, 'w', newline=CSV_NEWLINE) as f:
        writer = csv.writer(f, dialect=CSV_DIALECT, delimiter=CSV_DELIMITER)
        writer.writerow(columns)
        for row in rows:
            writer.writerow([repr(v) if isinstance(v, float) else v for v in row])


def write_report(report: Report, directory: str) -> Dict[str, str]:
    os.makedirs(directory, exist_ok=True)
    paths = {name: os.path.join(directory, name) for name in (PER_SEED_CSV, SUMMARY_CSV, SUMMARY_YAML)}
    write_table(paths[PER_SEED_CSV], report.columns, report.rows)
    write_table(paths[SUMMARY_CSV], report.summary_columns, report.summary)
    document = {
        "task": report.task,
        "runs": len(report.rows),
        "summary": [dict(zip(report.summary_columns, row)) for row in report.summary],
    }
    document.update(report.extras)
    with open(paths[SUMMARY_YAML], 'w') as f:
        yaml.safe_dump(to_builtin(document), f, default_flow_style=False, sort_keys=False)
    logger.info(f"Wrote {report.task} report ({len(report.rows)} rows) to {directory}")
    return paths
