import csv

import pytest
import yaml

from lowdegree.bh.address import address_function
from lowdegree.bh.inequalities import bh_check_boolean
from lowdegree.core.exceptions import ConfigError
from lowdegree.harness.records import ExperimentRecord, load_records, record_path
from lowdegree.harness.reporting import (PER_SEED_CSV, SUMMARY_CSV, SUMMARY_YAML, build_report, setting_of,
                                         write_report)


def learn_record(repetition, tv, multiplier=1.0, queries=100, options=None):
    return ExperimentRecord(
        task="learn-pauli-channel", name="pauli", repetition=repetition, seed=repetition,
        params={"d": 2, "epsilon": 0.2, "delta": 0.1, "c_override": None, "shot_multiplier": multiplier},
        options=dict(options or {}),
        result={"achieved_errors": {"tv": tv, "metric": "tv", "bound": 0.1, "success": tv <= 0.1},
                "total_queries": queries})


def bh_record(repetition, d):
    report = bh_check_boolean(address_function(d), d)
    return ExperimentRecord(task="bh-verify", name="address", repetition=repetition, seed=repetition,
                            result=report.to_document())


def test_single_record_gives_one_row():
    report = build_report([learn_record(0, 0.05)])
    assert len(report.rows) == 1
    assert report.summary == [[1.0, 1, 0.05, 0.05, 1.0, 100, 100.0]]


def test_success_fraction_counts_tv_within_half_epsilon():
    records = [learn_record(i, tv) for i, tv in enumerate([0.01, 0.05, 0.09, 0.11, 0.3])]
    report = build_report(records)
    assert report.column("success_fraction") == [pytest.approx(0.6)]
    assert report.column("median_error") == [pytest.approx(0.09)]
    assert report.column("total_queries") == [500]


def test_rows_are_grouped_by_setting():
    records = [learn_record(i, 0.1 / m, multiplier=m) for i, m in enumerate([4.0, 0.25, 1.0, 1.0])]
    report = build_report(records)
    assert report.column("setting") == [0.25, 1.0, 4.0]
    assert report.column("runs") == [1, 2, 1]
    assert report.column("setting", summary=False) == [0.25, 1.0, 1.0, 4.0]


def test_explicit_shots_are_the_setting():
    assert setting_of(learn_record(0, 0.1, options={"shots": 1000})) == 1000.0
    assert setting_of(learn_record(0, 0.1, options={"probes": 50})) == 50.0
    assert setting_of(learn_record(0, 0.1, multiplier=0.5)) == 0.5


def test_mixed_tasks_are_refused():
    with pytest.raises(ConfigError, match="mix tasks"):
        build_report([learn_record(0, 0.1), bh_record(0, 2)])
    with pytest.raises(ConfigError):
        build_report([])


def test_bh_records_give_max_ratio_per_d():
    report = build_report([bh_record(i, d) for i, d in enumerate([2, 3, 3, 4])])
    assert report.column("d") == [2, 3, 4]
    for ratio in report.column("max_ratio"):
        assert abs(ratio - 1.0) <= 1e-9
    assert report.extras["all_hold"]


def test_written_tables(tmp_path):
    report = build_report([learn_record(i, 0.02 * (i + 1)) for i in range(4)])
    paths = write_report(report, str(tmp_path))
    with open(paths[PER_SEED_CSV], newline="") as f:
        rows = list(csv.DictReader(f))
    assert len(rows) == 4 and rows[0]["metric"] == "tv"
    with open(paths[SUMMARY_CSV], newline="") as f:
        assert next(csv.reader(f))[:3] == ["setting", "runs", "median_error"]
    with open(paths[SUMMARY_YAML]) as f:
        summary = yaml.safe_load(f)
    assert summary["runs"] == 4
    assert summary["summary"][0]["success_fraction"] == 1.0


def test_records_round_trip_through_directories(tmp_path):
    for i in range(3):
        learn_record(i, 0.05).save(record_path(str(tmp_path), i))
    (tmp_path / "notes.txt").write_text("not a record")
    records = load_records([str(tmp_path)])
    assert [r.repetition for r in records] == [0, 1, 2]
    with pytest.raises(ConfigError):
        load_records([str(tmp_path / "missing")])
