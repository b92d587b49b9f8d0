import csv
import os

import pytest
import yaml

from lowdegree.core.channels import identity_channel
from lowdegree.core.exceptions import ConfigError, NotUnitaryError
from lowdegree.core.spectrum_io import save_spectrum
from lowdegree.harness.experiment import ExperimentConfig, inequality_check, resolve_instance, run_experiment
from lowdegree.harness.records import ExperimentRecord, METADATA_FILE, record_path, sample_log_path
from lowdegree.qqa.algorithm import product_of_dictators
from lowdegree.simulation.records import SampleLog

ADDRESS = {
    "task": "learn-boolean",
    "seed": 3,
    "repetitions": 3,
    "instance": {"family": "address", "d": 3},
    "params": {"d": 3, "epsilon": 0.1, "delta": 0.1},
    "options": {"mode": "quantum"},
}


def experiment(out=None, **changes) -> ExperimentConfig:
    document = dict(ADDRESS, **changes)
    if out is not None:
        document["out"] = str(out)
    return ExperimentConfig.from_document(document)


def read_bytes(path):
    with open(path, "rb") as f:
        return f.read()


def test_config_fields_are_checked():
    with pytest.raises(ConfigError, match="seed"):
        ExperimentConfig.from_document({k: v for k, v in ADDRESS.items() if k != "seed"})
    with pytest.raises(ConfigError, match="Unknown task"):
        experiment(task="learn-everything")
    with pytest.raises(ConfigError, match="Unknown experiment config fields"):
        experiment(colour="blue")
    with pytest.raises(ConfigError, match="learner parameters"):
        experiment(params={"d": 3, "epsilon": 2.0, "delta": 0.1})
    with pytest.raises(ConfigError, match="Repetitions"):
        experiment(repetitions=0)


def test_missing_instance_file(tmp_path):
    with pytest.raises(ConfigError, match="does not exist"):
        experiment(instance=str(tmp_path / "absent.yaml"))


def test_load_resolves_instance_relative_to_config(tmp_path):
    save_spectrum(identity_channel(1), str(tmp_path / "identity.yaml"))
    with open(tmp_path / "exp.yaml", "w") as f:
        yaml.safe_dump(dict(ADDRESS, task="learn-channel", instance="identity.yaml",
                            params={"d": 1, "epsilon": 0.1, "delta": 0.1}), f)
    loaded = ExperimentConfig.load(str(tmp_path / "exp.yaml"))
    assert loaded.instance == os.path.join(str(tmp_path), "identity.yaml")
    assert resolve_instance(loaded).degree == 0


def test_inline_instance_takes_the_experiment_seed():
    instance = resolve_instance(experiment(instance={"family": "boolean-junta", "n": 6, "k": 2}))
    assert instance.provenance["seed"] == 3


def test_overrides():
    base = experiment()
    changed = base.with_overrides(seed=11, out="elsewhere", shot_multiplier=0.5)
    assert (changed.seed, changed.out, changed.params["shot_multiplier"]) == (11, "elsewhere", 0.5)
    assert "shot_multiplier" not in base.params


def test_identity_channel_is_learned_within_epsilon(tmp_path):
    save_spectrum(identity_channel(1), str(tmp_path / "identity.yaml"))
    records = run_experiment(experiment(task="learn-channel", instance=str(tmp_path / "identity.yaml"),
                                        repetitions=2, options={},
                                        params={"d": 1, "epsilon": 0.1, "delta": 0.1}))
    for record in records:
        assert record.result["achieved_errors"]["l2"] <= 0.1
        assert record.checks["heavy_set_sound"] is True


def test_records_and_sidecars_are_written(tmp_path):
    records = run_experiment(experiment(out=tmp_path))
    assert [r.repetition for r in records] == [0, 1, 2]
    assert len({r.seed for r in records}) == 3
    for record in records:
        path = record_path(str(tmp_path), record.repetition)
        assert ExperimentRecord.load(path).to_document() == record.to_document()
        assert record.result["achieved_errors"]["exact"]
        log = SampleLog.read_jsonl(sample_log_path(str(tmp_path), record.repetition))
        assert log.total_queries() == record.result["total_queries"]
    with open(tmp_path / METADATA_FILE) as f:
        metadata = yaml.safe_load(f)
    assert metadata["experiment"]["task"] == "learn-boolean"


def test_same_seed_gives_identical_record_files(tmp_path):
    run_experiment(experiment(out=tmp_path / "a"))
    run_experiment(experiment(out=tmp_path / "b"), threads=3)
    for repetition in range(3):
        assert read_bytes(record_path(str(tmp_path / "a"), repetition)) == \
            read_bytes(record_path(str(tmp_path / "b"), repetition))


def test_learner_errors_propagate():
    with pytest.raises(NotUnitaryError):
        run_experiment(experiment(task="learn-unitary", options={},
                                  instance={"family": "pauli-mixture-channel", "n": 2, "d": 2, "seed": 1}))


def test_bh_verify_address_csv(tmp_path):
    records = run_experiment(experiment(task="bh-verify", params={"d": 3}, options={}, repetitions=1,
                                        out=tmp_path))
    assert records[0].checks["holds"]
    with open(tmp_path / "bh_verify.csv", newline="") as f:
        rows = list(csv.DictReader(f))
    assert len(rows) == 1
    assert abs(float(rows[0]["ratio"]) - 1.0) <= 1e-9
    assert rows[0]["d"] == "3"


def test_qqa_task_writes_tensor(tmp_path):
    records = run_experiment(experiment(task="qqa", params={}, options={"method": "both"}, repetitions=1,
                                        instance={"family": "random-qqa", "n": 2, "m": 2, "d": 2, "seed": 4},
                                        out=tmp_path))
    assert records[0].result["name"] == "cb"
    assert records[0].checks["holds"]
    assert os.path.exists(tmp_path / "tensor.csv")


def test_qqa_task_needs_an_algorithm():
    with pytest.raises(ConfigError, match="query-algorithm"):
        run_experiment(experiment(task="qqa", params={}, options={}, repetitions=1))


def test_inequality_check_dispatch():
    report = inequality_check(product_of_dictators(2, 1, 2), 2)
    assert report.ratio == pytest.approx(1.0)
    with pytest.raises(ConfigError):
        inequality_check("not an object", 1)
