"""
Experiment configs and their execution.

An experiment config is a YAML document mirroring ExperimentConfig::

    task: learn-channel
    name: channel-n3-d2
    seed: 7
    repetitions: 20
    instance: {family: pauli-mixture-channel, n: 3, d: 2, sparsity: 5, seed: 11}
    params: {d: 2, epsilon: 0.15, delta: 0.1}
    options: {}
    out: output_data/channel-n3-d2

`instance` is either an inline family description or the path of a generated instance file
(relative paths are taken from the config file's directory).
"""
import copy
import logging
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Any, Callable, Dict, List, Optional, Union

import yaml

from ..bh.cb import bh_cb_check
from ..bh.inequalities import bh_check_boolean, bh_check_channel, bh_check_operator
from ..bh.reports import InequalityReport
from ..bh.sweeps import SweepResult, SweepRow, instance_seeds, write_sweep_csv
from ..config import config
from ..core.exceptions import ConfigError, InvalidInputError
from ..core.spectra import BooleanSpectrum, OperatorSpectrum, SuperopSpectrum
from ..learning import (LearnParams, LearnReport, heavy_set_sound, learn_boolean_exact, learn_bounded_poly,
                        learn_channel, learn_pauli_channel, learn_pauli_channel_entangled,
                        learn_tensor_from_oracle, learn_unitary, score_report)
from ..qqa.algorithm import QueryAlgorithm, qqa_extract_tensor
from ..qqa.io import save_tensor_csv
from ..simulation.oracle import SimulatedOracle
from .instances import Instance, generate, load_instance
from .records import ExperimentRecord, record_path, sample_log_path, write_metadata

logger = logging.getLogger(__name__)

LEARN_TASKS = ("learn-channel", "learn-unitary", "learn-pauli-channel", "learn-boolean", "learn-poly",
               "learn-tensor")
TASKS = LEARN_TASKS + ("bh-verify", "qqa")

BH_VERIFY_CSV = "bh_verify.csv"
TENSOR_CSV = "tensor.csv"


@dataclass
class ExperimentConfig:
    task: str
    instance: Union[str, Dict[str, Any]]
    seed: int
    params: Dict[str, Any] = field(default_factory=dict)
    repetitions: int = 1
    out: Optional[str] = None
    options: Dict[str, Any] = field(default_factory=dict)
    name: str = ""

    def __post_init__(self):
        if self.task not in TASKS:
            raise ConfigError(f"Unknown task {self.task!r}; expected one of {TASKS}")
        if self.seed is None:
            raise ConfigError("Experiment config needs a seed")
        try:
            self.seed = int(self.seed)
            self.repetitions = int(self.repetitions)
        except (TypeError, ValueError) as e:
            raise ConfigError(f"Seed and repetitions must be integers: {e}") from e
        if self.repetitions < 1:
            raise ConfigError(f"Repetitions must be at least 1, got {self.repetitions}")
        if isinstance(self.instance, str):
            if not os.path.exists(self.instance):
                raise ConfigError(f"Instance file {self.instance} does not exist")
        elif not isinstance(self.instance, dict):
            raise ConfigError("Instance must be a family description or a file path")
        if self.task in LEARN_TASKS:
            self.learn_params()
        self.name = self.name or self.task

    def learn_params(self) -> LearnParams:
        try:
            return LearnParams(**self.params)
        except (TypeError, InvalidInputError) as e:
            raise ConfigError(f"Invalid learner parameters {self.params}: {e}") from e

    def with_overrides(self, seed: Optional[int] = None, out: Optional[str] = None,
                       shot_multiplier: Optional[float] = None) -> "ExperimentConfig":
        params = dict(self.params)
        if shot_multiplier is not None:
            params["shot_multiplier"] = float(shot_multiplier)
        return replace(self, seed=self.seed if seed is None else seed, out=out or self.out, params=params)

    def to_document(self) -> Dict[str, Any]:
        return {"task": self.task, "name": self.name, "seed": self.seed, "repetitions": self.repetitions,
                "instance": copy.deepcopy(self.instance), "params": dict(self.params),
                "options": dict(self.options), "out": self.out}

    @classmethod
    def from_document(cls, document: Dict[str, Any], base_dir: str = ".") -> "ExperimentConfig":
        if not isinstance(document, dict):
            raise ConfigError("Experiment config must be a mapping")
        unknown = set(document) - {"task", "instance", "seed", "params", "repetitions", "out", "options", "name"}
        if unknown:
            raise ConfigError(f"Unknown experiment config fields {sorted(unknown)}")
        for required in ("task", "instance", "seed"):
            if document.get(required) is None:
                raise ConfigError(f"Experiment config is missing {required!r}")
        instance = document["instance"]
        if isinstance(instance, str) and not os.path.isabs(instance):
            instance = os.path.join(base_dir, instance)
        return cls(task=document["task"], instance=instance, seed=document["seed"],
                   params=dict(document.get("params") or {}), repetitions=document.get("repetitions", 1),
                   out=document.get("out"), options=dict(document.get("options") or {}),
                   name=document.get("name") or "")

    @classmethod
    def load(cls, path: str) -> "ExperimentConfig":
        if not os.path.exists(path):
            raise ConfigError(f"Experiment config {path} does not exist")
        with open(path, "r") as f:
            try:
                document = yaml.safe_load(f)
            except yaml.YAMLError as e:
                raise ConfigError(f"{path} is not valid YAML: {e}") from e
        return cls.from_document(document, base_dir=os.path.dirname(os.path.abspath(path)))


def resolve_instance(experiment: ExperimentConfig) -> Instance:
    """Load the instance file, or generate the inline family (seeded by the experiment if unseeded)."""
    if isinstance(experiment.instance, str):
        return load_instance(experiment.instance)
    params = dict(experiment.instance)
    params.setdefault("seed", experiment.seed)
    return generate(params)


# ----------------------------------------------------------------------------
# Learning tasks
# ----------------------------------------------------------------------------
def _learner(experiment: ExperimentConfig) -> Callable[[SimulatedOracle, LearnParams], LearnReport]:
    options = experiment.options
    task = experiment.task
    if task == "learn-channel":
        return lambda oracle, params: learn_channel(oracle, params, options.get("rule"))
    if task == "learn-unitary":
        return learn_unitary
    if task == "learn-pauli-channel":
        if options.get("variant", "unentangled") == "entangled":
            return lambda oracle, params: learn_pauli_channel_entangled(oracle, params, options.get("shots"))
        return lambda oracle, params: learn_pauli_channel(oracle, params, options.get("probes"))
    if task == "learn-boolean":
        return lambda oracle, params: learn_boolean_exact(oracle, params, options.get("mode", "classical"))
    if task == "learn-poly":
        return learn_bounded_poly
    return learn_tensor_from_oracle


def _truth(experiment: ExperimentConfig, instance: Instance):
    if experiment.task == "learn-tensor":
        if not isinstance(instance.target, QueryAlgorithm):
            raise ConfigError("learn-tensor needs a query-algorithm instance")
        return qqa_extract_tensor(instance.target)
    return instance.target


def _learn_once(experiment: ExperimentConfig, instance: Instance, truth, repetition: int, seed: int,
                out: Optional[str]) -> ExperimentRecord:
    params = experiment.learn_params()
    oracle = SimulatedOracle(instance.target, seed=seed)
    report = _learner(experiment)(oracle, params)
    score_report(report, truth)
    checks: Dict[str, Any] = {}
    if experiment.task == "learn-channel":
        checks["heavy_set_sound"] = heavy_set_sound(report, truth)
    result = report.to_document()
    result["total_queries"] = report.total_queries
    if out and oracle.log.enabled:
        oracle.log.write_jsonl(sample_log_path(out, repetition))
    metric = report.achieved["metric"]
    logger.info(f"{experiment.name} #{repetition}: {metric} = {report.achieved[metric]:.4g} with "
                f"{report.total_queries} queries")
    return ExperimentRecord(task=experiment.task, name=experiment.name, repetition=repetition, seed=seed,
                            instance=instance.provenance, params=params.as_dict(),
                            options=dict(experiment.options), result=result, checks=checks)


# ----------------------------------------------------------------------------
# Inequality tasks
# ----------------------------------------------------------------------------
def inequality_check(target, d: int, seed: int = 0, method: str = "algebraic") -> InequalityReport:
    """The inequality that applies to the instance's type."""
    if isinstance(target, BooleanSpectrum):
        return bh_check_boolean(target, d)
    if isinstance(target, SuperopSpectrum):
        return bh_check_channel(target, d, seed=seed)
    if isinstance(target, OperatorSpectrum):
        return bh_check_operator(target, d)
    if isinstance(target, QueryAlgorithm):
        return bh_cb_check(qqa_extract_tensor(target, method=method).tensor)
    raise ConfigError(f"No inequality applies to {type(target).__name__}")


def _check_once(experiment: ExperimentConfig, instance: Instance, repetition: int, seed: int) -> ExperimentRecord:
    d = int(experiment.params.get("d", instance.degree))
    method = experiment.options.get("method", "algebraic")
    if experiment.task == "qqa" and not isinstance(instance.target, QueryAlgorithm):
        raise ConfigError("qqa needs a query-algorithm instance")
    report = inequality_check(instance.target, d, seed=seed, method=method)
    return ExperimentRecord(task=experiment.task, name=experiment.name, repetition=repetition, seed=seed,
                            instance=instance.provenance, params=dict(experiment.params),
                            options=dict(experiment.options), result=report.to_document(),
                            checks={"holds": report.holds})


def _write_check_outputs(experiment: ExperimentConfig, instance: Instance, records: List[ExperimentRecord],
                         out: str) -> None:
    rows = [SweepRow.from_report(record.repetition, record.seed, InequalityReport.from_document(record.result))
            for record in records]
    write_sweep_csv(SweepResult(name=experiment.name, seed=experiment.seed, rows=rows),
                    os.path.join(out, BH_VERIFY_CSV))
    if experiment.task == "qqa":
        tensor = qqa_extract_tensor(instance.target, method=experiment.options.get("method", "algebraic")).tensor
        save_tensor_csv(tensor, os.path.join(out, TENSOR_CSV))


# ----------------------------------------------------------------------------
# Driver
# ----------------------------------------------------------------------------
def run_experiment(experiment: ExperimentConfig, threads: Optional[int] = None) -> List[ExperimentRecord]:
    """
    Run every repetition and write one record each when `out` is set.

    Repetition i uses the i-th seed split from the experiment seed, so the records do not depend
    on the thread count or on scheduling order.
    """
    instance = resolve_instance(experiment)
    seeds = instance_seeds(experiment.seed, experiment.repetitions)
    workers = max(1, int(threads or config.harness.threads))
    out = experiment.out
    if out:
        os.makedirs(out, exist_ok=True)
    logger.info(f"Running {experiment.name} ({experiment.task}): {experiment.repetitions} repetitions, "
                f"{workers} worker(s)")

    if experiment.task in LEARN_TASKS:
        truth = _truth(experiment, instance)

        def one(i: int) -> ExperimentRecord:
            return _learn_once(experiment, instance, truth, i, seeds[i], out)
    else:
        def one(i: int) -> ExperimentRecord:
            return _check_once(experiment, instance, i, seeds[i])

    if workers == 1:
        records = [one(i) for i in range(experiment.repetitions)]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            records = list(pool.map(one, range(experiment.repetitions)))

    if out:
        for record in records:
            record.save(record_path(out, record.repetition))
        if experiment.task not in LEARN_TASKS:
            _write_check_outputs(experiment, instance, records, out)
        write_metadata(out, {"experiment": experiment.to_document()})
        logger.info(f"Wrote {len(records)} records to {out}")
    return records
