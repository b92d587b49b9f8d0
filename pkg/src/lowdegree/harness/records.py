"""
One YAML record per repetition, plus a metadata sidecar per output directory.

Records carry only values that follow from the config and seed, so two runs with the same
inputs write byte-identical record files. Wall-clock timestamps go to the sidecar.
"""
import glob
import logging
import os
import time
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

import yaml

from .. import __version__
from ..bh.reports import to_builtin
from ..config import config
from ..core.exceptions import ConfigError

logger = logging.getLogger(__name__)

METADATA_FILE = "metadata.yaml"


@dataclass
class ExperimentRecord:
    task: str
    name: str
    repetition: int
    seed: int
    instance: Dict[str, Any] = field(default_factory=dict)
    params: Dict[str, Any] = field(default_factory=dict)
    options: Dict[str, Any] = field(default_factory=dict)
    result: Dict[str, Any] = field(default_factory=dict)
    checks: Dict[str, Any] = field(default_factory=dict)

    def to_document(self) -> Dict[str, Any]:
        return to_builtin({
            "task": self.task,
            "name": self.name,
            "repetition": self.repetition,
            "seed": self.seed,
            "instance": self.instance,
            "params": self.params,
            "options": self.options,
            "result": self.result,
            "checks": self.checks,
        })

    @classmethod
    def from_document(cls, document: Dict[str, Any]) -> "ExperimentRecord":
        try:
            return cls(task=document["task"], name=document.get("name", ""),
                       repetition=int(document["repetition"]), seed=int(document["seed"]),
                       instance=dict(document.get("instance") or {}), params=dict(document.get("params") or {}),
                       options=dict(document.get("options") or {}), result=dict(document.get("result") or {}),
                       checks=dict(document.get("checks") or {}))
        except (KeyError, TypeError, ValueError) as e:
            raise ConfigError(f"Malformed experiment record: {e}") from e

    def save(self, path: str) -> None:
        with open(path, "w") as f:
            yaml.safe_dump(self.to_document(), f, default_flow_style=False, sort_keys=False)

    @classmethod
    def load(cls, path: str) -> "ExperimentRecord":
        with open(path, "r") as f:
            document = yaml.safe_load(f)
        if not isinstance(document, dict):
            raise ConfigError(f"{path} is not an experiment record")
        return cls.from_document(document)


def record_path(directory: str, repetition: int) -> str:
    return os.path.join(directory, f"{config.harness.record_prefix}_{repetition:04d}.yaml")


def sample_log_path(directory: str, repetition: int) -> str:
    return os.path.join(directory, f"{config.harness.record_prefix}_{repetition:04d}.samples.jsonl")


def write_metadata(directory: str, extra: Optional[Dict[str, Any]] = None) -> str:
    """Timestamps and the active settings; the only file that changes between identical runs."""
    path = os.path.join(directory, METADATA_FILE)
    metadata = {
        "version": __version__,
        "settings": config.as_dict(),
    }
    if config.output.save_timestamp:
        metadata["written"] = time.strftime(config.output.timestamp_format, time.localtime())
    metadata.update(extra or {})
    with open(path, "w") as f:
        yaml.safe_dump(to_builtin(metadata), f, default_flow_style=False, sort_keys=False)
    return path


def find_records(paths: List[str]) -> List[str]:
    """Expand directories into their record files; plain files pass through."""
    found: List[str] = []
    pattern = f"{config.harness.record_prefix}_*.yaml"
    for path in paths:
        if os.path.isdir(path):
            found.extend(sorted(glob.glob(os.path.join(path, pattern))))
            found.extend(sorted(glob.glob(os.path.join(path, "*", pattern))))
        elif os.path.exists(path):
            found.append(path)
        else:
            raise ConfigError(f"Record path {path} does not exist")
    return found


def load_records(paths: List[str]) -> List[ExperimentRecord]:
    files = find_records(paths)
    if not files:
        raise ConfigError(f"No experiment records found under {paths}")
    records = [ExperimentRecord.load(path) for path in files]
    logger.info(f"Loaded {len(records)} records")
    return records
