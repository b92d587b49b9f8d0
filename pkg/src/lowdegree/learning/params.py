"""
Learner inputs and outputs.

A LearnReport serializes to YAML as::

    algorithm: learn_channel
    params: {d: 2, epsilon: 0.15, delta: 0.1, c_override: null, shot_multiplier: 1.0}
    queries: {choi_diag: 1460, channel_swap: 192000}
    threshold: 1.78e-07
    heavy_set: ["000", "100"]
    budget: {phase1_shots: 1460, pair_shots: 3000}
    learned: <spectrum document, or a tensor document for learn_tensor_ei>
    achieved_errors: {l2: 0.012}
"""
import logging
import math
from dataclasses import asdict, dataclass, field
from typing import Any, Dict, List, Optional, Union

import numpy as np
import yaml

from ..bh.reports import to_builtin
from ..bh.tensor import MultilinearTensor
from ..core.exceptions import InvalidInputError
from ..core.spectra import BooleanSpectrum, OperatorSpectrum, SuperopSpectrum
from ..core.spectrum_io import spectrum_from_document, spectrum_to_document

logger = logging.getLogger(__name__)

Learned = Union[SuperopSpectrum, OperatorSpectrum, BooleanSpectrum, MultilinearTensor]


@dataclass(frozen=True)
class LearnParams:
    d: int
    epsilon: float
    delta: float
    c_override: Optional[float] = None
    shot_multiplier: float = 1.0

    def __post_init__(self):
        if int(self.d) < 1:
            raise InvalidInputError(f"Degree bound must be at least 1, got {self.d}")
        for name in ("epsilon", "delta"):
            value = getattr(self, name)
            if not 0.0 < value < 1.0:
                raise InvalidInputError(f"{name} must lie in (0, 1), got {value}")
        if self.c_override is not None and self.c_override <= 0:
            raise InvalidInputError(f"Threshold override must be positive, got {self.c_override}")
        if self.shot_multiplier < 0:
            raise InvalidInputError(f"Shot multiplier must be non-negative, got {self.shot_multiplier}")
        object.__setattr__(self, "d", int(self.d))

    def scaled(self, count: float, floor: int = 1) -> int:
        """Shot count for a theory-shaped `count`, after the multiplier and never below `floor`."""
        return max(int(floor), int(math.ceil(count * self.shot_multiplier)))

    def as_dict(self) -> Dict[str, Any]:
        return asdict(self)


def _tensor_to_document(tensor: MultilinearTensor) -> Dict[str, Any]:
    entries = []
    for index, value in tensor.items():
        value = complex(value)
        entries.append({"key": list(index), "re": float(value.real), "im": float(value.imag)})
    return {"kind": "tensor", "d": tensor.d, "n": tensor.n, "field": tensor.field, "entries": entries}


def _tensor_from_document(document: Dict[str, Any]) -> MultilinearTensor:
    entries = {tuple(e["key"]): complex(float(e["re"]), float(e["im"])) for e in document.get("entries") or []}
    return MultilinearTensor.from_entries(int(document["d"]), int(document["n"]), entries,
                                         field=document.get("field"))


def learned_to_document(learned: Learned) -> Dict[str, Any]:
    if isinstance(learned, MultilinearTensor):
        return _tensor_to_document(learned)
    return spectrum_to_document(learned)


def learned_from_document(document: Dict[str, Any]) -> Learned:
    if document.get("kind") == "tensor":
        return _tensor_from_document(document)
    return spectrum_from_document(document)


def _key_label(key: Any) -> str:
    if isinstance(key, tuple) and key and not isinstance(key[0], (int, np.integer)):
        return ",".join(str(part) for part in key)
    if isinstance(key, tuple):
        return "".join(str(int(b)) for b in key)
    return str(key)


@dataclass
class LearnReport:
    algorithm: str
    params: LearnParams
    learned: Learned
    queries: Dict[str, int] = field(default_factory=dict)
    threshold: Optional[float] = None
    heavy_set: List[Any] = field(default_factory=list)
    budget: Dict[str, Any] = field(default_factory=dict)
    achieved: Dict[str, Any] = field(default_factory=dict)
    diagnostics: Dict[str, Any] = field(default_factory=dict)

    @property
    def total_queries(self) -> int:
        return sum(self.queries.values())

    def to_document(self) -> Dict[str, Any]:
        return {
            "algorithm": self.algorithm,
            "params": self.params.as_dict(),
            "queries": {k: int(v) for k, v in sorted(self.queries.items())},
            "threshold": None if self.threshold is None else float(self.threshold),
            "heavy_set": [_key_label(key) for key in self.heavy_set],
            "budget": to_builtin(self.budget),
            "learned": learned_to_document(self.learned),
            "achieved_errors": to_builtin(self.achieved),
        }

    def save(self, path: str) -> None:
        with open(path, "w") as f:
            yaml.safe_dump(self.to_document(), f, default_flow_style=False, sort_keys=False)
        logger.info(f"Wrote {self.algorithm} report to {path}")

    @classmethod
    def from_document(cls, document: Dict[str, Any]) -> "LearnReport":
        try:
            return cls(algorithm=document["algorithm"], params=LearnParams(**document["params"]),
                       learned=learned_from_document(document["learned"]),
                       queries=dict(document.get("queries") or {}), threshold=document.get("threshold"),
                       heavy_set=list(document.get("heavy_set") or []), budget=dict(document.get("budget") or {}),
                       achieved=dict(document.get("achieved_errors") or {}))
        except (KeyError, TypeError) as e:
            raise InvalidInputError(f"Malformed learn report: {e}") from e

    @classmethod
    def load(cls, path: str) -> "LearnReport":
        with open(path, "r") as f:
            return cls.from_document(yaml.safe_load(f))


def queries_since(before: Dict[str, int], after: Dict[str, int]) -> Dict[str, int]:
    """Per-primitive queries charged between two `budget_used` snapshots."""
    return {k: after[k] - before.get(k, 0) for k in sorted(after) if after[k] - before.get(k, 0)}
