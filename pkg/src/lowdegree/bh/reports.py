"""
Left- and right-hand sides of one inequality check, with the metadata of the witness.
"""
from dataclasses import asdict, dataclass, field as dc_field
from typing import Any, Dict

import yaml

RATIO_GUARD = 1e-12


def to_builtin(value: Any) -> Any:
    """numpy scalars and tuples into YAML-safe builtins."""
    if isinstance(value, dict):
        return {str(k): to_builtin(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_builtin(v) for v in value]
    if hasattr(value, "item"):
        return value.item()
    return value


@dataclass(frozen=True)
class InequalityReport:
    name: str
    lhs: float
    rhs: float
    ratio: float
    field: str = "real"
    witness: Dict[str, Any] = dc_field(default_factory=dict)
    tolerance: float = 1e-9

    @classmethod
    def build(cls, name: str, lhs: float, rhs: float, field: str = "real", witness: Dict[str, Any] = None,
              tolerance: float = 1e-9) -> "InequalityReport":
        lhs, rhs = float(lhs), float(rhs)
        ratio = lhs / max(abs(rhs), RATIO_GUARD)
        return cls(name=name, lhs=lhs, rhs=rhs, ratio=ratio, field=field,
                   witness=to_builtin(witness or {}), tolerance=tolerance)

    @property
    def holds(self) -> bool:
        return self.ratio <= 1.0 + self.tolerance

    def to_document(self) -> Dict[str, Any]:
        document = asdict(self)
        document["holds"] = self.holds
        return document

    @classmethod
    def from_document(cls, document: Dict[str, Any]) -> "InequalityReport":
        document = dict(document)
        document.pop("holds", None)
        return cls(**document)

    def save(self, path: str) -> None:
        with open(path, "w") as f:
            yaml.safe_dump(self.to_document(), f, sort_keys=False)

    @classmethod
    def load(cls, path: str) -> "InequalityReport":
        with open(path, "r") as f:
            return cls.from_document(yaml.safe_load(f))
