"""
Append-only sample logs.

Each primitive call appends one SampleRecord covering the `shots` queries it charged, starting at
`query_index`. Large array outcomes are stored as a SHA-256 digest so that logs stay small but a
replay with the same seed can still be compared record by record.
"""
import hashlib
import json
from dataclasses import asdict, dataclass
from typing import Any, Dict, Iterator, List

import numpy as np


@dataclass(frozen=True)
class SampleRecord:
    primitive: str
    inputs: Dict[str, Any]
    outcome: Any
    query_index: int
    shots: int

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)

    @classmethod
    def from_json(cls, line: str) -> "SampleRecord":
        return cls(**json.loads(line))


def digest_array(values: np.ndarray) -> Dict[str, Any]:
    values = np.ascontiguousarray(values)
    return {"sha256": hashlib.sha256(values.tobytes()).hexdigest(),
            "shape": list(values.shape), "dtype": str(values.dtype)}


class SampleLog:
    def __init__(self, enabled: bool = True):
        self.enabled = enabled
        self._records: List[SampleRecord] = []

    def append(self, record: SampleRecord) -> None:
        if self.enabled:
            self._records.append(record)

    @property
    def records(self) -> List[SampleRecord]:
        return list(self._records)

    def __len__(self) -> int:
        return len(self._records)

    def __iter__(self) -> Iterator[SampleRecord]:
        return iter(self._records)

    def total_queries(self) -> int:
        return sum(record.shots for record in self._records)

    def write_jsonl(self, path: str) -> None:
        with open(path, "w") as f:
            for record in self._records:
                f.write(record.to_json() + "\n")

    @classmethod
    def read_jsonl(cls, path: str) -> "SampleLog":
        log = cls()
        with open(path, "r") as f:
            for line in f:
                if line.strip():
                    log.append(SampleRecord.from_json(line))
        return log
