"""
Algorithm description files (YAML) and tensor CSV export.

Complex arrays are stored row-major as nested lists of [re, im] pairs.
"""
import csv
import logging
from typing import Any, List

import numpy as np
import yaml

from ..bh.tensor import MultilinearTensor
from ..core.exceptions import InvalidInputError
from .algorithm import QueryAlgorithm

logger = logging.getLogger(__name__)


def _encode(array: np.ndarray) -> Any:
    array = np.asarray(array, dtype=complex)
    if array.ndim == 0:
        return [float(array.real), float(array.imag)]
    return [_encode(row) for row in array]


def _decode(data: Any) -> np.ndarray:
    array = np.asarray(data, dtype=float)
    if array.shape[-1] != 2:
        raise InvalidInputError("Complex entries must be [re, im] pairs")
    return array[..., 0] + 1j * array[..., 1]


def algorithm_to_document(algorithm: QueryAlgorithm) -> dict:
    return {
        "n": algorithm.n,
        "m": algorithm.m,
        "d": algorithm.d,
        "unitaries": [_encode(u) for u in algorithm.unitaries],
        "u": _encode(algorithm.start),
        "v": _encode(algorithm.accept),
    }


def algorithm_from_document(document: dict) -> QueryAlgorithm:
    try:
        n, m, d = int(document["n"]), int(document["m"]), int(document["d"])
        unitaries = [_decode(u) for u in document["unitaries"]]
        start, accept = _decode(document["u"]), _decode(document["v"])
    except (KeyError, TypeError, ValueError) as e:
        raise InvalidInputError(f"Malformed algorithm document: {e}") from e
    if len(unitaries) != d + 1:
        raise InvalidInputError(f"Document declares d={d} but lists {len(unitaries)} unitaries")
    return QueryAlgorithm(n, m, unitaries, start, accept)


def save_algorithm(algorithm: QueryAlgorithm, path: str) -> None:
    with open(path, "w") as f:
        yaml.safe_dump(algorithm_to_document(algorithm), f, sort_keys=False)
    logger.info(f"Saved {algorithm!r} to {path}")


def load_algorithm(path: str) -> QueryAlgorithm:
    with open(path, "r") as f:
        return algorithm_from_document(yaml.safe_load(f))


def save_tensor_csv(tensor: MultilinearTensor, path: str, tol: float = 0.0) -> None:
    """One row per stored entry: i1..id (zero based), re, im."""
    header: List[str] = [f"i{t + 1}" for t in range(tensor.d)] + ["re", "im"]
    with open(path, "w", newline="") as f:
        writer = csv.writer(f)
        writer.writerow(["# d", tensor.d, "n", tensor.n, "field", tensor.field])
        writer.writerow(header)
        for index, value in tensor.items(tol):
            value = complex(value)
            writer.writerow(list(index) + [repr(value.real), repr(value.imag)])


def load_tensor_csv(path: str) -> MultilinearTensor:
    with open(path, "r", newline="") as f:
        rows = list(csv.reader(f))
    try:
        meta = rows[0]
        d, n, field = int(meta[1]), int(meta[3]), meta[5]
        entries = {tuple(int(v) for v in row[:d]): complex(float(row[d]), float(row[d + 1])) for row in rows[2:] if row}
    except (IndexError, ValueError) as e:
        raise InvalidInputError(f"Malformed tensor file {path}: {e}") from e
    return MultilinearTensor.from_entries(d, n, entries, field=field)
