"""
Dense operators and states for small qubit counts.
"""
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from ..config import config
from .exceptions import CapExceededError, InvalidInputError


def qubit_count(dim: int) -> int:
    """Return n for a dimension 2^n, rejecting anything else."""
    if dim < 1 or dim & (dim - 1):
        raise InvalidInputError(f"Dimension {dim} is not a power of 2")
    return dim.bit_length() - 1


@dataclass(frozen=True, eq=False)
class DenseOperator:
    """A 2^n x 2^n complex matrix, allowed only up to the configured qubit cap."""
    matrix: np.ndarray
    cap: Optional[int] = field(default=None, repr=False)

    def __post_init__(self):
        matrix = np.array(self.matrix, dtype=complex)
        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
            raise InvalidInputError(f"Operator must be square, got shape {matrix.shape}")
        n = qubit_count(matrix.shape[0])
        cap = self.cap if self.cap is not None else config.numerics.dense_cap_qubits
        if n > cap:
            raise CapExceededError(f"Dense operator on {n} qubits exceeds the cap of {cap}")
        matrix.setflags(write=False)
        object.__setattr__(self, "matrix", matrix)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def n(self) -> int:
        return qubit_count(self.dim)

    def is_unitary(self, tol: float = 1e-9) -> bool:
        return bool(np.allclose(self.matrix @ self.matrix.conj().T, np.eye(self.dim), atol=tol))

    def is_hermitian(self, tol: float = 1e-9) -> bool:
        return bool(np.allclose(self.matrix, self.matrix.conj().T, atol=tol))

    def is_psd(self, tol: float = 1e-9) -> bool:
        if not self.is_hermitian(tol):
            return False
        return bool(np.linalg.eigvalsh((self.matrix + self.matrix.conj().T) / 2).min() >= -tol)

    def op_norm(self) -> float:
        return float(np.linalg.norm(self.matrix, 2))


@dataclass(frozen=True, eq=False)
class DenseState:
    """A unit vector of dimension 2^n."""
    vector: np.ndarray
    tol: float = field(default=1e-9, repr=False)

    def __post_init__(self):
        vector = np.array(self.vector, dtype=complex).reshape(-1)
        qubit_count(vector.shape[0])
        norm = np.linalg.norm(vector)
        if abs(norm - 1.0) > self.tol:
            raise InvalidInputError(f"State norm {norm:.12g} differs from 1")
        vector.setflags(write=False)
        object.__setattr__(self, "vector", vector)

    @property
    def dim(self) -> int:
        return self.vector.shape[0]

    @property
    def n(self) -> int:
        return qubit_count(self.dim)

    def density_matrix(self) -> np.ndarray:
        return np.outer(self.vector, self.vector.conj())
