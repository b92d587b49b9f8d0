"""
Block-multilinear forms T(x_1, ..., x_d) = sum_i T^_{i_1..i_d} x_1(i_1) ... x_d(i_d).
"""
import string
from typing import Dict, Iterator, Mapping, Optional, Tuple

import numpy as np

from ..core.exceptions import InvalidInputError
from ..core.spectra import bh_exponent

Index = Tuple[int, ...]


class MultilinearTensor:
    """Dense coefficient array of shape (n,) * d; real unless complex entries are given."""

    def __init__(self, coefficients: np.ndarray, field: Optional[str] = None):
        coefficients = np.asarray(coefficients)
        if coefficients.ndim < 1:
            raise InvalidInputError("A multilinear tensor needs arity d >= 1")
        if len(set(coefficients.shape)) != 1:
            raise InvalidInputError(f"All sides must be equal, got shape {coefficients.shape}")
        if field is None:
            field = "complex" if np.iscomplexobj(coefficients) and np.any(coefficients.imag != 0) else "real"
        if field not in ("real", "complex"):
            raise InvalidInputError(f"Unknown field {field!r}")
        dtype = complex if field == "complex" else float
        values = coefficients.real if field == "real" and np.iscomplexobj(coefficients) else coefficients
        self._coefficients = np.array(values, dtype=dtype)
        self._coefficients.setflags(write=False)
        self.field = field

    @classmethod
    def from_entries(cls, d: int, n: int, entries: Mapping[Index, complex],
                     field: Optional[str] = None) -> "MultilinearTensor":
        coefficients = np.zeros((n,) * d, dtype=complex)
        for index, value in entries.items():
            if len(index) != d or any(not 0 <= i < n for i in index):
                raise InvalidInputError(f"Index {index} outside [{n}]^{d}")
            coefficients[tuple(index)] = value
        return cls(coefficients, field=field)

    @classmethod
    def single(cls, d: int, n: int, index: Optional[Index] = None) -> "MultilinearTensor":
        """The form x_1(i_1) ... x_d(i_d); index defaults to all zeros, the form x_1(1) ... x_d(1)."""
        index = (0,) * d if index is None else tuple(index)
        return cls.from_entries(d, n, {index: 1.0}, field="real")

    @property
    def coefficients(self) -> np.ndarray:
        return self._coefficients

    @property
    def d(self) -> int:
        return self._coefficients.ndim

    @property
    def n(self) -> int:
        return self._coefficients.shape[0]

    def items(self, tol: float = 0.0) -> Iterator[Tuple[Index, complex]]:
        for index in zip(*np.nonzero(np.abs(self._coefficients) > tol)):
            index = tuple(int(i) for i in index)
            yield index, self._coefficients[index]

    def as_dict(self, tol: float = 0.0) -> Dict[Index, complex]:
        return dict(self.items(tol))

    def pnorm(self, p: float) -> float:
        if p < 1:
            raise InvalidInputError(f"p-norm needs p >= 1, got {p}")
        magnitudes = np.abs(self._coefficients).reshape(-1)
        if np.isinf(p):
            return float(magnitudes.max())
        return float(np.sum(magnitudes ** p) ** (1.0 / p))

    def bh_norm(self) -> float:
        """The 2d/(d+1) norm of the coefficients."""
        return self.pnorm(bh_exponent(self.d))

    def scaled(self, factor: complex) -> "MultilinearTensor":
        field = "complex" if self.field == "complex" or np.iscomplex(factor) else "real"
        return MultilinearTensor(self._coefficients * factor, field=field)

    def evaluate(self, points: np.ndarray) -> np.ndarray:
        """T at each row of a (count, d, n) array (a single (d, n) point is also accepted)."""
        points = np.asarray(points)
        single = points.ndim == 2
        if single:
            points = points[None]
        if points.ndim != 3 or points.shape[1:] != (self.d, self.n):
            raise InvalidInputError(f"Points must have shape (count, {self.d}, {self.n}), got {points.shape}")
        letters = string.ascii_lowercase
        batch = letters[self.d]
        operands = [self._coefficients]
        subscripts = [letters[: self.d]]
        for t in range(self.d):
            operands.append(points[:, t, :])
            subscripts.append(batch + letters[t])
        values = np.einsum(",".join(subscripts) + "->" + batch, *operands)
        return values[0] if single else values

    def __repr__(self) -> str:
        return f"MultilinearTensor(d={self.d}, n={self.n}, field={self.field})"
