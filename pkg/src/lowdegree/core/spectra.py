"""
Sparse Pauli and Fourier spectra.

Three immutable containers share one base class:

- OperatorSpectrum: PauliString -> complex, M = sum_x M^(x) sigma_x
- SuperopSpectrum: (PauliString, PauliString) -> complex, Phi(rho) = sum Phi^(x,y) sigma_x rho sigma_y
- BooleanSpectrum: subset bitstring -> coefficient, f = sum_s f^(s) chi_s

Coefficients with modulus below the configured zero tolerance are dropped on construction
and keys are stored in lexicographic order.
"""
import logging
from types import MappingProxyType
from typing import Any, Dict, Iterable, Iterator, Mapping, Optional, Sequence, Tuple

import numpy as np

from ..config import config
from .exceptions import InvalidInputError, NotAChannelError
from .pauli import PauliString

logger = logging.getLogger(__name__)

Bits = Tuple[int, ...]
PauliPair = Tuple[PauliString, PauliString]


class _SparseSpectrum:
    kind = "abstract"

    def __init__(self, n: int, coeffs: Mapping[Any, complex], zero_tol: Optional[float] = None):
        if n < 1:
            raise InvalidInputError(f"Spectrum needs n >= 1, got {n}")
        self._n = int(n)
        tol = config.numerics.zero_tol if zero_tol is None else zero_tol
        merged: Dict[Any, complex] = {}
        for key, value in coeffs.items():
            key = self._check_key(key)
            merged[key] = merged.get(key, 0j) + complex(value)
        # tolerance applies to the merged sums
        kept = [key for key in merged if abs(merged[key]) >= tol]
        ordered = {key: self._store(merged[key]) for key in sorted(kept, key=self._sort_key)}
        self._coeffs = MappingProxyType(ordered)
        self._degree: Optional[int] = None

    # Subclass hooks
    def _check_key(self, key):
        raise NotImplementedError

    @staticmethod
    def _sort_key(key):
        raise NotImplementedError

    def _key_degree(self, key) -> int:
        raise NotImplementedError

    def _store(self, value: complex):
        return value

    @property
    def n(self) -> int:
        return self._n

    @property
    def coeffs(self) -> Mapping[Any, complex]:
        return self._coeffs

    def __getitem__(self, key):
        return self._coeffs.get(key, 0.0)

    def __contains__(self, key) -> bool:
        return key in self._coeffs

    def __len__(self) -> int:
        return len(self._coeffs)

    def __iter__(self) -> Iterator:
        return iter(self._coeffs)

    def items(self):
        return self._coeffs.items()

    def keys(self):
        return self._coeffs.keys()

    def values_array(self) -> np.ndarray:
        return np.array(list(self._coeffs.values()), dtype=complex)

    @property
    def degree(self) -> int:
        if self._degree is None:
            self._degree = max((self._key_degree(key) for key in self._coeffs), default=0)
        return self._degree

    def pnorm(self, p: float) -> float:
        return pnorm(self, p)

    def __repr__(self) -> str:
        return f"{type(self).__name__}(n={self._n}, terms={len(self)}, degree={self.degree})"


class OperatorSpectrum(_SparseSpectrum):
    kind = "operator"

    def _check_key(self, key) -> PauliString:
        if not isinstance(key, PauliString):
            key = PauliString(tuple(key))
        if key.n != self._n:
            raise InvalidInputError(f"Key {key} does not have {self._n} sites")
        return key

    @staticmethod
    def _sort_key(key: PauliString):
        return key.word

    def _key_degree(self, key: PauliString) -> int:
        return key.weight

    def scaled(self, factor: complex) -> "OperatorSpectrum":
        return OperatorSpectrum(self._n, {k: factor * v for k, v in self.items()})

    def probabilities(self) -> Dict[PauliString, float]:
        """|M^(x)|^2 per stored key."""
        return {k: abs(v) ** 2 for k, v in self.items()}

    def to_dense(self) -> np.ndarray:
        from .transforms import synth_operator
        return synth_operator(self)


class SuperopSpectrum(_SparseSpectrum):
    kind = "superop"

    def __init__(self, n: int, coeffs: Mapping[PauliPair, complex], is_channel: Optional[bool] = None,
                 zero_tol: Optional[float] = None, tol: Optional[float] = None):
        super().__init__(n, coeffs, zero_tol)
        self._is_channel = is_channel
        if is_channel:
            check_channel_matrix(self, tol)

    def _check_key(self, key) -> PauliPair:
        x, y = key
        if not isinstance(x, PauliString):
            x = PauliString(tuple(x))
        if not isinstance(y, PauliString):
            y = PauliString(tuple(y))
        if x.n != self._n or y.n != self._n:
            raise InvalidInputError(f"Key ({x}, {y}) does not have {self._n} sites")
        return (x, y)

    @staticmethod
    def _sort_key(key: PauliPair):
        return (key[0].word, key[1].word)

    def _key_degree(self, key: PauliPair) -> int:
        return key[0].weight + key[1].weight

    @property
    def is_channel(self) -> Optional[bool]:
        """Tri-state flag: True, False or None (unknown)."""
        return self._is_channel

    def diagonal(self) -> Dict[PauliString, float]:
        return {x: float(v.real) for (x, y), v in self.items() if x == y}

    def support_strings(self) -> Tuple[PauliString, ...]:
        strings = set()
        for x, y in self._coeffs:
            strings.add(x)
            strings.add(y)
        return tuple(sorted(strings))

    def is_pauli_diagonal(self) -> bool:
        return all(x == y for x, y in self._coeffs)

    def matrix(self, strings: Optional[Sequence[PauliString]] = None) -> np.ndarray:
        """Dense (Phi^(x, y)) restricted to the given strings (default: the support)."""
        strings = tuple(strings) if strings is not None else self.support_strings()
        position = {s: i for i, s in enumerate(strings)}
        out = np.zeros((len(strings), len(strings)), dtype=complex)
        for (x, y), value in self.items():
            if x in position and y in position:
                out[position[x], position[y]] = value
        return out

    def scaled(self, factor: complex) -> "SuperopSpectrum":
        return SuperopSpectrum(self._n, {k: factor * v for k, v in self.items()})

    def apply(self, rho: np.ndarray) -> np.ndarray:
        """Phi(rho) = sum Phi^(x,y) sigma_x rho sigma_y."""
        rho = np.asarray(rho, dtype=complex)
        out = np.zeros_like(rho)
        for (x, y), value in self.items():
            out += value * (x.matrix() @ rho @ y.matrix())
        return out

    def to_choi(self) -> np.ndarray:
        from .transforms import superop_to_choi
        return superop_to_choi(self)


class BooleanSpectrum(_SparseSpectrum):
    """Fourier spectrum of f: {-1,1}^n -> R (or C), keyed by subset indicator bitstrings."""
    kind = "boolean"

    def __init__(self, n: int, coeffs: Mapping[Bits, complex], zero_tol: Optional[float] = None):
        tol = config.numerics.zero_tol if zero_tol is None else zero_tol
        self._real = all(abs(complex(v).imag) < tol for v in coeffs.values())
        super().__init__(n, coeffs, zero_tol)

    def _check_key(self, key) -> Bits:
        key = tuple(int(b) for b in key)
        if len(key) != self._n or any(b not in (0, 1) for b in key):
            raise InvalidInputError(f"Key {key} is not a {self._n}-bit subset indicator")
        return key

    @staticmethod
    def _sort_key(key: Bits):
        return key

    def _key_degree(self, key: Bits) -> int:
        return sum(key)

    def _store(self, value: complex):
        return float(value.real) if self._real else value

    @property
    def is_real(self) -> bool:
        return self._real

    def parseval(self) -> float:
        return float(sum(abs(v) ** 2 for v in self._coeffs.values()))

    def granular(self, d: int, tol: float = 1e-9) -> bool:
        """Every coefficient lies in 2^(1-d) Z up to tol."""
        step = 2.0 ** (d - 1)
        return all(abs(v * step - round(v.real * step)) <= tol * step for v in self._coeffs.values())

    def evaluate(self, points: np.ndarray) -> np.ndarray:
        """Evaluate at rows of a (count, n) array with entries +-1."""
        points = np.atleast_2d(np.asarray(points))
        if points.shape[1] != self._n:
            raise InvalidInputError(f"Points must have {self._n} columns, got {points.shape[1]}")
        dtype = float if self._real else complex
        values = np.zeros(points.shape[0], dtype=dtype)
        for key, coeff in self.items():
            support = [i for i, b in enumerate(key) if b]
            if support:
                values += coeff * np.prod(points[:, support], axis=1)
            else:
                values += coeff
        return values

    def scaled(self, factor: float) -> "BooleanSpectrum":
        return BooleanSpectrum(self._n, {k: factor * v for k, v in self.items()})

    def truth_table(self) -> np.ndarray:
        from .transforms import synth_boolean
        return synth_boolean(self)


def pnorm(spectrum: _SparseSpectrum, p: float) -> float:
    """(sum |c|^p)^(1/p) over stored coefficients."""
    if p < 1:
        raise InvalidInputError(f"p-norm needs p >= 1, got {p}")
    if len(spectrum) == 0:
        return 0.0
    magnitudes = np.abs(spectrum.values_array())
    if np.isinf(p):
        return float(magnitudes.max())
    return float(np.sum(magnitudes ** p) ** (1.0 / p))


def degree(spectrum: _SparseSpectrum) -> int:
    return spectrum.degree


def bh_exponent(d: int) -> float:
    """2d/(d+1), with d = 0 treated as 1."""
    d = max(int(d), 1)
    return 2.0 * d / (d + 1)


def check_channel_matrix(spectrum: SuperopSpectrum, tol: Optional[float] = None) -> None:
    """Raise NotAChannelError unless (Phi^(x,y)) is PSD with unit trace."""
    tol = config.numerics.channel_tol if tol is None else tol
    trace = sum(spectrum.diagonal().values())
    if abs(trace - 1.0) > tol:
        raise NotAChannelError(f"Pauli spectrum trace {trace:.12g} differs from 1")
    matrix = spectrum.matrix()
    if not np.allclose(matrix, matrix.conj().T, atol=tol):
        raise NotAChannelError("Pauli spectrum matrix is not Hermitian")
    floor = float(np.linalg.eigvalsh((matrix + matrix.conj().T) / 2).min()) if matrix.size else 0.0
    if floor < -tol:
        raise NotAChannelError(f"Pauli spectrum matrix has eigenvalue {floor:.3e} below zero")


def _union_keys(a: _SparseSpectrum, b: _SparseSpectrum) -> Iterable:
    if type(a) is not type(b) or a.n != b.n:
        raise InvalidInputError(f"Cannot compare {a!r} with {b!r}")
    return set(a.keys()) | set(b.keys())


def l2_distance(a: _SparseSpectrum, b: _SparseSpectrum) -> float:
    return float(np.sqrt(sum(abs(a[k] - b[k]) ** 2 for k in _union_keys(a, b))))


def linf_distance(a: _SparseSpectrum, b: _SparseSpectrum) -> float:
    return float(max((abs(a[k] - b[k]) for k in _union_keys(a, b)), default=0.0))


def tv_distance(p: Mapping[Any, float], q: Mapping[Any, float]) -> float:
    """Total variation distance between two finitely supported distributions."""
    keys = set(p) | set(q)
    return 0.5 * float(sum(abs(p.get(k, 0.0) - q.get(k, 0.0)) for k in keys))
