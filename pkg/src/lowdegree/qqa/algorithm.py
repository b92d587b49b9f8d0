"""
d-query algorithms |psi_x> = U_d (O_{x_d} (x) I_m) U_{d-1} ... U_1 (O_{x_1} (x) I_m) U_0 |u>
and their acceptance amplitudes T(x) = <v|psi_x>.

The query register (dimension n) is the leading tensor factor, the workspace (dimension m) the
trailing one, so basis state |i, w> sits at index i * m + w. O_x multiplies |i> by x(i) in {-1, 1}.
"""
import logging
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence, Tuple

import numpy as np
from scipy.stats import unitary_group

from ..bh.tensor import MultilinearTensor
from ..config import config
from ..core.exceptions import CapExceededError, InvalidInputError, InvariantViolationError, NotUnitaryError
from ..core.transforms import cube_points

logger = logging.getLogger(__name__)

_CHUNK = 65536


class QueryAlgorithm:
    def __init__(self, n: int, m: int, unitaries: Sequence[np.ndarray], start: np.ndarray,
                 accept: np.ndarray, tol: float = 1e-9):
        if n < 1 or m < 1:
            raise InvalidInputError(f"Register sizes must be positive, got n={n}, m={m}")
        if len(unitaries) < 2:
            raise InvalidInputError("A query algorithm needs U_0 .. U_d with d >= 1")
        dim = n * m
        matrices = []
        for k, unitary in enumerate(unitaries):
            unitary = np.asarray(unitary, dtype=complex)
            if unitary.shape != (dim, dim):
                raise InvalidInputError(f"U_{k} has shape {unitary.shape}, expected ({dim}, {dim})")
            if not np.allclose(unitary.conj().T @ unitary, np.eye(dim), atol=tol):
                raise NotUnitaryError(f"U_{k} is not unitary")
            unitary.setflags(write=False)
            matrices.append(unitary)
        vectors = []
        for name, vector in (("start", start), ("accept", accept)):
            vector = np.asarray(vector, dtype=complex).reshape(-1)
            if vector.shape != (dim,):
                raise InvalidInputError(f"{name} vector has length {vector.shape[0]}, expected {dim}")
            if abs(np.linalg.norm(vector) - 1.0) > 1e-10:
                raise InvalidInputError(f"{name} vector is not a unit vector")
            vector.setflags(write=False)
            vectors.append(vector)
        self.n = int(n)
        self.m = int(m)
        self.unitaries: Tuple[np.ndarray, ...] = tuple(matrices)
        self.start, self.accept = vectors

    @property
    def d(self) -> int:
        return len(self.unitaries) - 1

    @property
    def dim(self) -> int:
        return self.n * self.m

    def evaluate_batch(self, points: np.ndarray) -> np.ndarray:
        """Amplitudes at each row of a (count, d, n) array with +-1 entries."""
        points = np.asarray(points)
        if points.ndim != 3 or points.shape[1:] != (self.d, self.n):
            raise InvalidInputError(f"Points must have shape (count, {self.d}, {self.n}), got {points.shape}")
        count = points.shape[0]
        out = np.empty(count, dtype=complex)
        first = self.unitaries[0] @ self.start
        for begin in range(0, count, _CHUNK):
            chunk = points[begin:begin + _CHUNK]
            states = np.broadcast_to(first, (chunk.shape[0], self.dim))
            for t in range(self.d):
                states = (states.reshape(-1, self.n, self.m) * chunk[:, t, :, None]).reshape(-1, self.dim)
                states = states @ self.unitaries[t + 1].T
            out[begin:begin + _CHUNK] = states @ self.accept.conj()
        return out

    def __repr__(self) -> str:
        return f"QueryAlgorithm(n={self.n}, m={self.m}, d={self.d})"


@dataclass(frozen=True)
class AmplitudeTensor:
    """Coefficients of T(x) together with the algorithm they came from."""
    tensor: MultilinearTensor
    algorithm: QueryAlgorithm
    method: str


@dataclass(frozen=True)
class QuerySamples:
    points: np.ndarray
    values: np.ndarray

    def __len__(self) -> int:
        return int(self.values.shape[0])

    def __iter__(self) -> Iterator[Tuple[np.ndarray, complex]]:
        return iter(zip(self.points, self.values))


def qqa_evaluate(algorithm: QueryAlgorithm, x: np.ndarray) -> complex:
    x = np.asarray(x)
    if x.shape != (algorithm.d, algorithm.n):
        raise InvalidInputError(f"Query point must have shape ({algorithm.d}, {algorithm.n}), got {x.shape}")
    if not np.all(np.abs(x) == 1):
        raise InvalidInputError("Query point entries must be +-1")
    return complex(algorithm.evaluate_batch(x[None])[0])


def _algebraic_coefficients(algorithm: QueryAlgorithm) -> np.ndarray:
    """Replace each O_{x_t} by the projector onto query index i_t."""
    n, m, dim = algorithm.n, algorithm.m, algorithm.dim
    states = (algorithm.unitaries[0] @ algorithm.start)[None, :]
    for t in range(algorithm.d):
        blocks = algorithm.unitaries[t + 1].reshape(dim, n, m)
        states = np.einsum('aiw,kiw->kia', blocks, states.reshape(-1, n, m)).reshape(-1, dim)
    return (states @ algorithm.accept.conj()).reshape((n,) * algorithm.d)


def _enumerated_coefficients(algorithm: QueryAlgorithm) -> np.ndarray:
    """T^_i = E_x[T(x) x_1(i_1) ... x_d(i_d)] over all 2^(nd) points."""
    n, d = algorithm.n, algorithm.d
    bits = n * d
    if bits > config.qqa.enumeration_cap_log2:
        raise CapExceededError(f"Enumerating 2^{bits} query points exceeds the cap")
    points = cube_points(bits).reshape(-1, d, n)
    values = algorithm.evaluate_batch(points)
    coefficients = np.zeros((n,) * d, dtype=complex)
    for index in np.ndindex(*(n,) * d):
        characters = np.prod([points[:, t, i] for t, i in enumerate(index)], axis=0)
        coefficients[index] = np.mean(values * characters)
    return coefficients


def qqa_extract_tensor(algorithm: QueryAlgorithm, method: str = "algebraic", tol: float = 1e-9) -> AmplitudeTensor:
    """
    Block-multilinear coefficients of the acceptance amplitude.

    method is 'algebraic', 'enumeration' or 'both'; with 'both' the two routes must agree to tol.
    """
    if algorithm.n ** algorithm.d > 2 ** config.qqa.enumeration_cap_log2:
        raise CapExceededError(f"Tensor with {algorithm.n}^{algorithm.d} entries exceeds the cap")
    if method == "algebraic":
        coefficients = _algebraic_coefficients(algorithm)
    elif method == "enumeration":
        coefficients = _enumerated_coefficients(algorithm)
    elif method == "both":
        coefficients = _algebraic_coefficients(algorithm)
        enumerated = _enumerated_coefficients(algorithm)
        gap = float(np.max(np.abs(coefficients - enumerated)))
        if gap > tol:
            raise InvariantViolationError(f"Tensor extraction routes disagree by {gap:.3e}")
    else:
        raise InvalidInputError(f"Unknown extraction method {method!r}")
    return AmplitudeTensor(tensor=MultilinearTensor(coefficients), algorithm=algorithm, method=method)


def qqa_sample_stream(algorithm: QueryAlgorithm, count: int, seed: int) -> QuerySamples:
    """Uniform query points with exact amplitudes; chunks draw from spawned sub-seeds."""
    if count < 0:
        raise InvalidInputError(f"Sample count must be non-negative, got {count}")
    shape = (algorithm.d, algorithm.n)
    chunks = max(1, -(-count // _CHUNK))
    streams = [np.random.default_rng(child) for child in np.random.SeedSequence(seed).spawn(chunks)]
    parts = []
    for k, rng in enumerate(streams):
        size = min(_CHUNK, count - k * _CHUNK)
        if size > 0:
            parts.append((1 - 2 * rng.integers(0, 2, size=(size,) + shape)).astype(np.int8))
    points = np.concatenate(parts) if parts else np.zeros((0,) + shape, dtype=np.int8)
    return QuerySamples(points=points, values=algorithm.evaluate_batch(points))


# ----------------------------------------------------------------------------
# Constructors
# ----------------------------------------------------------------------------
def _basis(dim: int, index: int) -> np.ndarray:
    vector = np.zeros(dim, dtype=complex)
    vector[index] = 1.0
    return vector


def random_algorithm(n: int, m: int, d: int, seed: int, start: Optional[np.ndarray] = None,
                     accept: Optional[np.ndarray] = None) -> QueryAlgorithm:
    """Haar-random U_0 .. U_d; start and accept default to the first basis vector."""
    rng = np.random.default_rng(seed)
    dim = n * m
    unitaries = [unitary_group.rvs(dim, random_state=rng) if dim > 1 else np.eye(1, dtype=complex)
                 for _ in range(d + 1)]
    start = _basis(dim, 0) if start is None else start
    accept = _basis(dim, 0) if accept is None else accept
    return QueryAlgorithm(n, m, unitaries, start, accept)


def product_of_dictators(n: int, m: int, d: int, index: int = 0) -> QueryAlgorithm:
    """Identity unitaries with u = v = |index, 0>: T(x) = x_1(index) ... x_d(index)."""
    dim = n * m
    vector = _basis(dim, index * m)
    return QueryAlgorithm(n, m, [np.eye(dim, dtype=complex)] * (d + 1), vector, vector)


def averaging_algorithm(n: int, m: int = 1, d: int = 1) -> QueryAlgorithm:
    """Identity unitaries with u = v uniform over the query register: T(x) = (1/n) sum_i prod_t x_t(i)."""
    dim = n * m
    vector = np.zeros(dim, dtype=complex)
    vector[::m] = 1.0 / np.sqrt(n)
    return QueryAlgorithm(n, m, [np.eye(dim, dtype=complex)] * (d + 1), vector, vector)
