"""
Completely bounded norm of multilinear forms, certified from below.

For a slot s the contractions X(1..n) act on the span of e_w (words of length 0..d-s) and
f_w (words of length 0..s-1):

- X(i) e_w = e_(i, w) while |w| < d - s,
- X(i) e_w = sum_k conj(T^_(k, i, w)) f_k / r_s(i) for |w| = d - s, where r_s(i) is the l2 norm
  of the slice of T^ with i in slot s,
- X(i) f_(w, j) = [i == j] f_w, and X(i) f_() = 0.

Then <f_(), X(i_1) ... X(i_d) e_()> = conj(T^_i) / r_s(i_s), and the operator norm of
sum_i T^_i X(i_1) ... X(i_d) is at least sum_i r_s(i).
"""
import itertools
import logging
from dataclasses import dataclass
from typing import Dict, List, Tuple

import numpy as np

from ..config import config
from ..core.exceptions import CapExceededError, InvalidInputError, InvariantViolationError
from .norms import precise_bh_norm
from .reports import InequalityReport
from .tensor import MultilinearTensor

logger = logging.getLogger(__name__)

CONTRACTION_TOL = 1e-9


def slot_norms(tensor: MultilinearTensor, slot: int) -> np.ndarray:
    """r_s(i) = sqrt(sum of |T^|^2 over all indices but slot s, with i_s = i); slot is 1-based."""
    if not 1 <= slot <= tensor.d:
        raise InvalidInputError(f"Slot {slot} outside [1, {tensor.d}]")
    squares = np.abs(tensor.coefficients) ** 2
    other = tuple(axis for axis in range(tensor.d) if axis != slot - 1)
    return np.sqrt(squares.sum(axis=other)) if other else np.sqrt(squares)


def blei_mixed_norm(tensor: MultilinearTensor) -> float:
    """Geometric mean over slots of sum_i r_s(i); bounds the 2d/(d+1) norm from above."""
    sums = [float(slot_norms(tensor, slot).sum()) for slot in range(1, tensor.d + 1)]
    if min(sums) == 0.0:
        return 0.0
    return float(np.exp(np.mean(np.log(sums))))


@dataclass(frozen=True)
class Contractions:
    slot: int
    matrices: np.ndarray
    bound: float
    evaluated: float
    max_matrix_norm: float


def _basis(n: int, d: int, slot: int) -> Tuple[Dict[Tuple[int, ...], int], Dict[Tuple[int, ...], int]]:
    e_index, f_index = {}, {}
    position = 0
    for length in range(d - slot + 1):
        for word in itertools.product(range(n), repeat=length):
            e_index[word] = position
            position += 1
    for length in range(slot):
        for word in itertools.product(range(n), repeat=length):
            f_index[word] = position
            position += 1
    return e_index, f_index


def contraction_dimension(n: int, d: int, slot: int) -> int:
    return sum(n ** r for r in range(d - slot + 1)) + sum(n ** t for t in range(slot))


def _contract(coefficients: np.ndarray, matrices: np.ndarray) -> np.ndarray:
    """sum_i T^_i X(i_1) ... X(i_d)."""
    if coefficients.ndim == 1:
        return np.tensordot(coefficients, matrices, axes=1)
    return sum(matrices[i] @ _contract(coefficients[i], matrices) for i in range(matrices.shape[0]))


def varopoulos_contractions(tensor: MultilinearTensor, slot: int) -> Contractions:
    d, n = tensor.d, tensor.n
    norms = slot_norms(tensor, slot)
    dim = contraction_dimension(n, d, slot)
    if dim > config.bh_lab.varopoulos_dim_cap:
        raise CapExceededError(f"Contractions of dimension {dim} exceed the cap")
    e_index, f_index = _basis(n, d, slot)
    dtype = complex if tensor.field == "complex" else float
    matrices = np.zeros((n, dim, dim), dtype=dtype)
    coefficients = tensor.coefficients
    for i in range(n):
        for word, column in e_index.items():
            if len(word) < d - slot:
                matrices[i, e_index[(i,) + word], column] = 1.0
            elif norms[i] > 0:
                for prefix in itertools.product(range(n), repeat=slot - 1):
                    value = coefficients[prefix + (i,) + word]
                    matrices[i, f_index[prefix], column] = np.conj(value) / norms[i]
        for word, column in f_index.items():
            if word and word[-1] == i:
                matrices[i, f_index[word[:-1]], column] = 1.0
    skipped = int(np.sum(norms == 0))
    if skipped:
        logger.debug(f"Slot {slot}: {skipped} zero slices left as zero columns")
    max_norm = max(float(np.linalg.norm(m, 2)) for m in matrices)
    evaluated = float(np.linalg.norm(_contract(coefficients, matrices), 2))
    return Contractions(slot=slot, matrices=matrices, bound=float(norms.sum()), evaluated=evaluated,
                        max_matrix_norm=max_norm)


def bh_cb_check(tensor: MultilinearTensor) -> InequalityReport:
    """
    ||T^||_{2d/(d+1)} against the best certified lower bound on ||T||_cb.

    Raises InvariantViolationError when a contraction has norm above 1 or the evaluated product
    falls short of its bound, since either would void the certificate.
    """
    lhs = tensor.bh_norm()
    blei = blei_mixed_norm(tensor)
    slots: List[Contractions] = [varopoulos_contractions(tensor, s) for s in range(1, tensor.d + 1)]
    for c in slots:
        if c.max_matrix_norm > 1.0 + CONTRACTION_TOL:
            raise InvariantViolationError(f"Slot {c.slot}: matrix norm {c.max_matrix_norm:.12g} exceeds 1")
        if c.evaluated < c.bound - CONTRACTION_TOL:
            raise InvariantViolationError(f"Slot {c.slot}: evaluated norm {c.evaluated:.12g} "
                                          f"below bound {c.bound:.12g}")
    if lhs > blei + CONTRACTION_TOL:
        raise InvariantViolationError(f"Mixed norm {blei:.12g} below the coefficient norm {lhs:.12g}")
    rhs = max(c.bound for c in slots)
    witness = {
        "d": tensor.d,
        "n": tensor.n,
        "blei": blei,
        "slot_bounds": [c.bound for c in slots],
        "slot_evaluated": [c.evaluated for c in slots],
        "lhs_precise": str(precise_bh_norm(tensor.coefficients.reshape(-1), tensor.d)),
    }
    return InequalityReport.build("cb", lhs, rhs, field=tensor.field, witness=witness)
