"""
The function f_Phi on {-1,1}^(6n) attached to a superoperator.

f_Phi(a, b) = 9^-n sum_{s,t in {1,2,3}^n} Tr[Phi(|a^s><b^t|) |b^t><a^s|], where |a^s> is the
product of the a^{s(i)}_i eigenvectors of sigma_{s(i)}. Its Fourier coefficient at the key of
(x, y) is Phi^(x, y) / 3^(|x| + |y|).

Variable a^k_i sits at index (k-1) n + i and b^k_j at 3n + (k-1) n + j.
"""
import itertools
import logging
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from ..config import config
from ..core.constants import PAULI_EIGENSTATES
from ..core.exceptions import CapExceededError
from ..core.pauli import PauliString
from ..core.spectra import BooleanSpectrum, SuperopSpectrum
from ..core.transforms import boolean_spectrum, cube_points

logger = logging.getLogger(__name__)


def _check_cap(n: int) -> None:
    cap = config.bh_lab.f_phi_cap_qubits
    if n > cap:
        raise CapExceededError(f"f_Phi on {n} qubits ({6 * n} variables) exceeds the cap of {cap} qubits")


def f_phi_key(x: PauliString, y: PauliString) -> Tuple[int, ...]:
    n = x.n
    bits = [0] * (6 * n)
    for i in x.support:
        bits[(x.word[i] - 1) * n + i] = 1
    for j in y.support:
        bits[3 * n + (y.word[j] - 1) * n + j] = 1
    return tuple(bits)


def f_phi_build(spectrum: SuperopSpectrum) -> BooleanSpectrum:
    """Closed-form spectrum of f_Phi."""
    _check_cap(spectrum.n)
    coeffs = {f_phi_key(x, y): value / 3.0 ** (x.weight + y.weight) for (x, y), value in spectrum.items()}
    return BooleanSpectrum(6 * spectrum.n, coeffs)


def _product_vectors(signs: np.ndarray, s: Tuple[int, ...]) -> np.ndarray:
    """Rows |a^s> for every row of a (count, 3, n) sign array."""
    vectors = None
    for i, symbol in enumerate(s):
        # +1 selects the first eigenvector row, -1 the second
        rows = (1 - signs[:, symbol - 1, i]) // 2
        factor = PAULI_EIGENSTATES[symbol][rows]
        if vectors is None:
            vectors = factor
        else:
            vectors = np.einsum('ka,kb->kab', vectors, factor).reshape(factor.shape[0], -1)
    return vectors


def f_phi_direct(spectrum: SuperopSpectrum) -> np.ndarray:
    """Truth table of f_Phi from the defining average, applying Phi through its Choi matrix."""
    n = spectrum.n
    _check_cap(n)
    dim = 2 ** n
    blocks = spectrum.to_choi().reshape(dim, dim, dim, dim)
    signs = cube_points(3 * n).reshape(-1, 3, n)
    bases = list(itertools.product((1, 2, 3), repeat=n))
    vectors = {s: _product_vectors(signs, s) for s in bases}
    table = np.zeros((signs.shape[0], signs.shape[0]), dtype=complex)
    for s in bases:
        a = vectors[s]
        for t in bases:
            b = vectors[t]
            # Tr[Phi(|a><b|) |b><a|] = sum J[p, i, q, j] conj(a_p) a_i conj(b_j) b_q
            table += np.einsum('piqj,Ap,Ai,Bj,Bq->AB', blocks, a.conj(), a, b.conj(), b, optimize=True)
    return (table / 9 ** n).reshape(-1)


@dataclass(frozen=True)
class FPhiComparison:
    max_coefficient_error: float
    max_abs_value: float
    degree: int


def f_phi_compare(spectrum: SuperopSpectrum) -> FPhiComparison:
    """Closed form against direct evaluation, plus the largest |f_Phi| on the cube."""
    closed = f_phi_build(spectrum)
    table = f_phi_direct(spectrum)
    direct = boolean_spectrum(table)
    keys = set(closed.keys()) | set(direct.keys())
    error = max((abs(closed[k] - direct[k]) for k in keys), default=0.0)
    logger.debug(f"f_Phi on {spectrum.n} qubits: coefficient error {error:.3e}")
    return FPhiComparison(max_coefficient_error=float(error), max_abs_value=float(np.max(np.abs(table))),
                          degree=closed.degree)
