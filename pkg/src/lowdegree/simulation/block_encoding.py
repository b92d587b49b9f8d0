"""
Block encodings of bounded functions.

For p: {-1,1}^n -> [-1,1] the (n+1)-qubit unitary

    U_p = sigma_3 (x) Diag(p) + sigma_2 (x) Diag(sqrt(1 - p^2))

has Pauli coefficients p^(s) on the strings (3, 3^s) and q^(s) on (2, 3^s), q = sqrt(1 - p^2),
where 3^s places sigma_3 on the variables in s. Sampling the Bell basis of its Choi state
therefore reveals the heavy Fourier coefficients of p in the {3} x {0,3}^n sector.
"""
import logging
from typing import Optional, Tuple

import numpy as np

from ..config import config
from ..core.constants import PAULI_MATRICES
from ..core.dense import DenseOperator
from ..core.exceptions import CapExceededError, InvariantViolationError, UnboundedFunctionError
from ..core.pauli import PauliString
from ..core.spectra import BooleanSpectrum, OperatorSpectrum
from ..core.transforms import boolean_spectrum

logger = logging.getLogger(__name__)


def _bounded_table(p: BooleanSpectrum, tol: float) -> np.ndarray:
    if not p.is_real:
        raise UnboundedFunctionError("Block encodings need a real valued function")
    table = p.truth_table()
    peak = float(np.max(np.abs(table)))
    if peak > 1.0 + tol:
        raise UnboundedFunctionError(f"Function reaches |p| = {peak:.6g} > 1")
    return np.clip(table, -1.0, 1.0)


def _complement(table: np.ndarray) -> np.ndarray:
    return np.sqrt(np.clip(1.0 - table ** 2, 0.0, None))


def build_block_encoding(p: BooleanSpectrum, tol: float = 1e-9) -> DenseOperator:
    n = p.n + 1
    if n > config.numerics.dense_cap_qubits:
        raise CapExceededError(f"Dense block encoding on {n} qubits exceeds the cap")
    table = _bounded_table(p, tol)
    matrix = np.kron(PAULI_MATRICES[3], np.diag(table)) + np.kron(PAULI_MATRICES[2], np.diag(_complement(table)))
    operator = DenseOperator(matrix)
    if not operator.is_unitary():
        raise InvariantViolationError("Block encoding is not unitary")
    return operator


def sector_key(s: Tuple[int, ...], first: int = 3) -> PauliString:
    """The string (first, 3^s) carrying coefficient s."""
    return PauliString((first,) + tuple(3 if bit else 0 for bit in s))


def sector_subset(x: PauliString) -> Optional[Tuple[int, ...]]:
    """Subset s if x lies in {3} x {0,3}^n, else None."""
    if x.word[0] != 3 or any(symbol not in (0, 3) for symbol in x.word[1:]):
        return None
    return tuple(int(symbol == 3) for symbol in x.word[1:])


def block_encoding_spectrum(p: BooleanSpectrum, tol: float = 1e-9) -> OperatorSpectrum:
    """Pauli spectrum of U_p built from truth tables, without forming the dense unitary."""
    table = _bounded_table(p, tol)
    coeffs = {sector_key(s): value for s, value in p.items()}
    for s, value in boolean_spectrum(_complement(table)).items():
        coeffs[sector_key(s, first=2)] = value
    spectrum = OperatorSpectrum(p.n + 1, coeffs)
    logger.debug(f"Block encoding of {p!r}: {len(spectrum)} Pauli terms")
    return spectrum
