"""
Exact transforms between dense objects and their Pauli / Fourier spectra.

All transforms act site by site on a reshaped tensor, so an n-qubit transform costs
O(n 4^n) per vector instead of building the full 4^n x 4^n basis change.
"""
import logging
from typing import Iterable, List, Optional, Sequence, Union

import numpy as np

from ..config import config
from .constants import PAULI_ANALYSIS, PAULI_SYNTHESIS, WALSH_HADAMARD
from .dense import DenseOperator, DenseState, qubit_count
from .exceptions import CapExceededError, InvalidInputError, NotAChannelError, NotUnitaryError
from .pauli import PauliString
from .spectra import BooleanSpectrum, OperatorSpectrum, SuperopSpectrum

logger = logging.getLogger(__name__)

MatrixLike = Union[np.ndarray, DenseOperator]


def _as_matrix(operator: MatrixLike) -> np.ndarray:
    if isinstance(operator, DenseOperator):
        return operator.matrix
    matrix = np.asarray(operator, dtype=complex)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise InvalidInputError(f"Operator must be square, got shape {matrix.shape}")
    return matrix


def _apply_local(tensor: np.ndarray, matrix: np.ndarray, axis: int) -> np.ndarray:
    return np.moveaxis(np.tensordot(matrix, tensor, axes=([1], [axis])), 0, axis)


def _interleave(n: int) -> List[int]:
    order = []
    for k in range(n):
        order += [k, n + k]
    return order


def _pauli_analysis_columns(columns: np.ndarray, n: int) -> np.ndarray:
    """Apply v -> (Tr(sigma_x V) / 2^n)_x to every column of a (4^n, B) array of vec'd matrices."""
    batch = columns.shape[1]
    tensor = columns.reshape([2] * (2 * n) + [batch])
    tensor = tensor.transpose(_interleave(n) + [2 * n]).reshape([4] * n + [batch])
    for axis in range(n):
        tensor = _apply_local(tensor, PAULI_ANALYSIS, axis)
    return tensor.reshape(4 ** n, batch)


def _pauli_synthesis_columns(columns: np.ndarray, n: int) -> np.ndarray:
    """Inverse of the analysis: coefficient columns -> vec(sum_x c_x sigma_x)."""
    batch = columns.shape[1]
    tensor = columns.reshape([4] * n + [batch])
    for axis in range(n):
        tensor = _apply_local(tensor, PAULI_SYNTHESIS, axis)
    tensor = tensor.reshape([2] * (2 * n) + [batch])
    inverse = list(range(0, 2 * n, 2)) + list(range(1, 2 * n, 2)) + [2 * n]
    return tensor.transpose(inverse).reshape(4 ** n, batch)


def _spectrum_from_vector(coefficients: np.ndarray, n: int) -> OperatorSpectrum:
    tol = config.numerics.zero_tol
    nonzero = np.flatnonzero(np.abs(coefficients) >= tol)
    return OperatorSpectrum(n, {PauliString.from_index(int(i), n): coefficients[i] for i in nonzero})


def spectrum_of_operator(operator: MatrixLike) -> OperatorSpectrum:
    """Pauli coefficients M^(x) = Tr(sigma_x M) / 2^n."""
    matrix = _as_matrix(operator)
    n = qubit_count(matrix.shape[0])
    if n > config.numerics.dense_cap_qubits:
        raise CapExceededError(f"Dense transform on {n} qubits exceeds the cap")
    coefficients = _pauli_analysis_columns(matrix.reshape(-1, 1), n)[:, 0]
    return _spectrum_from_vector(coefficients, n)


def _dense_coefficients(spectrum: OperatorSpectrum) -> np.ndarray:
    vector = np.zeros(4 ** spectrum.n, dtype=complex)
    for key, value in spectrum.items():
        vector[key.index()] = value
    return vector


def synth_operator(spectrum: OperatorSpectrum) -> np.ndarray:
    """Dense matrix sum_x M^(x) sigma_x."""
    n = spectrum.n
    if n > config.numerics.dense_cap_qubits:
        raise CapExceededError(f"Dense synthesis on {n} qubits exceeds the cap")
    vector = _pauli_synthesis_columns(_dense_coefficients(spectrum).reshape(-1, 1), n)[:, 0]
    return vector.reshape(2 ** n, 2 ** n)


def lift_operator_spectrum(spectrum: OperatorSpectrum, sites: Sequence[int], n: int) -> OperatorSpectrum:
    """Embed a spectrum on len(sites) qubits into n qubits, identity elsewhere."""
    if len(sites) != spectrum.n or len(set(sites)) != len(sites) or max(sites, default=-1) >= n:
        raise InvalidInputError(f"Cannot place {spectrum.n} qubits on sites {tuple(sites)} of {n}")
    lifted = {}
    for key, value in spectrum.items():
        word = [0] * n
        for site, symbol in zip(sites, key.word):
            word[site] = symbol
        lifted[PauliString(tuple(word))] = value
    return OperatorSpectrum(n, lifted)


# ----------------------------------------------------------------------------
# Superoperators
# ----------------------------------------------------------------------------
def _superop_cap(n: int) -> None:
    cap = config.numerics.superop_dense_cap_qubits
    if n > cap:
        raise CapExceededError(f"Dense Choi matrix on {n} qubits exceeds the cap of {cap}")


def kraus_to_choi(kraus: Sequence[MatrixLike]) -> np.ndarray:
    """J = sum_k vec(K_k) vec(K_k)^*, with J = sum_ij Phi(|i><j|) (x) |i><j|."""
    vectors = [_as_matrix(op).reshape(-1) for op in kraus]
    return sum(np.outer(v, v.conj()) for v in vectors)


def is_trace_preserving_kraus(kraus: Sequence[MatrixLike], tol: float) -> bool:
    matrices = [_as_matrix(op) for op in kraus]
    total = sum(op.conj().T @ op for op in matrices)
    return bool(np.allclose(total, np.eye(total.shape[0]), atol=tol))


def check_choi_cptp(choi: np.ndarray, tol: float) -> None:
    """Raise NotAChannelError unless J is PSD with Tr_out J = I."""
    dim = int(round(np.sqrt(choi.shape[0])))
    if not np.allclose(choi, choi.conj().T, atol=tol):
        raise NotAChannelError("Choi matrix is not Hermitian")
    floor = float(np.linalg.eigvalsh((choi + choi.conj().T) / 2).min())
    if floor < -tol:
        raise NotAChannelError(f"Choi matrix has eigenvalue {floor:.3e}; map is not completely positive")
    reduced = np.einsum('aiaj->ij', choi.reshape(dim, dim, dim, dim))
    if not np.allclose(reduced, np.eye(dim), atol=tol):
        raise NotAChannelError("Map is not trace preserving")


def spectrum_of_superop(kraus: Optional[Sequence[Union[MatrixLike, OperatorSpectrum]]] = None,
                        choi: Optional[np.ndarray] = None,
                        is_channel: Optional[bool] = True) -> SuperopSpectrum:
    """
    Pauli spectrum Phi^(x, y) of a map given by Kraus operators or by its Choi matrix.

    Kraus operators may be dense matrices or OperatorSpectrum objects; with spectra the result
    is sum_k k^(x) conj(k^(y)) and no dense object is formed, so the qubit cap does not apply.
    With is_channel=True the input is checked to be CPTP.
    """
    tol = config.numerics.channel_tol
    if (kraus is None) == (choi is None):
        raise InvalidInputError("Give exactly one of kraus or choi")
    if kraus is not None:
        if len(kraus) == 0:
            raise InvalidInputError("Kraus list is empty")
        if all(isinstance(op, OperatorSpectrum) for op in kraus):
            return _superop_from_kraus_spectra(kraus, is_channel)
        matrices = [_as_matrix(op) for op in kraus]
        if is_channel and not is_trace_preserving_kraus(matrices, tol):
            raise NotAChannelError("Kraus operators are not trace preserving")
        spectra = [spectrum_of_operator(op) for op in matrices]
        return _superop_from_kraus_spectra(spectra, is_channel)
    choi = np.asarray(choi, dtype=complex)
    n = qubit_count(choi.shape[0]) // 2
    if choi.shape != (4 ** n, 4 ** n):
        raise InvalidInputError(f"Choi matrix shape {choi.shape} is not 4^n x 4^n")
    _superop_cap(n)
    if is_channel:
        check_choi_cptp(choi, tol)
    # Phi^ = W J W^* with W the Pauli analysis map on vec'd operators
    left = _pauli_analysis_columns(choi, n)
    matrix = _pauli_analysis_columns(left.conj().T, n).conj().T
    zero_tol = config.numerics.zero_tol
    rows, cols = np.nonzero(np.abs(matrix) >= zero_tol)
    coeffs = {(PauliString.from_index(int(r), n), PauliString.from_index(int(c), n)): matrix[r, c]
              for r, c in zip(rows, cols)}
    return SuperopSpectrum(n, coeffs, is_channel=is_channel)


def _superop_from_kraus_spectra(spectra: Sequence[OperatorSpectrum], is_channel: Optional[bool]) -> SuperopSpectrum:
    n = spectra[0].n
    coeffs = {}
    for spectrum in spectra:
        if spectrum.n != n:
            raise InvalidInputError("Kraus operators act on different qubit counts")
        items = list(spectrum.items())
        for x, vx in items:
            for y, vy in items:
                coeffs[(x, y)] = coeffs.get((x, y), 0j) + vx * np.conj(vy)
    return SuperopSpectrum(n, coeffs, is_channel=is_channel)


def superop_from_map(apply, n: int, is_channel: Optional[bool] = None) -> SuperopSpectrum:
    """Spectrum of an arbitrary linear map given as a Python callable on matrices."""
    _superop_cap(n)
    dim = 2 ** n
    choi = np.zeros((dim * dim, dim * dim), dtype=complex)
    for i in range(dim):
        for j in range(dim):
            unit = np.zeros((dim, dim), dtype=complex)
            unit[i, j] = 1.0
            block = np.asarray(apply(unit), dtype=complex)
            # J[(a, i), (b, j)] = Phi(|i><j|)[a, b]
            choi[i::dim, j::dim] = block
    return spectrum_of_superop(choi=choi, is_channel=is_channel)


def superop_to_choi(spectrum: SuperopSpectrum) -> np.ndarray:
    """J = V Phi^ V^* with V the synthesis map (columns vec(sigma_x))."""
    n = spectrum.n
    _superop_cap(n)
    size = 4 ** n
    matrix = np.zeros((size, size), dtype=complex)
    for (x, y), value in spectrum.items():
        matrix[x.index(), y.index()] = value
    left = _pauli_synthesis_columns(matrix, n)
    return _pauli_synthesis_columns(left.conj().T, n).conj().T


def apply_choi(choi: np.ndarray, operators: np.ndarray) -> np.ndarray:
    """Phi(M)[a, b] = sum_ij J[(a, i), (b, j)] M[i, j], batched over a leading axis."""
    dim = int(round(np.sqrt(choi.shape[0])))
    blocks = choi.reshape(dim, dim, dim, dim)
    return np.einsum('aibj,...ij->...ab', blocks, operators)


# ----------------------------------------------------------------------------
# Choi states of unitaries
# ----------------------------------------------------------------------------
def choi_state_of_unitary(unitary: MatrixLike) -> DenseState:
    """|v(U)> = (U (x) I) sum_i |ii> / sqrt(N)."""
    operator = unitary if isinstance(unitary, DenseOperator) else DenseOperator(_as_matrix(unitary))
    if not operator.is_unitary():
        raise NotUnitaryError("choi_state_of_unitary needs a unitary")
    return DenseState(operator.matrix.reshape(-1) / np.sqrt(operator.dim))


def bell_amplitudes(state: DenseState) -> OperatorSpectrum:
    """Amplitudes <v(sigma_x)|psi> of a 2n-qubit state in the Bell basis."""
    dim = int(round(np.sqrt(state.dim)))
    if dim * dim != state.dim:
        raise InvalidInputError("Bell amplitudes need an even number of qubits")
    return spectrum_of_operator(state.vector.reshape(dim, dim) * np.sqrt(dim))


# ----------------------------------------------------------------------------
# Boolean functions
# ----------------------------------------------------------------------------
def _table_bits(length: int) -> int:
    n = qubit_count(length)
    if n > config.numerics.boolean_table_cap_bits:
        raise CapExceededError(f"Truth table on {n} variables exceeds the cap")
    return n


def boolean_spectrum(table: Iterable[float]) -> BooleanSpectrum:
    """
    Fourier coefficients via the fast Walsh-Hadamard transform.

    Entry b of the table is f at x_i = (-1)^{b_i}, with b_1 the most significant bit.
    """
    values = np.asarray(list(table) if not isinstance(table, np.ndarray) else table)
    if values.ndim != 1:
        raise InvalidInputError("Truth table must be one-dimensional")
    n = _table_bits(values.shape[0])
    if n == 0:
        raise InvalidInputError("Truth table needs at least one variable")
    dtype = complex if np.iscomplexobj(values) else float
    tensor = values.astype(dtype).reshape([2] * n)
    for axis in range(n):
        tensor = _apply_local(tensor, WALSH_HADAMARD / 2, axis)
    flat = tensor.reshape(-1)
    tol = config.numerics.zero_tol
    coeffs = {}
    for index in np.flatnonzero(np.abs(flat) >= tol):
        coeffs[tuple(int(b) for b in format(int(index), f"0{n}b"))] = flat[index]
    return BooleanSpectrum(n, coeffs)


def synth_boolean(spectrum: BooleanSpectrum) -> np.ndarray:
    """Truth table of sum_s f^(s) chi_s in the boolean_spectrum ordering."""
    n = _table_bits(2 ** spectrum.n)
    dtype = float if spectrum.is_real else complex
    tensor = np.zeros([2] * n, dtype=dtype)
    for key, value in spectrum.items():
        tensor[key] = value
    for axis in range(n):
        tensor = _apply_local(tensor, WALSH_HADAMARD, axis)
    return tensor.reshape(-1)


def cube_points(n: int) -> np.ndarray:
    """All of {-1,1}^n as rows, in truth-table order."""
    indices = np.arange(2 ** n)
    bits = (indices[:, None] >> np.arange(n - 1, -1, -1)) & 1
    return 1 - 2 * bits


def lift_boolean_spectrum(spectrum: BooleanSpectrum, variables: Sequence[int], n: int) -> BooleanSpectrum:
    """Embed a junta spectrum on len(variables) inputs into n inputs."""
    if len(variables) != spectrum.n or len(set(variables)) != len(variables) or max(variables) >= n:
        raise InvalidInputError(f"Cannot place {spectrum.n} variables on {tuple(variables)} of {n}")
    lifted = {}
    for key, value in spectrum.items():
        bits = [0] * n
        for variable, bit in zip(variables, key):
            bits[variable] = bit
        lifted[tuple(bits)] = value
    return BooleanSpectrum(n, lifted)
