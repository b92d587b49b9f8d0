"""
Explicit circuit simulation of the measurement primitives for small n.

These circuits are the ground truth the samplers are validated against: the Hadamard test on an
EPR-prepared register, Bell-basis decoding, the SWAP test between a Choi state and a reference
state, and product-state Pauli probes. Qubit 0 is the most significant tensor factor throughout.
"""
import logging
from functools import reduce
from typing import Any, Callable, Dict, List, Mapping, Sequence, Tuple

import numpy as np

from ..config import config
from ..core.constants import HADAMARD, PAULI_EIGENSTATES, PHASE_S_DAGGER
from ..core.exceptions import CapExceededError, InvalidInputError
from ..core.pauli import PauliString, all_pauli_strings, pauli_matrix
from ..core.spectra import OperatorSpectrum, SuperopSpectrum, tv_distance
from ..core.transforms import spectrum_of_operator, superop_to_choi
from . import primitives

logger = logging.getLogger(__name__)

CNOT = np.array([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex)

# Decoded bits (a, b) of one Bell pair -> Pauli symbol
BELL_SYMBOLS = {(0, 0): 0, (0, 1): 1, (1, 1): 2, (1, 0): 3}


def _apply_gate(states: np.ndarray, matrix: np.ndarray, qubits: Sequence[int], n: int) -> np.ndarray:
    """Apply a k-qubit gate to every column of a (2^n, batch) array."""
    batch = states.shape[1]
    k = len(qubits)
    tensor = states.reshape([2] * n + [batch])
    tensor = np.moveaxis(tensor, list(qubits), list(range(k)))
    shape = tensor.shape
    tensor = (matrix @ tensor.reshape(2 ** k, -1)).reshape(shape)
    tensor = np.moveaxis(tensor, list(range(k)), list(qubits))
    return tensor.reshape(2 ** n, batch)


def _circuit_unitary(gates: Sequence[Tuple[np.ndarray, Sequence[int]]], n: int) -> np.ndarray:
    unitary = np.eye(2 ** n, dtype=complex)
    for matrix, qubits in gates:
        unitary = _apply_gate(unitary, matrix, qubits, n)
    return unitary


def _controlled(matrix: np.ndarray) -> np.ndarray:
    dim = matrix.shape[0]
    out = np.eye(2 * dim, dtype=complex)
    out[dim:, dim:] = matrix
    return out


def _epr_gates(first: Sequence[int], second: Sequence[int]) -> List[Tuple[np.ndarray, Sequence[int]]]:
    gates = []
    for a, b in zip(first, second):
        gates.append((HADAMARD, [a]))
        gates.append((CNOT, [a, b]))
    return gates


def _bell_decoder_gates(first: Sequence[int], second: Sequence[int]) -> List[Tuple[np.ndarray, Sequence[int]]]:
    gates = []
    for a, b in zip(first, second):
        gates.append((CNOT, [a, b]))
        gates.append((HADAMARD, [a]))
    return gates


def _bell_outcomes(probabilities: np.ndarray, n: int) -> Dict[PauliString, float]:
    """Fold computational-basis probabilities on 2n qubits (A then B) into Pauli labels."""
    law: Dict[PauliString, float] = {}
    for index, probability in enumerate(probabilities):
        bits = format(index, f"0{2 * n}b")
        word = tuple(BELL_SYMBOLS[(int(bits[k]), int(bits[n + k]))] for k in range(n))
        key = PauliString(word)
        law[key] = law.get(key, 0.0) + float(probability)
    return law


def _ancilla_zero_probability(state: np.ndarray, n: int) -> float:
    return float(np.sum(np.abs(state[: 2 ** (n - 1)]) ** 2))


def _as_spectrum(operator) -> OperatorSpectrum:
    return operator if isinstance(operator, OperatorSpectrum) else spectrum_of_operator(operator)


def _check_cap(n: int) -> None:
    cap = config.simulation.cross_check_cap_qubits
    if n > cap:
        raise CapExceededError(f"Circuit cross-check on {n} qubits exceeds the cap of {cap}")


# ----------------------------------------------------------------------------
# Circuits
# ----------------------------------------------------------------------------
def hadamard_circuit(unitary: OperatorSpectrum, x: PauliString, part: str) -> Dict[int, float]:
    """Ancilla, then register A (EPR half acted on by sigma_x U), then register B."""
    n = unitary.n
    qubits = 2 * n + 1
    a, b = list(range(1, n + 1)), list(range(n + 1, 2 * n + 1))
    gate = PHASE_S_DAGGER if part.lower() == "im" else np.eye(2, dtype=complex)
    work = pauli_matrix(x.word) @ unitary.to_dense()
    gates = _epr_gates(a, b) + [(HADAMARD, [0]), (_controlled(work), [0] + a), (gate, [0]), (HADAMARD, [0])]
    state = np.zeros((2 ** qubits, 1), dtype=complex)
    state[0, 0] = 1.0
    state = _circuit_unitary(gates, qubits) @ state
    zero = _ancilla_zero_probability(state[:, 0], qubits)
    return {1: zero, -1: 1.0 - zero}


def bell_circuit(unitary: OperatorSpectrum) -> Dict[PauliString, float]:
    n = unitary.n
    a, b = list(range(n)), list(range(n, 2 * n))
    gates = _epr_gates(a, b) + [(unitary.to_dense(), a)] + _bell_decoder_gates(a, b)
    state = _circuit_unitary(gates, 2 * n)[:, 0]
    return _bell_outcomes(np.abs(state) ** 2, n)


def choi_diag_circuit(channel: SuperopSpectrum) -> Dict[PauliString, float]:
    """Bell measurement of the Choi state J / N."""
    n = channel.n
    rho = superop_to_choi(channel) / 2 ** n
    decoder = _circuit_unitary(_bell_decoder_gates(list(range(n)), list(range(n, 2 * n))), 2 * n)
    probabilities = np.real(np.diag(decoder @ rho @ decoder.conj().T))
    return _bell_outcomes(probabilities, n)


def _reference_state(x: PauliString, y: PauliString, test: str) -> np.ndarray:
    """Reference state on 2n qubits: the Pauli-index state mapped by U_B = V / sqrt(N)."""
    n = x.n
    size = 4 ** n
    sigma = np.zeros((size, size), dtype=complex)
    i, j = x.index(), y.index()
    if test == "diag" or x == y:
        sigma[i, i] += 0.5
        sigma[j, j] += 0.5
    elif test == "re":
        sigma[np.ix_([i, j], [i, j])] = 0.5
    elif test == "im":
        sigma[np.ix_([i, j], [i, j])] = np.array([[0.5, 0.5j], [-0.5j, 0.5]])
    else:
        raise InvalidInputError(f"Unknown SWAP reference {test!r}")
    basis = np.stack([s.matrix().reshape(-1) for s in all_pauli_strings(n)], axis=1) / np.sqrt(2 ** n)
    return basis @ sigma @ basis.conj().T


def swap_circuit(channel: SuperopSpectrum, x: PauliString, y: PauliString, test: str) -> Dict[int, float]:
    """SWAP test between J / N (register A) and the reference state (register B)."""
    n = channel.n
    width = 2 * n
    qubits = 1 + 2 * width
    rho = superop_to_choi(channel) / 2 ** n
    reference = _reference_state(x, y, test)
    ancilla = np.array([[1, 0], [0, 0]], dtype=complex)
    state = reduce(np.kron, (ancilla, rho, reference))
    size = 2 ** width
    swap = np.eye(size * size, dtype=complex).reshape(size, size, size, size).transpose(1, 0, 2, 3)
    swap = swap.reshape(size * size, size * size)
    gates = [(HADAMARD, [0]), (_controlled(swap), list(range(qubits))), (HADAMARD, [0])]
    unitary = _circuit_unitary(gates, qubits)
    state = unitary @ state @ unitary.conj().T
    zero = float(np.real(np.trace(state[: 2 ** (qubits - 1), : 2 ** (qubits - 1)])))
    return {0: zero, 1: 1.0 - zero}


def probe_circuit(channel: SuperopSpectrum, s: PauliString) -> Dict[Tuple[int, ...], float]:
    """+1 eigenstates of sigma_s in, channel, measurement in the eigenbases of sigma_s."""
    n = channel.n
    preparation = reduce(np.kron, (PAULI_EIGENSTATES[symbol][0] for symbol in s.word))
    rho = channel.apply(np.outer(preparation, preparation.conj()))
    rotation = reduce(np.kron, (PAULI_EIGENSTATES[symbol].conj() for symbol in s.word))
    probabilities = np.real(np.diag(rotation @ rho @ rotation.conj().T))
    law: Dict[Tuple[int, ...], float] = {}
    for index, probability in enumerate(probabilities):
        key = tuple(int(bit) for bit in format(index, f"0{n}b"))
        law[key] = law.get(key, 0.0) + float(probability)
    return law


# ----------------------------------------------------------------------------
# Cross-check
# ----------------------------------------------------------------------------
def _hadamard_pair(params):
    unitary = _as_spectrum(params["unitary"])
    return unitary.n, (lambda: primitives.hadamard_distribution(unitary, params["x"], params["part"]),
                       lambda: hadamard_circuit(unitary, params["x"], params["part"]))


def _bell_pair(params):
    unitary = _as_spectrum(params["unitary"])
    return unitary.n, (lambda: primitives.bell_distribution(unitary), lambda: bell_circuit(unitary))


def _choi_diag_pair(params):
    channel = params["channel"]
    return channel.n, (lambda: primitives.choi_diag_distribution(channel), lambda: choi_diag_circuit(channel))


def _swap_pair(params):
    channel, x, y, test = params["channel"], params["x"], params["y"], params["test"]
    return channel.n, (lambda: primitives.swap_distribution(channel, x, y, test),
                       lambda: swap_circuit(channel, x, y, test))


def _probe_pair(params):
    channel, s = params["channel"], params["s"]
    rates = {x: max(rate, 0.0) for x, rate in channel.diagonal().items()}
    return channel.n, (lambda: primitives.probe_distribution(rates, s), lambda: probe_circuit(channel, s))


CROSS_CHECKS: Dict[str, Callable[[Mapping[str, Any]], Tuple[int, Tuple[Callable, Callable]]]] = {
    "hadamard": _hadamard_pair,
    "bell": _bell_pair,
    "choi_diag": _choi_diag_pair,
    "swap": _swap_pair,
    "pauli_probe": _probe_pair,
}


def circuit_cross_check(tag: str, params: Mapping[str, Any]) -> Tuple[Dict, Dict]:
    """(analytic law used by the sampler, law from explicit circuit simulation)."""
    if tag not in CROSS_CHECKS:
        raise InvalidInputError(f"No circuit for primitive {tag!r}")
    n, (analytic, circuit) = CROSS_CHECKS[tag](params)
    _check_cap(n)
    expected, simulated = analytic(), circuit()
    logger.debug(f"Cross-check {tag}: TV = {tv_distance(expected, simulated):.3e}")
    return expected, simulated
