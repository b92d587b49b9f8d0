"""
Standard channels and superoperators used by tests, examples and the instance generator.
"""
from typing import List, Mapping, Union

import numpy as np

from .constants import PAULI_MATRICES
from .exceptions import InvalidInputError
from .pauli import PauliString
from .spectra import OperatorSpectrum, SuperopSpectrum
from .transforms import spectrum_of_superop


def identity_channel(n: int) -> SuperopSpectrum:
    identity = PauliString.identity(n)
    return SuperopSpectrum(n, {(identity, identity): 1.0}, is_channel=True)


def depolarizing_kraus(p: float) -> List[np.ndarray]:
    if not 0.0 <= p <= 1.0:
        raise InvalidInputError(f"Depolarizing parameter {p} outside [0, 1]")
    return [np.sqrt(1 - p) * PAULI_MATRICES[0]] + [np.sqrt(p / 3) * PAULI_MATRICES[k] for k in (1, 2, 3)]


def depolarizing_channel(p: float) -> SuperopSpectrum:
    """rho -> (1-p) rho + p/3 (X rho X + Y rho Y + Z rho Z)."""
    return spectrum_of_superop(kraus=depolarizing_kraus(p))


def amplitude_damping_kraus(gamma: float) -> List[np.ndarray]:
    if not 0.0 <= gamma <= 1.0:
        raise InvalidInputError(f"Damping rate {gamma} outside [0, 1]")
    return [np.array([[1, 0], [0, np.sqrt(1 - gamma)]], dtype=complex),
            np.array([[0, np.sqrt(gamma)], [0, 0]], dtype=complex)]


def amplitude_damping_channel(gamma: float) -> SuperopSpectrum:
    return spectrum_of_superop(kraus=amplitude_damping_kraus(gamma))


def pauli_channel(rates: Mapping[Union[PauliString, str], float], tol: float = 1e-9) -> SuperopSpectrum:
    """Diagonal spectrum rho -> sum_x p(x) sigma_x rho sigma_x."""
    parsed = {}
    for key, rate in rates.items():
        key = PauliString.from_str(key) if isinstance(key, str) else key
        if rate < -tol:
            raise InvalidInputError(f"Negative error rate {rate} for {key}")
        parsed[key] = parsed.get(key, 0.0) + float(rate)
    if not parsed:
        raise InvalidInputError("Pauli channel needs at least one rate")
    n = next(iter(parsed)).n
    total = sum(parsed.values())
    if abs(total - 1.0) > tol:
        raise InvalidInputError(f"Error rates sum to {total:.12g}, not 1")
    return SuperopSpectrum(n, {(x, x): rate for x, rate in parsed.items()}, is_channel=True)


def unitary_channel(unitary: OperatorSpectrum) -> SuperopSpectrum:
    """rho -> U rho U^*, from the spectrum of U."""
    return spectrum_of_superop(kraus=[unitary], is_channel=True)


def character(x: PauliString, y: PauliString) -> SuperopSpectrum:
    """The basis superoperator rho -> sigma_x rho sigma_y."""
    return SuperopSpectrum(x.n, {(x, y): 1.0}, is_channel=None)


def right_multiplication_superop(operator: OperatorSpectrum) -> SuperopSpectrum:
    """rho -> rho M; its S1 -> S_inf norm equals ||M||_op."""
    identity = PauliString.identity(operator.n)
    return SuperopSpectrum(operator.n, {(identity, y): value for y, value in operator.items()},
                           is_channel=False)
