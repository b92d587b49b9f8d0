"""
Ground-truth objects an oracle can hide.

Targets validate their own preconditions on construction, so a primitive that receives one can
rely on it being a channel, a unitary, a +-1 valued function or a bounded function.
"""
import logging
from functools import cached_property
from typing import Dict, Optional

import numpy as np

from ..config import config
from ..core.exceptions import (InvalidInputError, NotAChannelError, NotBooleanError, NotUnitaryError,
                               UnboundedFunctionError)
from ..core.pauli import PauliString
from ..core.spectra import BooleanSpectrum, OperatorSpectrum, SuperopSpectrum, check_channel_matrix
from .block_encoding import block_encoding_spectrum

logger = logging.getLogger(__name__)

# Random points used to spot-check +-1 values when the truth table is over the cap
_SPOT_CHECK_POINTS = 4096


class ChannelTarget:
    kind = "channel"

    def __init__(self, spectrum: SuperopSpectrum):
        if spectrum.is_channel is False:
            raise NotAChannelError("Spectrum is flagged as not a channel")
        if spectrum.is_channel is None:
            check_channel_matrix(spectrum)
        self.spectrum = spectrum

    @property
    def n(self) -> int:
        return self.spectrum.n

    @property
    def is_pauli(self) -> bool:
        return self.spectrum.is_pauli_diagonal()

    def error_rates(self) -> Dict[PauliString, float]:
        """Diagonal Phi^(x, x), clipped at zero."""
        return {x: max(rate, 0.0) for x, rate in self.spectrum.diagonal().items()}


class UnitaryTarget:
    kind = "unitary"

    def __init__(self, spectrum: OperatorSpectrum, tol: float = 1e-9):
        total = sum(spectrum.probabilities().values())
        if abs(total - 1.0) > tol:
            raise NotUnitaryError(f"Squared Pauli coefficients sum to {total:.12g}, not 1")
        if spectrum.n <= config.numerics.dense_cap_qubits:
            matrix = spectrum.to_dense()
            if not np.allclose(matrix.conj().T @ matrix, np.eye(matrix.shape[0]), atol=1e-8):
                raise NotUnitaryError("Operator is not unitary")
        self.spectrum = spectrum

    @property
    def n(self) -> int:
        return self.spectrum.n


class FunctionTarget:
    """A real function on {-1,1}^n with sup norm at most 1; Boolean when it is +-1 valued."""
    kind = "function"

    def __init__(self, spectrum: BooleanSpectrum, tol: float = 1e-9):
        if not spectrum.is_real:
            raise InvalidInputError("Function targets must be real valued")
        self.spectrum = spectrum
        values = self._check_values(spectrum)
        peak = float(np.max(np.abs(values)))
        if peak > 1.0 + tol:
            raise UnboundedFunctionError(f"Function reaches |p| = {peak:.6g} > 1")
        self.is_boolean = bool(np.all(np.abs(np.abs(values) - 1.0) <= tol))

    @property
    def n(self) -> int:
        return self.spectrum.n

    @staticmethod
    def _check_values(spectrum: BooleanSpectrum) -> np.ndarray:
        if spectrum.n <= config.numerics.boolean_table_cap_bits:
            return spectrum.truth_table()
        logger.info(f"Checking {spectrum.n}-variable target on {_SPOT_CHECK_POINTS} random points only")
        rng = np.random.default_rng(0)
        points = 1 - 2 * rng.integers(0, 2, size=(_SPOT_CHECK_POINTS, spectrum.n))
        return spectrum.evaluate(points)

    def require_boolean(self) -> None:
        if not self.is_boolean:
            raise NotBooleanError("Target function is not +-1 valued")

    @cached_property
    def block_spectrum(self) -> OperatorSpectrum:
        return block_encoding_spectrum(self.spectrum)


class QueryAlgorithmTarget:
    kind = "query_algorithm"

    def __init__(self, algorithm):
        self.algorithm = algorithm

    @property
    def n(self) -> int:
        return self.algorithm.n


def target_for(obj, kind: Optional[str] = None):
    """Wrap a spectrum or query algorithm in the matching target class."""
    if isinstance(obj, (ChannelTarget, UnitaryTarget, FunctionTarget, QueryAlgorithmTarget)):
        return obj
    if isinstance(obj, SuperopSpectrum):
        return ChannelTarget(obj)
    if isinstance(obj, OperatorSpectrum):
        return UnitaryTarget(obj)
    if isinstance(obj, BooleanSpectrum):
        return FunctionTarget(obj)
    if kind == "query_algorithm" or hasattr(obj, "unitaries"):
        return QueryAlgorithmTarget(obj)
    raise InvalidInputError(f"Cannot build a target from {type(obj).__name__}")
