"""
Bohnenblust-Hille type checks for superoperators, Boolean functions and matrices.
"""
import logging

import numpy as np

from ..config import config
from ..core.exceptions import DegreeExceededError, NotBooleanError
from ..core.spectra import BooleanSpectrum, OperatorSpectrum, SuperopSpectrum, bh_exponent
from .norms import operator_norm, precise_bh_norm, s1_to_sinfty_converged, s1_to_sinfty_upper
from .reports import InequalityReport

logger = logging.getLogger(__name__)

_SPOT_CHECK_POINTS = 4096


def _check_degree(spectrum, d: int) -> None:
    if spectrum.degree > max(d, 0):
        raise DegreeExceededError(f"Degree {spectrum.degree} exceeds the declared bound {d}")


def spectrum_field(spectrum) -> str:
    values = spectrum.values_array()
    return "complex" if np.any(np.abs(values.imag) > config.numerics.zero_tol) else "real"


def bh_check_channel(spectrum: SuperopSpectrum, d: int, seed: int = 0) -> InequalityReport:
    """
    ||Phi^||_{2d/(d+1)} against ||Phi||_{S1 -> S_inf}.

    For channels the norm is 1; otherwise the converged rank-one lower bound is used and the
    upper estimate sum |Phi^| is reported next to it.
    """
    _check_degree(spectrum, d)
    lhs = spectrum.pnorm(bh_exponent(d))
    if spectrum.is_channel:
        rhs = 1.0
        witness = {"regime": "channel", "d": d, "n": spectrum.n}
    else:
        rhs, trials = s1_to_sinfty_converged(spectrum, seed=seed)
        witness = {"regime": "superoperator", "d": d, "n": spectrum.n, "trials": trials,
                   "norm_upper": s1_to_sinfty_upper(spectrum)}
    witness["fitted_constant"] = (lhs / rhs) ** (1.0 / max(d, 1)) if rhs > 0 else float("inf")
    return InequalityReport.build("channel", lhs, rhs, field=spectrum_field(spectrum), witness=witness,
                                  tolerance=float("inf"))


def _require_boolean(spectrum: BooleanSpectrum, tol: float = 1e-9) -> None:
    if not spectrum.is_real:
        raise NotBooleanError("Boolean functions have real spectra")
    if spectrum.n <= config.numerics.boolean_table_cap_bits:
        values = spectrum.truth_table()
    else:
        rng = np.random.default_rng(0)
        values = spectrum.evaluate(rng.choice((-1, 1), size=(_SPOT_CHECK_POINTS, spectrum.n)))
        logger.info(f"Boolean check on {spectrum.n} variables uses {_SPOT_CHECK_POINTS} random points")
    if np.max(np.abs(np.abs(values) - 1.0)) > tol:
        raise NotBooleanError("Function is not +-1 valued")


def bh_check_boolean(spectrum: BooleanSpectrum, d: int) -> InequalityReport:
    """||f^||_{2d/(d+1)} <= 2^((d-1)/d) for +-1 valued f of degree at most d."""
    _require_boolean(spectrum)
    _check_degree(spectrum, d)
    d = max(d, 1)
    lhs = spectrum.pnorm(bh_exponent(d))
    rhs = 2.0 ** ((d - 1) / d)
    witness = {
        "d": d,
        "n": spectrum.n,
        "terms": len(spectrum),
        "lhs_precise": str(precise_bh_norm(spectrum.values_array(), d)),
    }
    return InequalityReport.build("boolean", lhs, rhs, witness=witness)


def bh_check_operator(spectrum: OperatorSpectrum, d: int) -> InequalityReport:
    """||M^||_{2d/(d+1)} against ||M||_op; the ratio is recorded, the constant is not asserted."""
    _check_degree(spectrum, d)
    lhs = spectrum.pnorm(bh_exponent(d))
    rhs = operator_norm(spectrum)
    witness = {"d": d, "n": spectrum.n, "fitted_constant": (lhs / rhs) ** (1.0 / max(d, 1)) if rhs > 0 else None}
    return InequalityReport.build("operator", lhs, rhs, field=spectrum_field(spectrum), witness=witness,
                                  tolerance=float("inf"))
