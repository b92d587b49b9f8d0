"""
Achieved errors of a LearnReport against the ground truth the harness generated.
"""
import logging
from typing import Any, Callable, Dict, Optional, Union

import numpy as np

from ..bh.tensor import MultilinearTensor
from ..core.exceptions import InvalidInputError
from ..core.spectra import (BooleanSpectrum, OperatorSpectrum, SuperopSpectrum, l2_distance, linf_distance,
                            tv_distance)
from ..qqa.algorithm import AmplitudeTensor
from .params import LearnParams, LearnReport

logger = logging.getLogger(__name__)

# Largest coefficient difference still counted as exact recovery
EXACT_TOL = 1e-9

# Metric each learner is judged by, and the bound it should meet
TARGET_METRICS: Dict[str, Callable[[LearnParams], tuple]] = {
    "learn_channel": lambda p: ("l2", p.epsilon),
    "learn_unitary": lambda p: ("l2", p.epsilon),
    "learn_pauli_channel": lambda p: ("tv", p.epsilon / 2),
    "learn_pauli_channel_entangled": lambda p: ("tv", p.epsilon / 2),
    "learn_boolean_exact": lambda p: ("linf", EXACT_TOL),
    "learn_bounded_poly": lambda p: ("l2sq", p.epsilon ** 2),
    "learn_tensor_ei": lambda p: ("l2sq", p.epsilon),
}

Truth = Union[SuperopSpectrum, OperatorSpectrum, BooleanSpectrum, MultilinearTensor, AmplitudeTensor]


def _tensor_errors(learned: MultilinearTensor, truth: MultilinearTensor) -> Dict[str, float]:
    if learned.coefficients.shape != truth.coefficients.shape:
        raise InvalidInputError(f"Cannot compare {learned!r} with {truth!r}")
    difference = np.abs(learned.coefficients - truth.coefficients)
    l2sq = float(np.sum(difference ** 2))
    return {"l2": float(np.sqrt(l2sq)), "l2sq": l2sq, "linf": float(difference.max())}


def achieved_errors(report: LearnReport, truth: Truth) -> Dict[str, Any]:
    learned = report.learned
    if isinstance(truth, AmplitudeTensor):
        truth = truth.tensor
    if isinstance(learned, MultilinearTensor):
        if not isinstance(truth, MultilinearTensor):
            raise InvalidInputError(f"A learned tensor cannot be scored against {type(truth).__name__}")
        return _tensor_errors(learned, truth)
    l2 = l2_distance(learned, truth)
    errors: Dict[str, Any] = {"l2": l2, "l2sq": l2 * l2, "linf": linf_distance(learned, truth)}
    if report.algorithm.startswith("learn_pauli_channel"):
        tv = tv_distance(learned.diagonal(), truth.diagonal())
        errors.update(tv=tv, diamond=2 * tv)
    if report.algorithm == "learn_boolean_exact":
        errors["exact"] = errors["linf"] <= EXACT_TOL
    return errors


def score_report(report: LearnReport, truth: Truth) -> Dict[str, Any]:
    """Fill report.achieved with the errors and whether the target metric met its bound."""
    errors = achieved_errors(report, truth)
    rule = TARGET_METRICS.get(report.algorithm)
    if rule is not None:
        metric, bound = rule(report.params)
        errors.update(metric=metric, bound=bound, success=bool(errors[metric] <= bound))
    report.achieved = errors
    logger.debug(f"{report.algorithm}: {errors}")
    return errors


def heavy_set_sound(report: LearnReport, truth: SuperopSpectrum) -> Optional[bool]:
    """
    Whether every string left out of the heavy set has Phi^(x, x) <= 2c.

    Only meaningful when the phase-1 frequencies were within c of the diagonal everywhere;
    returns None when that event failed.
    """
    frequencies = report.diagnostics.get("phase1_frequencies")
    if frequencies is None or report.threshold is None:
        raise InvalidInputError(f"{report.algorithm} report carries no phase-1 frequencies")
    c = report.threshold
    diagonal = truth.diagonal()
    keys = set(frequencies) | set(diagonal)
    if max(abs(frequencies.get(x, 0.0) - diagonal.get(x, 0.0)) for x in keys) > c:
        return None
    heavy = set(report.heavy_set)
    return all(rate <= 2 * c for x, rate in diagonal.items() if x not in heavy)
