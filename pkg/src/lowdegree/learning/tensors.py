"""
Learning block-multilinear forms from uniform samples (x, T(x)).

Every coefficient is estimated by the empirical correlation of T with x_1(i_1) ... x_d(i_d);
estimates below the threshold tau are zeroed.
"""
import logging
import string

import numpy as np

from ..bh.tensor import MultilinearTensor
from ..core.exceptions import InvalidInputError
from ..qqa.algorithm import QuerySamples
from ..simulation.base import ShotOracle
from ..simulation.primitives import amplitude_samples
from .budgets import tensor_sample_count, tensor_threshold
from .params import LearnParams, LearnReport, queries_since

logger = logging.getLogger(__name__)


def empirical_coefficients(points: np.ndarray, values: np.ndarray) -> np.ndarray:
    count, d, _ = points.shape
    letters = string.ascii_lowercase
    batch = letters[d]
    subscripts = [batch] + [batch + letters[t] for t in range(d)]
    operands = [values] + [points[:, t, :] for t in range(d)]
    return np.einsum(",".join(subscripts) + "->" + letters[:d], *operands) / count


def learn_tensor_ei(samples: QuerySamples, d: int, n: int, params: LearnParams) -> LearnReport:
    points = np.asarray(samples.points)
    values = np.asarray(samples.values)
    if points.ndim != 3 or points.shape[1:] != (d, n):
        raise InvalidInputError(f"Sample points must have shape (count, {d}, {n}), got {points.shape}")
    if values.shape != (points.shape[0],):
        raise InvalidInputError(f"{values.shape[0] if values.ndim else 0} values for {points.shape[0]} points")
    if points.shape[0] == 0:
        raise InvalidInputError("Cannot learn a tensor from no samples")
    tau = tensor_threshold(params)
    coefficients = empirical_coefficients(points, values)
    kept = np.abs(coefficients) >= tau
    logger.info(f"learn_tensor_ei: {points.shape[0]} samples, kept {int(kept.sum())} of {kept.size} "
                f"coefficients at tau = {tau:.3e}")
    learned = MultilinearTensor(np.where(kept, coefficients, 0.0))
    return LearnReport(
        algorithm="learn_tensor_ei",
        params=params,
        learned=learned,
        queries={"amplitude_sample": int(points.shape[0])},
        threshold=tau,
        heavy_set=[",".join(str(int(i)) for i in index) for index in zip(*np.nonzero(kept))],
        budget={"samples": int(points.shape[0])},
    )


def learn_tensor_from_oracle(oracle: ShotOracle, params: LearnParams) -> LearnReport:
    """Draw the theory count of amplitude samples, then run learn_tensor_ei with d = params.d queries."""
    start = oracle.budget_used
    count = params.scaled(tensor_sample_count(params, oracle.n))
    samples = amplitude_samples(oracle, count)
    report = learn_tensor_ei(samples, params.d, oracle.n, params)
    report.queries = queries_since(start, oracle.budget_used)
    return report
