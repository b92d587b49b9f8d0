"""
Norms that bound the inequalities from the other side: sup norms over the cube, the
S1 -> S_inf norm of a superoperator and operator norms.
"""
import logging
from typing import Iterable, Tuple, Union

import mpmath
import numpy as np

from ..config import config
from ..core.exceptions import CapExceededError, InvalidInputError
from ..core.spectra import BooleanSpectrum, OperatorSpectrum, SuperopSpectrum
from ..core.transforms import apply_choi, cube_points, synth_operator
from .tensor import MultilinearTensor

logger = logging.getLogger(__name__)

_CHUNK_LOG2 = 16


def _check_vertices(log2_count: int, what: str) -> None:
    cap = config.bh_lab.sup_norm_cap_log2
    if log2_count > cap:
        raise CapExceededError(f"Sup norm of {what} needs 2^{log2_count} evaluations, cap is 2^{cap}")


def sup_norm_bruteforce(target: Union[MultilinearTensor, BooleanSpectrum]) -> float:
    """
    Exact maximum of |T| over the vertices of the cube.

    Multilinear objects attain their sup over [-1, 1] at a vertex, so the enumeration is exact
    for real coefficients.
    """
    if isinstance(target, BooleanSpectrum):
        _check_vertices(target.n, "a Boolean function")
        return float(np.max(np.abs(target.truth_table())))
    if not isinstance(target, MultilinearTensor):
        raise InvalidInputError(f"Cannot take the sup norm of {type(target).__name__}")
    total = target.d * target.n
    _check_vertices(total, repr(target))
    best = 0.0
    # Leading bits enumerate chunks, trailing bits the points inside a chunk
    inner = min(total, _CHUNK_LOG2)
    tail = cube_points(inner)
    for prefix in cube_points(total - inner) if total > inner else [np.empty(0, dtype=int)]:
        points = np.hstack([np.broadcast_to(prefix, (tail.shape[0], prefix.shape[0])), tail])
        values = target.evaluate(points.reshape(-1, target.d, target.n))
        best = max(best, float(np.max(np.abs(values))))
    return best


def _random_unit_vectors(rng: np.random.Generator, count: int, dim: int) -> np.ndarray:
    vectors = rng.standard_normal((count, dim)) + 1j * rng.standard_normal((count, dim))
    return vectors / np.linalg.norm(vectors, axis=1, keepdims=True)


class _RankOneSearch:
    """Running maximum of ||Phi(|u><v|)||_op over random unit vectors u, v."""

    def __init__(self, spectrum: SuperopSpectrum, seed: int):
        self.choi = spectrum.to_choi()
        self.dim = 2 ** spectrum.n
        self.rng = np.random.default_rng(seed)
        self.best = 0.0
        self.trials = 0

    def extend(self, trials: int) -> float:
        batch = config.bh_lab.rank_one_batch
        remaining = trials
        while remaining > 0:
            count = min(batch, remaining)
            u = _random_unit_vectors(self.rng, count, self.dim)
            v = _random_unit_vectors(self.rng, count, self.dim)
            outputs = apply_choi(self.choi, np.einsum('ki,kj->kij', u, v.conj()))
            norms = np.linalg.svd(outputs, compute_uv=False)[:, 0]
            self.best = max(self.best, float(norms.max()))
            remaining -= count
        self.trials += trials
        return self.best


def s1_to_sinfty_lb(spectrum: SuperopSpectrum, trials: int, seed: int = 0) -> float:
    """
    Lower bound on ||Phi||_{S1 -> S_inf} from random rank-one inputs.

    Extreme points of the S1 unit ball are rank one, so the bound approaches the norm from below.
    """
    if trials < 1:
        raise InvalidInputError(f"Need at least one trial, got {trials}")
    return _RankOneSearch(spectrum, seed).extend(trials)


def s1_to_sinfty_converged(spectrum: SuperopSpectrum, seed: int = 0) -> Tuple[float, int]:
    """Double the trial count until the bound moves by less than the relative tolerance."""
    start = config.bh_lab.rank_one_start_trials
    limit = config.bh_lab.rank_one_max_trials
    tol = config.bh_lab.rank_one_rel_tol
    search = _RankOneSearch(spectrum, seed)
    previous = search.extend(start)
    while search.trials < limit:
        current = search.extend(search.trials)
        if current - previous <= tol * max(current, 1e-300):
            logger.debug(f"Rank-one search converged at {current:.8g} after {search.trials} trials")
            return current, search.trials
        previous = current
    logger.info(f"Rank-one search stopped at the trial limit {limit} with bound {previous:.8g}")
    return search.best, search.trials


def s1_to_sinfty_upper(spectrum: SuperopSpectrum) -> float:
    """Each character sigma_x . sigma_y has S1 -> S_inf norm 1, so sum |Phi^| bounds the norm."""
    return float(np.sum(np.abs(spectrum.values_array())))


def operator_norm(spectrum: OperatorSpectrum) -> float:
    return float(np.linalg.norm(synth_operator(spectrum), 2))


def precise_bh_norm(values: Iterable[complex], d: int) -> mpmath.mpf:
    """The 2d/(d+1) norm at the configured witness precision, d = 0 treated as 1."""
    d = max(int(d), 1)
    with mpmath.workdps(config.bh_lab.witness_digits):
        p = mpmath.mpf(2 * d) / (d + 1)
        total = mpmath.fsum(mpmath.power(abs(mpmath.mpc(complex(v))), p) for v in values)
        return mpmath.power(total, 1 / p)
