"""
Learning Boolean functions exactly and bounded polynomials approximately.
"""
import logging
import math
from typing import Dict, Iterable, List, Sequence, Tuple

import numpy as np

from ..config import config
from ..core.exceptions import InvalidInputError
from ..core.pauli import low_weight_subsets
from ..core.spectra import BooleanSpectrum
from ..simulation.base import ShotOracle
from ..simulation.block_encoding import sector_subset
from ..simulation.primitives import cj_sample_block_encoding, classical_examples_boolean, quantum_examples_boolean
from .budgets import boolean_sample_counts, bounded_poly_counts, bounded_poly_threshold
from .params import LearnParams, LearnReport, queries_since

logger = logging.getLogger(__name__)

Bits = Tuple[int, ...]

BOOLEAN_MODES = ("classical", "quantum")

# Distance from a half-integer below which a scaled estimate counts as a tie
_TIE_TOL = 1e-12


def estimate_coefficients(points: np.ndarray, values: np.ndarray, subsets: Iterable[Bits]) -> Dict[Bits, float]:
    """Empirical f^(s) = mean f(x) chi_s(x) for each subset."""
    estimates = {}
    for s in subsets:
        support = [i for i, bit in enumerate(s) if bit]
        characters = np.prod(points[:, support], axis=1) if support else np.ones(points.shape[0])
        estimates[tuple(s)] = float(np.mean(values * characters))
    return estimates


def round_to_grid(value: float, d: int) -> Tuple[float, bool]:
    """
    Nearest point of 2^(1-d) Z.

    An estimate halfway between two grid points goes to the one of smaller magnitude; the second
    element of the result flags such a tie.
    """
    step = 2.0 ** (1 - d)
    scaled = value / step
    lower = math.floor(scaled)
    if abs(scaled - lower - 0.5) <= _TIE_TOL:
        return min(lower, lower + 1, key=abs) * step, True
    return round(scaled) * step, False


def _rounded_spectrum(n: int, estimates: Dict[Bits, float], d: int) -> Tuple[BooleanSpectrum, List[Bits]]:
    coeffs, ties = {}, []
    for s, value in estimates.items():
        coeffs[s], tie = round_to_grid(value, d)
        if tie:
            ties.append(s)
    for s in ties:
        logger.warning(f"Rounding tie for subset {''.join(map(str, s))}, kept the smaller magnitude")
    return BooleanSpectrum(n, coeffs), ties


def learn_boolean_exact(oracle: ShotOracle, params: LearnParams, mode: str = "classical") -> LearnReport:
    """
    Recover a degree-d Boolean function exactly.

    Classical mode estimates every coefficient of size <= d from uniform examples. Quantum mode
    Fourier samples the support first and only estimates the sampled subsets, from
    computational-basis measurements of quantum examples.
    """
    if mode not in BOOLEAN_MODES:
        raise InvalidInputError(f"Unknown mode {mode!r}; expected one of {BOOLEAN_MODES}")
    n, d = oracle.n, params.d
    start = oracle.budget_used
    counts = boolean_sample_counts(params, n)
    budget = {"mode": mode}
    if mode == "classical":
        subsets: Sequence[Bits] = list(low_weight_subsets(n, d))
        examples = params.scaled(counts.classical)
        points, values = classical_examples_boolean(oracle, examples)
    else:
        fourier = params.scaled(counts.fourier)
        subsets = sorted(set(quantum_examples_boolean(oracle, fourier)))
        examples = params.scaled(counts.quantum_estimation)
        points, values = classical_examples_boolean(oracle, examples, measured_quantum=True)
        budget["fourier_samples"] = fourier
    budget["examples"] = examples
    logger.info(f"learn_boolean_exact[{mode}]: {len(subsets)} candidate subsets, {examples} examples")

    learned, ties = _rounded_spectrum(n, estimate_coefficients(points, values, subsets), d)
    return LearnReport(
        algorithm="learn_boolean_exact",
        params=params,
        learned=learned,
        queries=queries_since(start, oracle.budget_used),
        threshold=2.0 ** (1 - d),
        heavy_set=list(subsets) if mode == "quantum" else [],
        budget=budget,
        diagnostics={"ties": ties},
    )


def learn_bounded_poly(oracle: ShotOracle, params: LearnParams) -> LearnReport:
    """
    Learn p: {-1,1}^n -> [-1,1] of degree d to squared l2 error eps^2.

    Bell samples of the block encoding U_p that land in the {3} x {0,3}^n sector name the support;
    uniform examples then estimate those coefficients.
    """
    settings = config.learners.bounded_poly
    n = oracle.n
    start = oracle.budget_used
    a = bounded_poly_threshold(params)
    phase1 = params.scaled(bounded_poly_counts(params, a).phase1, settings.min_phase1_shots)
    samples = cj_sample_block_encoding(oracle, phase1)
    subsets = [sector_subset(x) for x in samples]
    support = sorted({s for s in subsets if s is not None})
    discarded = sum(s is None for s in subsets)
    if discarded:
        logger.info(f"learn_bounded_poly: discarded {discarded} of {phase1} samples outside the sector")

    phase2 = params.scaled(bounded_poly_counts(params, a, phase1).phase2_total, settings.min_phase2_examples)
    logger.info(f"learn_bounded_poly: a = {a:.3e}, |support| = {len(support)}, {phase2} examples")
    points, values = classical_examples_boolean(oracle, phase2)
    learned = BooleanSpectrum(n, estimate_coefficients(points, values, support))
    return LearnReport(
        algorithm="learn_bounded_poly",
        params=params,
        learned=learned,
        queries=queries_since(start, oracle.budget_used),
        threshold=a,
        heavy_set=support,
        budget={"phase1_shots": phase1, "phase2_examples": phase2},
        diagnostics={"discarded": discarded},
    )
