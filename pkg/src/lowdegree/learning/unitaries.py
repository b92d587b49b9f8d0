"""
Learning low-degree unitaries.

Bell sampling |v(U)> finds the strings with |U^(x)| >= c (empirical weight at least c^2);
Hadamard tests on sigma_x U then estimate the real and imaginary part of each U^(x).
"""
import logging

from ..config import config
from ..core.spectra import OperatorSpectrum
from ..simulation.base import ShotOracle
from ..simulation.primitives import bell_sample_unitary, hadamard_test
from .budgets import unitary_counts, unitary_threshold
from .empirical import empirical_distribution, heavy_keys
from .params import LearnParams, LearnReport, queries_since

logger = logging.getLogger(__name__)


def learn_unitary(oracle: ShotOracle, params: LearnParams) -> LearnReport:
    settings = config.learners.unitary
    start = oracle.budget_used
    c = unitary_threshold(params)
    counts = unitary_counts(params, c)

    phase1_shots = params.scaled(counts.phase1, settings.min_phase1_shots)
    frequencies = empirical_distribution(bell_sample_unitary(oracle, phase1_shots))
    heavy = heavy_keys(frequencies, c * c)
    part_shots = params.scaled(counts.phase2_total / max(2 * len(heavy), 1), settings.min_part_shots)
    logger.info(f"learn_unitary: c = {c:.3e}, |X_c| = {len(heavy)}, {part_shots} shots per Hadamard test")

    estimates = {x: complex(hadamard_test(oracle, x, "re", part_shots), hadamard_test(oracle, x, "im", part_shots))
                 for x in heavy}
    return LearnReport(
        algorithm="learn_unitary",
        params=params,
        learned=OperatorSpectrum(oracle.n, estimates),
        queries=queries_since(start, oracle.budget_used),
        threshold=c,
        heavy_set=heavy,
        budget={"phase1_shots": phase1_shots, "part_shots": part_shots,
                "theory_phase2_total": counts.phase2_total, "threshold_binding": bool(c * c * phase1_shots > 1.0)},
        diagnostics={"phase1_frequencies": frequencies},
    )
