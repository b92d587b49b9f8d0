"""
Learning low-degree channels in two phases.

Phase 1 Bell-samples the Choi state and keeps the heavy set X_c of strings whose empirical
diagonal weight is at least c. Phase 2 estimates every Phi^(x, y) on X_c x X_c with SWAP
tests; coefficients outside the heavy set are set to zero.
"""
import logging
from typing import Optional

from ..config import config
from ..core.spectra import SuperopSpectrum
from ..simulation.base import ShotOracle
from ..simulation.primitives import estimate_channel_coeff, sample_choi_diag_channel
from .budgets import channel_counts, channel_threshold
from .empirical import empirical_distribution, heavy_keys
from .params import LearnParams, LearnReport, queries_since

logger = logging.getLogger(__name__)


def learn_channel(oracle: ShotOracle, params: LearnParams, rule: Optional[str] = None) -> LearnReport:
    settings = config.learners.channel
    start = oracle.budget_used
    c = channel_threshold(params, rule)
    counts = channel_counts(params, c)

    phase1_shots = params.scaled(counts.phase1, settings.min_phase1_shots)
    frequencies = empirical_distribution(sample_choi_diag_channel(oracle, phase1_shots))
    heavy = heavy_keys(frequencies, c)
    # a single observation already clears c when c <= 1 / phase1_shots
    binding = bool(c * phase1_shots > 1.0)
    logger.info(f"learn_channel: c = {c:.3e}, {phase1_shots} diagonal samples, |X_c| = {len(heavy)}, "
                f"threshold binding: {binding}")

    pairs = [(x, y) for x in heavy for y in heavy]
    pair_shots = params.scaled(counts.phase2_total / max(len(pairs), 1), settings.min_pair_shots)
    logger.info(f"learn_channel: {len(pairs)} coefficients at {pair_shots} shots each")
    estimates = {(x, y): estimate_channel_coeff(oracle, x, y, pair_shots) for x, y in pairs}

    learned = SuperopSpectrum(oracle.n, estimates, is_channel=None)
    return LearnReport(
        algorithm="learn_channel",
        params=params,
        learned=learned,
        queries=queries_since(start, oracle.budget_used),
        threshold=c,
        heavy_set=heavy,
        budget={"phase1_shots": phase1_shots, "pair_shots": pair_shots, "pairs": len(pairs),
                "theory_phase2_total": counts.phase2_total, "threshold_binding": binding},
        diagnostics={"phase1_frequencies": frequencies},
    )
