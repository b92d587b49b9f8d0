"""
Learning low-degree Pauli channels.

The unentangled learner probes the channel with product eigenstates of random bases s and
measures back in s. For an error string x it averages the estimator

    (-1/2)^m,  m = sum_j [ r_j XOR (s * x)_j ]

where r is the observed commutation pattern and s * x that of x. The count m is taken over
the integers, not mod 2; the per-site factor then averages to 1 when the hidden error agrees
with x on that site and to 0 otherwise, so the estimator is unbiased for Phi^(x, x).
"""
import itertools
import logging
from typing import Dict, Mapping, Optional

import mpmath
import numpy as np

from ..core.channels import pauli_channel
from ..core.exceptions import InvalidInputError, NotAChannelError
from ..core.pauli import PauliString, low_weight_strings, star, star_array
from ..core.spectra import SuperopSpectrum
from ..simulation.base import ShotOracle
from ..simulation.primitives import expect_kind, pauli_channel_probes, sample_choi_diag_channel
from .budgets import check_enumeration, entangled_shot_count, pauli_channel_probe_count
from .empirical import empirical_distribution
from .params import LearnParams, LearnReport, queries_since

logger = logging.getLogger(__name__)


def pauli_estimates(bases: np.ndarray, outcomes: np.ndarray, d: int) -> Dict[PauliString, float]:
    """Mean of the (-1/2)^m estimator over all probes for every string of weight <= d."""
    n = bases.shape[1]
    powers = (-0.5) ** np.arange(n + 1)
    estimates = {}
    for x in low_weight_strings(n, d):
        expected = star_array(bases, np.asarray(x.word, dtype=np.int8))
        mismatches = np.count_nonzero(outcomes != expected, axis=1)
        estimates[x] = float(powers[mismatches].mean())
    return estimates


def estimator_expectation(rates: Mapping[PauliString, float], x: PauliString) -> mpmath.mpf:
    """Exact average of the estimator for x over uniform bases and the hidden error law."""
    n = x.n
    total = mpmath.mpf(0)
    for word in itertools.product((1, 2, 3), repeat=n):
        s = PauliString(word)
        pattern = star(s, x)
        for z, rate in rates.items():
            m = sum(a != b for a, b in zip(star(s, z), pattern))
            total += mpmath.mpf(rate) * mpmath.power(mpmath.mpf(-0.5), m)
    return total / 3 ** n


def learn_pauli_channel(oracle: ShotOracle, params: LearnParams, probes: Optional[int] = None) -> LearnReport:
    """Unentangled learner; `probes` replaces the theory count when given."""
    expect_kind(oracle, "pauli_probe", "channel", NotAChannelError, "a Pauli channel")
    n = oracle.n
    strings = check_enumeration(n, params.d)
    start = oracle.budget_used
    count = params.scaled(pauli_channel_probe_count(params, n)) if probes is None else int(probes)
    if count < 1:
        raise InvalidInputError(f"Need at least one probe, got {count}")
    logger.info(f"learn_pauli_channel: {count} probes, {strings} candidate strings")
    bases, outcomes = pauli_channel_probes(oracle, count)
    estimates = pauli_estimates(bases, outcomes, params.d)
    learned = SuperopSpectrum(n, {(x, x): value for x, value in estimates.items()}, is_channel=None)
    return LearnReport(
        algorithm="learn_pauli_channel",
        params=params,
        learned=learned,
        queries=queries_since(start, oracle.budget_used),
        heavy_set=sorted(estimates),
        budget={"probes": count, "strings": strings},
    )


def learn_pauli_channel_entangled(oracle: ShotOracle, params: LearnParams, shots: Optional[int] = None) -> LearnReport:
    """Bell sampling of the Choi state; the empirical distribution is the estimate."""
    n = oracle.n
    start = oracle.budget_used
    count = params.scaled(entangled_shot_count(params, n)) if shots is None else int(shots)
    logger.info(f"learn_pauli_channel_entangled: {count} Bell samples")
    frequencies = empirical_distribution(sample_choi_diag_channel(oracle, count))
    return LearnReport(
        algorithm="learn_pauli_channel_entangled",
        params=params,
        learned=pauli_channel(frequencies),
        queries=queries_since(start, oracle.budget_used),
        heavy_set=sorted(frequencies),
        budget={"shots": count},
    )
