import itertools

import numpy as np
import pytest
import yaml

from lowdegree.config import config
from lowdegree.core.channels import amplitude_damping_channel, depolarizing_channel, pauli_channel
from lowdegree.core.exceptions import CapExceededError, NotAChannelError
from lowdegree.core.families import pauli_mixture_channel
from lowdegree.core.pauli import PauliString, low_weight_strings
from lowdegree.core.spectra import OperatorSpectrum
from lowdegree.learning.params import LearnParams
from lowdegree.learning.pauli_channels import (estimator_expectation, learn_pauli_channel,
                                               learn_pauli_channel_entangled, pauli_estimates)
from lowdegree.learning.scoring import score_report
from lowdegree.simulation.mock import InstrumentedOracle
from lowdegree.simulation.oracle import SimulatedOracle

P = PauliString.from_str


def test_identity_channel_estimate_is_exact():
    truth = pauli_channel({"00": 1.0})
    report = learn_pauli_channel(SimulatedOracle(truth, seed=0), LearnParams(d=2, epsilon=0.2, delta=0.1),
                                 probes=200)
    assert report.learned[(P("00"), P("00"))] == 1.0
    assert report.queries == {"pauli_probe": 200}


def test_estimator_expectation_single_qubit():
    rates = {P("0"): 0.75, P("1"): 0.25}
    assert float(estimator_expectation(rates, P("1"))) == pytest.approx(0.25, abs=1e-12)
    assert float(estimator_expectation(rates, P("0"))) == pytest.approx(0.75, abs=1e-12)
    assert abs(float(estimator_expectation(rates, P("3")))) <= 1e-12


@pytest.mark.parametrize("seed", range(4))
def test_estimator_is_unbiased_on_two_qubits(seed):
    rng = np.random.default_rng(seed)
    strings = list(low_weight_strings(2, 2))
    rates = dict(zip(strings, rng.dirichlet(np.ones(len(strings)))))
    for x in strings:
        assert abs(float(estimator_expectation(rates, x)) - rates[x]) <= 1e-12


def test_estimates_over_all_bases_pick_out_the_error():
    # One probe per basis with a fixed hidden error averages the estimator exactly
    error = P("12")
    bases = np.array(list(itertools.product((1, 2, 3), repeat=2)), dtype=np.int8)
    outcomes = ((np.asarray(error.word) != 0) & (np.asarray(error.word) != bases)).astype(np.int8)
    estimates = pauli_estimates(bases, outcomes, 2)
    assert len(estimates) == 16
    for x, value in estimates.items():
        assert value == pytest.approx(1.0 if x == error else 0.0, abs=1e-12)


def test_random_channels_meet_tv_bound():
    params = LearnParams(d=2, epsilon=0.2, delta=0.1)
    for seed in range(3):
        truth = pauli_mixture_channel(3, 2, 5, seed)
        report = learn_pauli_channel(SimulatedOracle(truth, seed=seed), params)
        assert report.budget["strings"] == 37
        assert score_report(report, truth)["tv"] <= 0.1


def test_entangled_point_mass():
    truth = pauli_channel({"000": 1.0})
    report = learn_pauli_channel_entangled(SimulatedOracle(truth, seed=0), LearnParams(d=2, epsilon=0.2, delta=0.1))
    assert dict(report.learned.diagonal()) == {P("000"): 1.0}


def test_entangled_depolarizing():
    truth = depolarizing_channel(0.3)
    good = 0
    for seed in range(20):
        report = learn_pauli_channel_entangled(SimulatedOracle(truth, seed=seed),
                                               LearnParams(d=2, epsilon=0.2, delta=0.05), shots=10 ** 4)
        good += score_report(report, truth)["tv"] <= 0.05
    assert good >= 19


def test_entangled_uses_fewer_queries():
    truth = pauli_mixture_channel(3, 2, 4, 1)
    params = LearnParams(d=2, epsilon=0.2, delta=0.1)
    entangled = learn_pauli_channel_entangled(SimulatedOracle(truth, seed=1), params)
    unentangled = learn_pauli_channel(SimulatedOracle(truth, seed=1), params)
    assert entangled.total_queries < unentangled.total_queries
    scores = score_report(entangled, truth)
    assert scores["diamond"] == pytest.approx(2 * scores["tv"])


def test_enumeration_cap_is_checked_before_probing():
    oracle = SimulatedOracle(pauli_channel({"I" * 60: 1.0}), seed=0)
    with pytest.raises(CapExceededError):
        learn_pauli_channel(oracle, LearnParams(d=3, epsilon=0.2, delta=0.1))
    assert oracle.total_queries == 0


def test_unitary_is_refused_before_enumeration(monkeypatch):
    monkeypatch.setattr(config.learners.pauli_channel, "enumeration_cap", 1)
    oracle = SimulatedOracle(OperatorSpectrum(2, {P("00"): 1.0}), seed=0)
    with pytest.raises(NotAChannelError):
        learn_pauli_channel(oracle, LearnParams(d=2, epsilon=0.2, delta=0.1))
    assert oracle.total_queries == 0


def test_non_pauli_channel_is_refused():
    oracle = SimulatedOracle(amplitude_damping_channel(0.4), seed=0)
    with pytest.raises(NotAChannelError):
        learn_pauli_channel(oracle, LearnParams(d=2, epsilon=0.2, delta=0.1), probes=10)
    assert oracle.total_queries == 0


def test_reproducible():
    truth = pauli_mixture_channel(2, 2, 3, 4)
    params = LearnParams(d=2, epsilon=0.3, delta=0.1)
    first, second = InstrumentedOracle(truth, seed=3), InstrumentedOracle(truth, seed=3)
    a, b = learn_pauli_channel(first, params), learn_pauli_channel(second, params)
    assert yaml.safe_dump(a.to_document()) == yaml.safe_dump(b.to_document())
    assert first.leaks == 0


@pytest.mark.slow
def test_pauli_channel_learner_contract():
    params = LearnParams(d=2, epsilon=0.2, delta=0.1)
    good, cheaper = 0, 0
    for seed in range(100):
        truth = pauli_mixture_channel(3, 2, 5, seed)
        report = learn_pauli_channel(SimulatedOracle(truth, seed=seed), params)
        entangled = learn_pauli_channel_entangled(SimulatedOracle(truth, seed=seed), params)
        good += score_report(report, truth)["tv"] <= 0.1 and score_report(entangled, truth)["tv"] <= 0.1
        cheaper += entangled.total_queries < report.total_queries
    assert good >= 90
    assert cheaper == 100


@pytest.mark.slow
def test_median_error_does_not_grow_with_shots():
    truth = depolarizing_channel(0.3)
    medians = []
    for multiplier in (0.25, 1.0, 4.0):
        params = LearnParams(d=1, epsilon=0.2, delta=0.1, shot_multiplier=multiplier)
        errors = [score_report(learn_pauli_channel_entangled(SimulatedOracle(truth, seed=seed), params),
                               truth)["tv"] for seed in range(50)]
        medians.append(np.median(errors))
    assert medians[0] >= medians[1] >= medians[2]
