from collections import Counter

import numpy as np
import pytest
from scipy.linalg import expm

from lowdegree.core.channels import amplitude_damping_channel, depolarizing_channel, identity_channel, pauli_channel
from lowdegree.core.constants import PAULI_MATRICES
from lowdegree.core.exceptions import InvalidInputError, NotAChannelError, NotBooleanError, NotUnitaryError
from lowdegree.core.pauli import PauliString
from lowdegree.core.spectra import BooleanSpectrum, tv_distance
from lowdegree.core.transforms import boolean_spectrum, cube_points, spectrum_of_operator
from lowdegree.qqa.algorithm import product_of_dictators
from lowdegree.simulation.oracle import SimulatedOracle
from lowdegree.simulation.primitives import (amplitude_samples, bell_sample_unitary, classical_example_boolean,
                                             classical_examples_boolean, estimate_channel_coeff, hadamard_test,
                                             pauli_channel_probe, pauli_channel_probes, quantum_example_boolean,
                                             quantum_examples_boolean, sample_choi_diag_channel)

P = PauliString.from_str


def frequencies(samples):
    counts = Counter(samples)
    return {key: count / len(samples) for key, count in counts.items()}


def rotation(theta):
    return expm(1j * theta * PAULI_MATRICES[3])


def majority3():
    return boolean_spectrum(np.sign(cube_points(3).sum(axis=1)).astype(float))


# ----------------------------------------------------------------------------
# Choi-state sampling and SWAP estimates
# ----------------------------------------------------------------------------
def test_choi_diag_point_mass():
    oracle = SimulatedOracle(identity_channel(2), seed=0)
    assert sample_choi_diag_channel(oracle, 100) == [P("00")] * 100


def test_choi_diag_depolarizing_frequencies():
    oracle = SimulatedOracle(depolarizing_channel(0.3), seed=1)
    observed = frequencies(sample_choi_diag_channel(oracle, 20000))
    for word, rate in {"0": 0.7, "1": 0.1, "2": 0.1, "3": 0.1}.items():
        assert observed[P(word)] == pytest.approx(rate, abs=0.02)


def test_choi_diag_two_qubit_pauli_channel():
    rates = {P("00"): 0.5, P("10"): 0.3, P("03"): 0.2}
    oracle = SimulatedOracle(pauli_channel(rates), seed=2)
    observed = frequencies(sample_choi_diag_channel(oracle, 10000))
    assert tv_distance(observed, rates) <= 0.05


def test_swap_estimates_on_identity():
    oracle = SimulatedOracle(identity_channel(1), seed=3)
    assert estimate_channel_coeff(oracle, P("0"), P("0"), 10000) == pytest.approx(1.0)
    off = estimate_channel_coeff(oracle, P("0"), P("3"), 100000)
    assert abs(off) <= 0.05
    assert oracle.budget_used == {"channel_swap": 110000}


def test_swap_estimate_amplitude_damping_off_diagonal():
    damping = amplitude_damping_channel(0.5)
    oracle = SimulatedOracle(damping, seed=4)
    estimate = estimate_channel_coeff(oracle, P("0"), P("3"), 300000)
    assert abs(estimate - damping[(P("0"), P("3"))]) <= 0.03


def test_swap_needs_three_shots_off_diagonal():
    oracle = SimulatedOracle(identity_channel(1), seed=3)
    with pytest.raises(InvalidInputError):
        estimate_channel_coeff(oracle, P("0"), P("1"), 2)


# ----------------------------------------------------------------------------
# Unitaries
# ----------------------------------------------------------------------------
def test_bell_sampling_examples():
    oracle = SimulatedOracle(spectrum_of_operator(np.eye(4)), seed=5)
    assert set(bell_sample_unitary(oracle, 50)) == {P("00")}
    oracle = SimulatedOracle(spectrum_of_operator(rotation(np.pi / 4)), seed=5)
    observed = frequencies(bell_sample_unitary(oracle, 10000))
    assert observed[P("0")] == pytest.approx(0.5, abs=0.02)
    assert observed[P("3")] == pytest.approx(0.5, abs=0.02)


def test_bell_sampling_cz():
    cz = spectrum_of_operator(np.diag([1, 1, 1, -1]))
    oracle = SimulatedOracle(cz, seed=6)
    observed = frequencies(bell_sample_unitary(oracle, 20000))
    assert tv_distance(observed, cz.probabilities()) <= 0.03


def test_hadamard_test_examples():
    oracle = SimulatedOracle(spectrum_of_operator(PAULI_MATRICES[3]), seed=7)
    assert hadamard_test(oracle, P("3"), "Re", 1000) == 1.0
    oracle = SimulatedOracle(spectrum_of_operator(np.eye(2)), seed=7)
    assert abs(hadamard_test(oracle, P("1"), "re", 10000)) <= 0.05
    assert abs(hadamard_test(oracle, P("2"), "im", 10000)) <= 0.05
    oracle = SimulatedOracle(spectrum_of_operator(rotation(np.pi / 6)), seed=7)
    assert hadamard_test(oracle, P("3"), "Im", 10000) == pytest.approx(0.5, abs=0.05)


def test_statistical_soundness_of_hadamard_and_swap():
    """Over 200 seeded trials the Hoeffding radius at delta = 0.05 fails at most 10% of the time."""
    shots = 400
    radius = np.sqrt(2 * np.log(2 / 0.05) / shots)
    unitary = spectrum_of_operator(rotation(np.pi / 5))
    damping = amplitude_damping_channel(0.4)
    truth_h = np.cos(np.pi / 5)
    truth_s = damping[(P("3"), P("3"))].real
    misses_h = misses_s = 0
    for trial in range(200):
        oracle = SimulatedOracle(unitary, seed=trial)
        misses_h += abs(hadamard_test(oracle, P("0"), "re", shots) - truth_h) > radius
        oracle = SimulatedOracle(damping, seed=trial)
        misses_s += abs(estimate_channel_coeff(oracle, P("3"), P("3"), shots).real - truth_s) > radius
    assert misses_h <= 20
    assert misses_s <= 20


# ----------------------------------------------------------------------------
# Pauli channels
# ----------------------------------------------------------------------------
def test_probe_examples():
    oracle = SimulatedOracle(identity_channel(3), seed=8)
    assert pauli_channel_probe(oracle, P("123")) == (0, 0, 0)
    flip = pauli_channel({"1": 1.0})
    oracle = SimulatedOracle(flip, seed=8)
    assert pauli_channel_probe(oracle, P("1")) == (0,)
    assert pauli_channel_probe(oracle, P("3")) == (1,)
    assert oracle.budget_used == {"pauli_probe": 2}


def test_batched_probes_follow_star_law():
    oracle = SimulatedOracle(pauli_channel({"0": 0.75, "1": 0.25}), seed=9)
    bases, outcomes = pauli_channel_probes(oracle, 30000)
    assert set(np.unique(bases)) <= {1, 2, 3}
    assert np.all(outcomes[bases == 1] == 0)
    rate = outcomes[bases == 3].mean()
    assert rate == pytest.approx(0.25, abs=0.02)
    assert oracle.budget_used == {"pauli_probe": 30000}


def test_probe_errors():
    oracle = SimulatedOracle(pauli_channel({"0": 1.0}), seed=1)
    with pytest.raises(InvalidInputError, match="must not contain 0"):
        pauli_channel_probe(oracle, P("0"))
    oracle = SimulatedOracle(amplitude_damping_channel(0.3), seed=1)
    with pytest.raises(NotAChannelError):
        pauli_channel_probe(oracle, P("1"))


# ----------------------------------------------------------------------------
# Boolean functions
# ----------------------------------------------------------------------------
def test_fourier_sampling_examples():
    parity = BooleanSpectrum(4, {(1, 1, 1, 1): 1.0})
    oracle = SimulatedOracle(parity, seed=10)
    assert set(quantum_examples_boolean(oracle, 100)) == {(1, 1, 1, 1)}
    dictator = BooleanSpectrum(3, {(1, 0, 0): 1.0})
    assert quantum_example_boolean(SimulatedOracle(dictator, seed=10)) == (1, 0, 0)
    observed = frequencies(quantum_examples_boolean(SimulatedOracle(majority3(), seed=10), 20000))
    assert len(observed) == 4
    for value in observed.values():
        assert value == pytest.approx(0.25, abs=0.02)


def test_fourier_sampling_needs_boolean_target():
    oracle = SimulatedOracle(BooleanSpectrum(2, {(1, 0): 0.5}), seed=11)
    with pytest.raises(NotBooleanError):
        quantum_examples_boolean(oracle, 10)
    assert oracle.total_queries == 0


def test_classical_examples_are_labelled_by_the_target():
    dictator = BooleanSpectrum(5, {(0, 1, 0, 0, 0): 1.0})
    oracle = SimulatedOracle(dictator, seed=12)
    points, values = classical_examples_boolean(oracle, 500)
    assert points.shape == (500, 5)
    np.testing.assert_array_equal(values, points[:, 1])
    x, value = classical_example_boolean(oracle)
    assert value == x[1]
    classical_examples_boolean(oracle, 20, measured_quantum=True)
    assert oracle.budget_used == {"classical_example": 501, "quantum_example_measured": 20}


def test_amplitude_samples_of_dictators():
    oracle = SimulatedOracle(product_of_dictators(3, 2, 2), seed=13)
    samples = amplitude_samples(oracle, 100)
    assert len(samples) == 100
    np.testing.assert_allclose(np.abs(samples.values), 1.0)
    np.testing.assert_allclose(samples.values, samples.points[:, 0, 0] * samples.points[:, 1, 0])


def test_wrong_kind_is_reported_before_the_sample_cap():
    oracle = SimulatedOracle(identity_channel(1), seed=0, max_queries=5)
    with pytest.raises(NotUnitaryError):
        bell_sample_unitary(oracle, 10 ** 15)
    with pytest.raises(NotUnitaryError):
        hadamard_test(oracle, P("0"), "re", 10 ** 15)
    with pytest.raises(NotBooleanError):
        quantum_examples_boolean(oracle, 10 ** 15)
    with pytest.raises(NotAChannelError):
        sample_choi_diag_channel(SimulatedOracle(majority3(), seed=0), 10 ** 15)
    assert oracle.total_queries == 0
