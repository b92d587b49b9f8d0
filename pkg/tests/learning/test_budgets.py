import math

import pytest

from lowdegree.core.exceptions import CapExceededError, InvalidInputError
from lowdegree.learning import budgets
from lowdegree.learning.params import LearnParams


def test_params_validation():
    with pytest.raises(InvalidInputError):
        LearnParams(d=0, epsilon=0.1, delta=0.1)
    with pytest.raises(InvalidInputError):
        LearnParams(d=1, epsilon=1.0, delta=0.1)
    with pytest.raises(InvalidInputError):
        LearnParams(d=1, epsilon=0.1, delta=0.0)
    with pytest.raises(InvalidInputError):
        LearnParams(d=1, epsilon=0.1, delta=0.1, c_override=0.0)
    with pytest.raises(InvalidInputError):
        LearnParams(d=1, epsilon=0.1, delta=0.1, shot_multiplier=-1)


def test_scaled_applies_multiplier_and_floor():
    params = LearnParams(d=1, epsilon=0.1, delta=0.1, shot_multiplier=2.0)
    assert params.scaled(10.2) == 21
    assert params.scaled(10.2, floor=100) == 100
    assert LearnParams(d=1, epsilon=0.1, delta=0.1, shot_multiplier=0.0).scaled(1e6) == 1


def test_channel_threshold_rules():
    params = LearnParams(d=2, epsilon=0.15, delta=0.1)
    proof = budgets.channel_threshold(params, "proof", bh_constant=2.0)
    box = budgets.channel_threshold(params, "box", bh_constant=2.0)
    assert proof == pytest.approx(0.15 ** 6 * 2.0 ** -6)
    assert box == pytest.approx(0.15 ** 10 * 2.0 ** -16)
    assert box < proof
    with pytest.raises(InvalidInputError, match="Unknown threshold rule"):
        budgets.channel_threshold(params, "guess")


def test_override_wins():
    params = LearnParams(d=2, epsilon=0.15, delta=0.1, c_override=0.05)
    assert budgets.channel_threshold(params, "box") == 0.05
    assert budgets.unitary_threshold(params) == 0.05
    assert budgets.bounded_poly_threshold(params) == 0.05
    assert budgets.tensor_threshold(params) == 0.05


def test_unitary_threshold_drops_trailing_factor():
    params = LearnParams(d=2, epsilon=0.15, delta=0.1)
    assert budgets.unitary_threshold(params, bh_constant=2.0) == pytest.approx(0.15 ** 3 * 2.0 ** -6)


def test_channel_phase_one_count():
    params = LearnParams(d=2, epsilon=0.15, delta=0.1)
    c = budgets.channel_threshold(params, "proof", bh_constant=2.0)
    counts = budgets.channel_counts(params, c)
    assert 1400 < params.scaled(counts.phase1) < 1500
    assert counts.phase2_total > counts.phase1


def test_pauli_probe_count_matches_formula():
    params = LearnParams(d=2, epsilon=0.2, delta=0.1)
    expected = 9 ** 2 * 3 ** 4 / 0.04 * math.log(30)
    assert budgets.pauli_channel_probe_count(params, 3) == pytest.approx(expected)
    assert budgets.entangled_shot_count(params, 3) < budgets.pauli_channel_probe_count(params, 3)


def test_quantum_boolean_counts_do_not_depend_on_n():
    params = LearnParams(d=3, epsilon=0.1, delta=0.1)
    small, large = budgets.boolean_sample_counts(params, 8), budgets.boolean_sample_counts(params, 32)
    assert small.fourier == large.fourier
    assert small.quantum_estimation == large.quantum_estimation
    assert small.classical < large.classical


def test_bounded_poly_threshold_is_small():
    params = LearnParams(d=2, epsilon=0.2, delta=0.1)
    a = budgets.bounded_poly_threshold(params, bh_constant=2.0)
    assert a == pytest.approx(0.2 ** 3 * 2.0 ** -(2 ** 1.5 * math.sqrt(math.log(2))))
    assert budgets.bounded_poly_threshold(LearnParams(d=1, epsilon=0.2, delta=0.1)) == pytest.approx(0.04)


def test_tensor_threshold_default():
    assert budgets.tensor_threshold(LearnParams(d=2, epsilon=0.1, delta=0.1)) == pytest.approx(0.1 ** 1.5 / 2)


def test_enumeration_cap():
    assert budgets.check_enumeration(3, 2) == 37
    with pytest.raises(CapExceededError):
        budgets.check_enumeration(60, 3)
