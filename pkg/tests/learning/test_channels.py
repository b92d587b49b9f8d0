import os
import tempfile

import numpy as np
import pytest
import yaml

from lowdegree.core.channels import depolarizing_channel, identity_channel
from lowdegree.core.exceptions import BudgetExceededError, InvalidInputError
from lowdegree.core.families import junta_conjugated_channel, pauli_mixture_channel
from lowdegree.core.pauli import PauliString
from lowdegree.learning.channels import learn_channel
from lowdegree.learning.params import LearnParams, LearnReport
from lowdegree.learning.scoring import heavy_set_sound, score_report
from lowdegree.simulation.mock import InstrumentedOracle
from lowdegree.simulation.oracle import SimulatedOracle

P = PauliString.from_str


def test_identity_channel():
    params = LearnParams(d=2, epsilon=0.1, delta=0.05)
    report = learn_channel(SimulatedOracle(identity_channel(1), seed=0), params)
    identity = P("0")
    assert report.heavy_set == [identity]
    assert abs(report.learned[(identity, identity)] - 1.0) <= 0.1
    assert score_report(report, identity_channel(1))["l2"] <= 0.1


def test_depolarizing_channel_over_seeds():
    truth = depolarizing_channel(0.3)
    params = LearnParams(d=2, epsilon=0.15, delta=0.1)
    good = sum(score_report(learn_channel(SimulatedOracle(truth, seed=seed), params), truth)["l2"] <= 0.15
               for seed in range(100))
    assert good >= 95


def test_random_pauli_mixture():
    params = LearnParams(d=2, epsilon=0.15, delta=0.1)
    good = 0
    for seed in range(20):
        truth = pauli_mixture_channel(3, 2, 5, seed)
        good += score_report(learn_channel(SimulatedOracle(truth, seed=seed), params), truth)["success"]
    assert good >= 18


def test_report_accounts_for_both_phases():
    params = LearnParams(d=2, epsilon=0.15, delta=0.1)
    report = learn_channel(SimulatedOracle(depolarizing_channel(0.3), seed=4), params)
    pairs = len(report.heavy_set) ** 2
    assert report.queries["choi_diag"] == report.budget["phase1_shots"]
    assert report.queries["channel_swap"] == pairs * report.budget["pair_shots"]
    assert report.threshold == pytest.approx(0.15 ** 6 * 2.0 ** -6)


def test_threshold_override_and_zero_outside_heavy_set():
    truth = depolarizing_channel(0.3)
    params = LearnParams(d=2, epsilon=0.15, delta=0.1, c_override=0.5)
    report = learn_channel(SimulatedOracle(truth, seed=2), params)
    assert report.heavy_set == [P("0")]
    assert set(report.learned.keys()) <= {(P("0"), P("0"))}
    assert report.budget["threshold_binding"]


def test_frozen_scales_leave_the_threshold_non_binding():
    params = LearnParams(d=2, epsilon=0.15, delta=0.1)
    report = learn_channel(SimulatedOracle(depolarizing_channel(0.3), seed=2), params)
    assert report.threshold * report.budget["phase1_shots"] < 1.0
    assert report.budget["threshold_binding"] is False
    assert set(report.heavy_set) == set(report.diagnostics["phase1_frequencies"])
    assert report.to_document()["budget"]["threshold_binding"] is False


def test_budget_exhaustion():
    with pytest.raises(BudgetExceededError):
        learn_channel(SimulatedOracle(identity_channel(1), seed=0, max_queries=10),
                      LearnParams(d=2, epsilon=0.15, delta=0.1))


def test_box_rule_is_accepted():
    report = learn_channel(SimulatedOracle(identity_channel(1), seed=0),
                           LearnParams(d=1, epsilon=0.5, delta=0.1), rule="box")
    assert report.threshold == pytest.approx(0.5 ** 6 * 2.0 ** -4)
    with pytest.raises(InvalidInputError):
        learn_channel(SimulatedOracle(identity_channel(1), seed=0), LearnParams(d=1, epsilon=0.5, delta=0.1),
                      rule="other")


def test_heavy_set_soundness_check():
    truth = depolarizing_channel(0.3)
    params = LearnParams(d=2, epsilon=0.15, delta=0.1)
    exact = dict(truth.diagonal())
    report = LearnReport("learn_channel", params, truth, threshold=0.06, heavy_set=[P("0")],
                         diagnostics={"phase1_frequencies": exact})
    assert heavy_set_sound(report, truth) is True
    report.threshold = 0.03
    assert heavy_set_sound(report, truth) is False
    report.diagnostics["phase1_frequencies"] = {P("0"): 1.0}
    assert heavy_set_sound(report, truth) is None


def test_heavy_set_sound_on_real_runs():
    truth = depolarizing_channel(0.3)
    params = LearnParams(d=2, epsilon=0.15, delta=0.1, c_override=0.05)
    for seed in range(10):
        assert heavy_set_sound(learn_channel(SimulatedOracle(truth, seed=seed), params), truth) is not False


@pytest.mark.parametrize("seed", range(5))
def test_off_diagonal_domination(seed):
    truth = junta_conjugated_channel(3, 4, seed)
    diagonal = truth.diagonal()
    for (x, y), value in truth.items():
        assert abs(value) <= np.sqrt(diagonal.get(x, 0.0) * diagonal.get(y, 0.0)) + 1e-9


class TestReproducibility:
    def test_same_seed_same_document(self):
        truth = pauli_mixture_channel(2, 2, 3, 7)
        params = LearnParams(d=2, epsilon=0.2, delta=0.1)
        first, second = InstrumentedOracle(truth, seed=13), InstrumentedOracle(truth, seed=13)
        a, b = learn_channel(first, params), learn_channel(second, params)
        assert yaml.safe_dump(a.to_document()) == yaml.safe_dump(b.to_document())
        assert first.leaks == second.leaks == 0
        assert first.primitives_called() == ["channel_swap", "choi_diag"]

    def test_saved_report_round_trips(self):
        truth = depolarizing_channel(0.3)
        report = learn_channel(SimulatedOracle(truth, seed=1), LearnParams(d=2, epsilon=0.15, delta=0.1))
        score_report(report, truth)
        with tempfile.TemporaryDirectory() as folder:
            path = os.path.join(folder, "report.yaml")
            report.save(path)
            loaded = LearnReport.load(path)
        assert loaded.algorithm == "learn_channel"
        assert loaded.queries == report.queries
        assert loaded.achieved["l2"] == pytest.approx(report.achieved["l2"])
        for key, value in report.learned.items():
            assert loaded.learned[key] == pytest.approx(value)


@pytest.mark.slow
def test_channel_learner_contract():
    params = LearnParams(d=2, epsilon=0.15, delta=0.1)
    good = 0
    for seed in range(100):
        truth = pauli_mixture_channel(3, 2, 5, seed)
        good += score_report(learn_channel(SimulatedOracle(truth, seed=seed), params), truth)["l2"] <= 0.15
    assert good >= 85
