import itertools

import numpy as np
import pytest
from scipy.stats import unitary_group

from lowdegree.core.channels import (amplitude_damping_channel, amplitude_damping_kraus, depolarizing_channel,
                                     identity_channel, pauli_channel)
from lowdegree.core.dense import DenseOperator, DenseState
from lowdegree.core.exceptions import CapExceededError, InvalidInputError, NotAChannelError, NotUnitaryError
from lowdegree.core.pauli import PauliString
from lowdegree.core.spectra import BooleanSpectrum, OperatorSpectrum, pnorm
from lowdegree.core.transforms import (apply_choi, bell_amplitudes, boolean_spectrum, choi_state_of_unitary,
                                       cube_points, kraus_to_choi, lift_operator_spectrum, spectrum_of_operator,
                                       spectrum_of_superop, superop_from_map, superop_to_choi, synth_boolean,
                                       synth_operator)

P = PauliString.from_str
H = np.array([[1, 1], [1, -1]]) / np.sqrt(2)


def majority3_table():
    return np.array([np.sign(x.sum()) for x in cube_points(3)], dtype=float)


def test_operator_spectrum_examples():
    assert dict(spectrum_of_operator(np.eye(4)).items()) == {P("00"): 1}
    assert dict(spectrum_of_operator(np.diag([1, -1])).items()) == {P("3"): 1}
    spectrum = spectrum_of_operator(H)
    assert set(spectrum.keys()) == {P("1"), P("3")}
    assert spectrum[P("1")] == pytest.approx(1 / np.sqrt(2))
    assert spectrum[P("3")] == pytest.approx(1 / np.sqrt(2))


def test_operator_spectrum_rejects_bad_dimension():
    with pytest.raises(InvalidInputError, match="not a power of 2"):
        spectrum_of_operator(np.eye(3))


def test_round_trip_and_parseval_on_random_operators():
    rng = np.random.default_rng(7)
    for n in (1, 2, 3):
        matrix = rng.normal(size=(2 ** n, 2 ** n)) + 1j * rng.normal(size=(2 ** n, 2 ** n))
        spectrum = spectrum_of_operator(matrix)
        np.testing.assert_allclose(synth_operator(spectrum), matrix, atol=1e-10)
        normalized = np.trace(matrix.conj().T @ matrix).real / 2 ** n
        assert normalized == pytest.approx(pnorm(spectrum, 2) ** 2, abs=1e-9)


def test_round_trip_on_sparse_spectra():
    spectrum = OperatorSpectrum(3, {P("013"): 0.25 - 0.5j, P("200"): 1.5, P("333"): -0.125j})
    back = spectrum_of_operator(synth_operator(spectrum))
    assert list(back.keys()) == list(spectrum.keys())
    for key in spectrum:
        assert abs(back[key] - spectrum[key]) < 1e-10


def test_unitary_spectra_are_distributions():
    for n in (1, 2, 3, 4):
        unitary = unitary_group.rvs(2 ** n, random_state=n)
        spectrum = spectrum_of_operator(unitary)
        assert pnorm(spectrum, 2) ** 2 == pytest.approx(1.0, abs=1e-9)


def test_superop_examples():
    assert dict(identity_channel(1).items()) == {(P("0"), P("0")): 1}
    depolarizing = depolarizing_channel(0.3)
    expected = {"0": 0.7, "1": 0.1, "2": 0.1, "3": 0.1}
    assert depolarizing.is_pauli_diagonal()
    for x, rate in expected.items():
        assert depolarizing[(P(x), P(x))] == pytest.approx(rate)
    damping = amplitude_damping_channel(0.5)
    assert damping[(P("0"), P("3"))] == pytest.approx(0.5 / 4)
    assert damping.degree == 2


def test_superop_from_choi_matches_kraus_route():
    kraus = amplitude_damping_kraus(0.5)
    from_choi = spectrum_of_superop(choi=kraus_to_choi(kraus))
    from_kraus = spectrum_of_superop(kraus=kraus)
    for key in set(from_choi.keys()) | set(from_kraus.keys()):
        assert abs(from_choi[key] - from_kraus[key]) < 1e-12
    np.testing.assert_allclose(superop_to_choi(from_kraus), kraus_to_choi(kraus), atol=1e-12)


def test_channel_spectra_are_states():
    rng = np.random.default_rng(11)
    for n in (1, 2, 3):
        # random channel from a Haar isometry with a two-dimensional environment
        isometry = unitary_group.rvs(2 ** (n + 1), random_state=rng)[:, :2 ** n]
        kraus = [isometry[k * 2 ** n:(k + 1) * 2 ** n, :] for k in range(2)]
        spectrum = spectrum_of_superop(kraus=kraus)
        matrix = spectrum.matrix()
        assert np.linalg.eigvalsh(matrix).min() >= -1e-9
        assert np.trace(matrix).real == pytest.approx(1.0, abs=1e-9)
        for (x, y), value in spectrum.items():
            assert abs(value) <= np.sqrt(spectrum[(x, x)].real * spectrum[(y, y)].real) + 1e-9


def test_non_cptp_input_is_rejected():
    with pytest.raises(NotAChannelError):
        spectrum_of_superop(kraus=[2 * np.eye(2)])
    with pytest.raises(NotAChannelError):
        spectrum_of_superop(choi=2 * kraus_to_choi([np.eye(2)]))
    with pytest.raises(InvalidInputError, match="sum to"):
        pauli_channel({"0": 0.5, "1": 0.6})


def test_superop_apply_matches_choi():
    damping = amplitude_damping_channel(0.3)
    rho = np.array([[0.25, 0.1 + 0.2j], [0.1 - 0.2j, 0.75]])
    direct = sum(k @ rho @ k.conj().T for k in amplitude_damping_kraus(0.3))
    np.testing.assert_allclose(damping.apply(rho), direct, atol=1e-12)
    np.testing.assert_allclose(apply_choi(damping.to_choi(), rho), direct, atol=1e-12)


def test_superop_from_map_right_multiplication():
    sigma1 = np.array([[0, 1], [1, 0]], dtype=complex)
    spectrum = superop_from_map(lambda m: m @ sigma1, 1)
    assert dict(spectrum.items()) == pytest.approx({(P("0"), P("1")): 1})


def test_choi_state_examples():
    epr = choi_state_of_unitary(np.eye(2))
    np.testing.assert_allclose(epr.vector, np.array([1, 0, 0, 1]) / np.sqrt(2))
    sigma1 = bell_amplitudes(choi_state_of_unitary(np.array([[0, 1], [1, 0]])))
    assert dict(sigma1.items()) == pytest.approx({P("1"): 1})
    theta = np.pi / 6
    rotation = np.diag([np.exp(1j * theta), np.exp(-1j * theta)])
    amplitudes = bell_amplitudes(choi_state_of_unitary(rotation))
    assert amplitudes[P("0")] == pytest.approx(np.cos(theta))
    assert amplitudes[P("3")] == pytest.approx(1j * np.sin(theta))


def test_choi_state_rejects_non_unitary():
    with pytest.raises(NotUnitaryError):
        choi_state_of_unitary(np.diag([1.0, 0.5]))


def test_boolean_spectrum_examples():
    points = cube_points(4)
    parity = boolean_spectrum(np.prod(points, axis=1))
    assert dict(parity.items()) == {(1, 1, 1, 1): 1.0}
    dictator = boolean_spectrum(points[:, 0])
    assert dict(dictator.items()) == {(1, 0, 0, 0): 1.0}
    majority = boolean_spectrum(majority3_table())
    assert dict(majority.items()) == pytest.approx(
        {(0, 0, 1): 0.5, (0, 1, 0): 0.5, (1, 0, 0): 0.5, (1, 1, 1): -0.5})
    assert majority.degree == 3
    np.testing.assert_allclose(synth_boolean(majority), majority3_table())


def test_boolean_spectrum_matches_brute_force():
    rng = np.random.default_rng(3)
    table = rng.normal(size=16)
    spectrum = boolean_spectrum(table)
    points = cube_points(4)
    for s in itertools.product((0, 1), repeat=4):
        chi = np.prod(np.where(np.array(s) == 1, points, 1), axis=1)
        assert spectrum[s] == pytest.approx(np.mean(table * chi), abs=1e-12)
    np.testing.assert_allclose(spectrum.evaluate(points), table, atol=1e-12)


def test_boolean_spectrum_rejects_bad_length():
    with pytest.raises(InvalidInputError):
        boolean_spectrum([1.0, -1.0, 1.0])


def test_granularity_of_random_juntas():
    rng = np.random.default_rng(2024)
    for trial in range(1000):
        d = int(rng.integers(1, 5))
        table = rng.choice([-1.0, 1.0], size=2 ** d)
        spectrum = boolean_spectrum(table)
        assert spectrum.degree <= d
        assert spectrum.granular(d)
        assert spectrum.parseval() == pytest.approx(1.0, abs=1e-12)


def test_lifting_keeps_coefficients():
    junta = spectrum_of_operator(H)
    lifted = lift_operator_spectrum(junta, [2], 3)
    assert set(lifted.keys()) == {P("001"), P("003")}


def test_dense_operator_cap():
    with pytest.raises(CapExceededError):
        DenseOperator(np.eye(2 ** 7))
    with pytest.raises(InvalidInputError):
        DenseState(np.array([1.0, 1.0]))
