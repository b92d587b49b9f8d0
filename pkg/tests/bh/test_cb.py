import numpy as np
import pytest

from lowdegree.bh.cb import (bh_cb_check, blei_mixed_norm, contraction_dimension, slot_norms,
                             varopoulos_contractions)
from lowdegree.bh.tensor import MultilinearTensor
from lowdegree.core.exceptions import InvalidInputError


def test_single_entry_witness_is_saturated():
    for d in (1, 2, 3):
        report = bh_cb_check(MultilinearTensor.single(d, 2))
        assert report.lhs == report.rhs == 1.0
        assert report.ratio == 1.0


def test_blei_examples():
    single = MultilinearTensor.single(2, 3)
    assert blei_mixed_norm(single) == pytest.approx(1.0)
    diagonal = MultilinearTensor(np.eye(2))
    assert blei_mixed_norm(diagonal) == pytest.approx(2.0)
    assert diagonal.bh_norm() == pytest.approx(2 ** 0.75)
    assert blei_mixed_norm(MultilinearTensor(np.zeros((2, 2)))) == 0.0


def test_slot_norms():
    tensor = MultilinearTensor(np.array([[3.0, 4.0], [0.0, 0.0]]))
    assert np.allclose(slot_norms(tensor, 1), [5.0, 0.0])
    assert np.allclose(slot_norms(tensor, 2), [3.0, 4.0])
    with pytest.raises(InvalidInputError):
        slot_norms(tensor, 3)


def test_contractions_on_identity_matrix():
    contractions = varopoulos_contractions(MultilinearTensor(np.eye(2)), 1)
    assert contractions.matrices.shape == (2, 4, 4)
    assert contractions.bound == pytest.approx(2.0)
    assert contractions.evaluated >= 2.0 - 1e-9
    assert contractions.max_matrix_norm <= 1 + 1e-9


def test_zero_slice_gives_zero_twist():
    tensor = MultilinearTensor(np.array([[1.0, 0.0], [0.0, 0.0]]))
    contractions = varopoulos_contractions(tensor, 1)
    assert contractions.bound == pytest.approx(1.0)
    assert contractions.evaluated >= 1.0 - 1e-9


@pytest.mark.parametrize("d,n", [(2, 3), (3, 3), (3, 2)])
def test_random_tensor_certificates(d, n):
    rng = np.random.default_rng(d * 10 + n)
    for field in ("real", "complex"):
        coefficients = rng.standard_normal((n,) * d)
        if field == "complex":
            coefficients = coefficients + 1j * rng.standard_normal((n,) * d)
        tensor = MultilinearTensor(coefficients)
        for slot in range(1, d + 1):
            contractions = varopoulos_contractions(tensor, slot)
            assert contractions.matrices.shape[1] == contraction_dimension(n, d, slot)
            assert contractions.max_matrix_norm <= 1 + 1e-9
            assert contractions.evaluated >= contractions.bound - 1e-9
        report = bh_cb_check(tensor)
        assert report.holds
        assert report.field == field
        assert report.lhs <= report.witness["blei"] + 1e-9
