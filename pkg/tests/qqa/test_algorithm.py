import numpy as np
import pytest

from lowdegree.bh.cb import bh_cb_check
from lowdegree.core.exceptions import CapExceededError, InvalidInputError, NotUnitaryError
from lowdegree.qqa.algorithm import (QueryAlgorithm, averaging_algorithm, product_of_dictators, qqa_evaluate,
                                     qqa_extract_tensor, qqa_sample_stream, random_algorithm)


def _random_points(rng, count, d, n):
    return rng.choice((-1, 1), size=(count, d, n))


def test_product_of_dictators():
    algorithm = product_of_dictators(3, 2, 2, index=1)
    x = np.array([[1, -1, 1], [-1, -1, 1]])
    assert qqa_evaluate(algorithm, x) == pytest.approx(1.0)
    x[0, 1] = 1
    assert qqa_evaluate(algorithm, x) == pytest.approx(-1.0)
    tensor = qqa_extract_tensor(algorithm, method="both").tensor
    assert tensor.as_dict(1e-12) == {(1, 1): pytest.approx(1.0)}


def test_averaging_algorithm():
    algorithm = averaging_algorithm(4)
    x = np.array([[1, 1, -1, 1]])
    assert qqa_evaluate(algorithm, x) == pytest.approx(0.5)
    tensor = qqa_extract_tensor(algorithm).tensor
    assert np.allclose(tensor.coefficients, 0.25)


def test_evaluation_matches_tensor_synthesis():
    algorithm = random_algorithm(3, 2, 2, seed=4)
    tensor = qqa_extract_tensor(algorithm).tensor
    points = _random_points(np.random.default_rng(0), 50, 2, 3)
    assert np.allclose(algorithm.evaluate_batch(points), tensor.evaluate(points), atol=1e-9)
    assert all(abs(qqa_evaluate(algorithm, x)) <= 1 + 1e-10 for x in points)


@pytest.mark.parametrize("seed", range(8))
def test_extraction_routes_agree_and_respect_cb_bound(seed):
    rng = np.random.default_rng(seed)
    n, m, d = int(rng.integers(1, 4)), int(rng.integers(1, 3)), int(rng.integers(1, 3))
    tensor = qqa_extract_tensor(random_algorithm(n, m, d, seed), method="both").tensor
    assert tensor.bh_norm() <= 1 + 1e-8
    assert bh_cb_check(tensor).holds


def test_block_multilinearity():
    algorithm = random_algorithm(3, 1, 2, seed=12)
    tensor = qqa_extract_tensor(algorithm).tensor
    x = np.array([[1, -1, 1], [1, 1, -1]])
    base = qqa_evaluate(algorithm, x)
    flipped = x.copy()
    flipped[0, 2] = -flipped[0, 2]
    # Flipping x_1(3) changes T by -2 x_1(3) times the slice at i_1 = 3
    slice_value = np.dot(tensor.coefficients[2], x[1])
    assert qqa_evaluate(algorithm, flipped) - base == pytest.approx(-2 * x[0, 2] * slice_value)


def test_sample_stream():
    empty = qqa_sample_stream(random_algorithm(2, 1, 1, seed=0), 0, seed=1)
    assert len(empty) == 0
    samples = qqa_sample_stream(product_of_dictators(3, 1, 2), 100, seed=2)
    assert len(samples) == 100
    assert np.allclose(np.abs(samples.values), 1.0)
    again = qqa_sample_stream(product_of_dictators(3, 1, 2), 100, seed=2)
    assert np.array_equal(samples.points, again.points)
    with pytest.raises(InvalidInputError):
        qqa_sample_stream(product_of_dictators(3, 1, 2), -1, seed=2)


def test_validation():
    with pytest.raises(NotUnitaryError):
        QueryAlgorithm(2, 1, [np.eye(2), 2 * np.eye(2)], np.array([1, 0]), np.array([1, 0]))
    with pytest.raises(InvalidInputError):
        QueryAlgorithm(2, 1, [np.eye(2)], np.array([1, 0]), np.array([1, 0]))
    with pytest.raises(InvalidInputError):
        QueryAlgorithm(2, 1, [np.eye(2), np.eye(2)], np.array([1, 1]), np.array([1, 0]))
    algorithm = product_of_dictators(2, 1, 1)
    with pytest.raises(InvalidInputError):
        qqa_evaluate(algorithm, np.array([[1, 0]]))
    with pytest.raises(InvalidInputError):
        qqa_extract_tensor(algorithm, method="guess")


def test_enumeration_cap():
    with pytest.raises(CapExceededError):
        qqa_extract_tensor(product_of_dictators(10, 1, 2), method="enumeration")
