import os

import numpy as np
import pytest

from lowdegree.core.exceptions import ConfigError, InvalidInputError
from lowdegree.core.spectra import BooleanSpectrum, OperatorSpectrum, SuperopSpectrum
from lowdegree.core.transforms import synth_operator
from lowdegree.harness.instances import FAMILIES, generate, load_instance, provenance_path, save_instance
from lowdegree.qqa.algorithm import QueryAlgorithm

PARAMS = {
    "pauli-mixture-channel": {"n": 3, "d": 2, "sparsity": 4},
    "junta-conjugated-channel": {"n": 3, "d": 4},
    "junta-unitary": {"n": 4, "k": 2},
    "phase-evolution-unitary": {"n": 4, "d": 2},
    "boolean-junta": {"n": 8, "k": 3},
    "address": {"d": 3},
    "bounded-poly": {"n": 6, "d": 2},
    "random-qqa": {"n": 2, "m": 2, "d": 2},
}


@pytest.mark.parametrize("family", FAMILIES)
def test_every_family_respects_its_degree(family):
    params = dict(PARAMS[family], family=family, seed=5)
    instance = generate(params)
    declared = params.get("d", params.get("k"))
    assert instance.degree <= declared
    assert instance.provenance["family"] == family
    assert instance.provenance["seed"] == 5


def test_generation_is_seeded():
    params = {"family": "junta-unitary", "n": 4, "k": 2, "seed": 9}
    first, second = generate(params).target, generate(dict(params)).target
    assert dict(first.items()) == dict(second.items())
    assert dict(generate(dict(params, seed=10)).target.items()) != dict(first.items())


def test_families_build_valid_objects():
    channel = generate({"family": "pauli-mixture-channel", "n": 3, "d": 2, "seed": 1}).target
    assert isinstance(channel, SuperopSpectrum) and channel.is_channel
    assert sum(channel.diagonal().values()) == pytest.approx(1.0)
    unitary = generate({"family": "phase-evolution-unitary", "n": 3, "d": 2, "seed": 1}).target
    matrix = synth_operator(unitary)
    assert np.allclose(matrix.conj().T @ matrix, np.eye(8), atol=1e-9)
    boolean = generate({"family": "boolean-junta", "n": 6, "k": 2, "seed": 1}).target
    assert isinstance(boolean, BooleanSpectrum)
    assert np.allclose(np.abs(boolean.truth_table()), 1.0)
    poly = generate({"family": "bounded-poly", "n": 5, "d": 2, "seed": 1}).target
    assert np.max(np.abs(poly.truth_table())) == pytest.approx(1.0)
    assert poly.degree == 2


def test_generation_errors():
    with pytest.raises(ConfigError, match="Unknown instance family"):
        generate({"family": "forrelation", "seed": 1})
    with pytest.raises(ConfigError, match="seed"):
        generate({"family": "address", "d": 2})
    with pytest.raises(ConfigError, match="'k'"):
        generate({"family": "junta-unitary", "n": 3, "seed": 1})
    with pytest.raises(InvalidInputError):
        generate({"family": "junta-conjugated-channel", "n": 3, "d": 1, "seed": 1})
    with pytest.raises(InvalidInputError):
        generate({"family": "junta-unitary", "n": 3, "k": 4, "seed": 1})


@pytest.mark.parametrize("family", ["junta-unitary", "random-qqa", "address"])
def test_save_and_load(tmp_path, family):
    instance = generate(dict(PARAMS[family], family=family, seed=2))
    path = str(tmp_path / f"{family}.yaml")
    save_instance(instance, path)
    loaded = load_instance(path)
    assert loaded.provenance == instance.provenance
    assert type(loaded.target) is type(instance.target)
    if isinstance(instance.target, QueryAlgorithm):
        assert all(np.array_equal(a, b) for a, b in zip(loaded.target.unitaries, instance.target.unitaries))
    else:
        assert dict(loaded.target.items()) == pytest.approx(dict(instance.target.items()))


def test_load_without_sidecar(tmp_path):
    instance = generate({"family": "address", "d": 2, "seed": 0})
    path = str(tmp_path / "address.yaml")
    save_instance(instance, path)
    os.remove(provenance_path(path))
    assert load_instance(path).degree == 2
