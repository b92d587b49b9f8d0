"""
Seeded random instance families with exact degree control.

Every family returns an Instance whose degree has been checked against the declared bound
before anything else sees it.
"""
import logging
import os
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, Union

import yaml

from ..bh.address import address_function
from ..core.exceptions import ConfigError, DegreeExceededError
from ..core.families import (boolean_junta, bounded_poly, junta_conjugated_channel, junta_unitary,
                             pauli_mixture_channel, phase_evolution_unitary)
from ..core.spectra import BooleanSpectrum, OperatorSpectrum, SuperopSpectrum
from ..core.spectrum_io import load_spectrum, save_spectrum
from ..qqa.algorithm import QueryAlgorithm, random_algorithm
from ..qqa.io import load_algorithm, save_algorithm

logger = logging.getLogger(__name__)

Target = Union[SuperopSpectrum, OperatorSpectrum, BooleanSpectrum, QueryAlgorithm]


@dataclass
class Instance:
    target: Target
    provenance: Dict[str, Any] = field(default_factory=dict)

    @property
    def degree(self) -> int:
        return self.provenance["verified_degree"]


def _require_seed(params: Dict[str, Any]) -> None:
    if params.get("seed") is None:
        raise ConfigError("Instance generation needs a seed")


def _verify(target: Target, declared: int) -> int:
    degree = target.d if isinstance(target, QueryAlgorithm) else target.degree
    if degree > declared:
        raise DegreeExceededError(f"Generated instance has degree {degree} above the declared {declared}")
    return degree


def _param(params: Dict[str, Any], name: str) -> Any:
    if name not in params:
        raise ConfigError(f"Instance family {params.get('family')!r} needs parameter {name!r}")
    return params[name]


_FAMILIES: Dict[str, Callable[[Dict[str, Any]], Any]] = {
    "pauli-mixture-channel": lambda p: (pauli_mixture_channel(_param(p, "n"), _param(p, "d"),
                                                              p.get("sparsity", 4), p["seed"]), p["d"]),
    "junta-conjugated-channel": lambda p: (junta_conjugated_channel(_param(p, "n"), _param(p, "d"), p["seed"]),
                                           p["d"]),
    "junta-unitary": lambda p: (junta_unitary(_param(p, "n"), _param(p, "k"), p["seed"]), p["k"]),
    "phase-evolution-unitary": lambda p: (phase_evolution_unitary(_param(p, "n"), _param(p, "d"), p["seed"],
                                                                  p.get("terms", 3)), p["d"]),
    "boolean-junta": lambda p: (boolean_junta(_param(p, "n"), _param(p, "k"), p["seed"]), p["k"]),
    "address": lambda p: (address_function(_param(p, "d")), p["d"]),
    "bounded-poly": lambda p: (bounded_poly(_param(p, "n"), _param(p, "d"), p["seed"], p.get("sparsity", 6),
                                            p.get("peak", 1.0)), p["d"]),
    "random-qqa": lambda p: (random_algorithm(_param(p, "n"), _param(p, "m"), _param(p, "d"), p["seed"]),
                             p["d"]),
}

FAMILIES = tuple(_FAMILIES)


def generate(params: Dict[str, Any]) -> Instance:
    """Build the instance described by {family, family parameters, seed}."""
    family = params.get("family")
    if family not in _FAMILIES:
        raise ConfigError(f"Unknown instance family {family!r}; expected one of {FAMILIES}")
    _require_seed(params)
    target, declared = _FAMILIES[family](params)
    degree = _verify(target, int(declared))
    provenance = {"family": family, "params": dict(params), "seed": int(params["seed"]),
                  "verified_degree": int(degree)}
    logger.debug(f"Generated {family} instance with degree {degree}")
    return Instance(target=target, provenance=provenance)


def provenance_path(path: str) -> str:
    root, _ = os.path.splitext(path)
    return root + ".provenance.yaml"


def save_instance(instance: Instance, path: str) -> None:
    """Write the object in its file format and the provenance sidecar next to it."""
    if isinstance(instance.target, QueryAlgorithm):
        save_algorithm(instance.target, path)
    else:
        save_spectrum(instance.target, path)
    with open(provenance_path(path), "w") as f:
        yaml.safe_dump(instance.provenance, f, sort_keys=False)


def load_instance(path: str) -> Instance:
    with open(path, "r") as f:
        document = yaml.safe_load(f)
    target = load_algorithm(path) if isinstance(document, dict) and "unitaries" in document else load_spectrum(path)
    provenance = {}
    if os.path.exists(provenance_path(path)):
        with open(provenance_path(path), "r") as f:
            provenance = yaml.safe_load(f) or {}
    if "verified_degree" not in provenance:
        provenance["verified_degree"] = target.d if isinstance(target, QueryAlgorithm) else target.degree
    return Instance(target=target, provenance=provenance)
