"""
Witness and cross-check battery behind the `verify` verb.

Every case yields one VerifyOutcome; the battery passes only when all of them do.
"""
import csv
import itertools
import logging
from dataclasses import dataclass
from typing import Any, Dict, List, Tuple

import numpy as np
from scipy.stats import unitary_group

from ..bh.address import address_function
from ..bh.cb import bh_cb_check
from ..bh.f_phi import f_phi_compare
from ..bh.inequalities import bh_check_boolean
from ..core.families import junta_conjugated_channel, pauli_mixture_channel
from ..core.pauli import PauliString, low_weight_strings
from ..core.spectra import tv_distance
from ..core.transforms import spectrum_of_operator
from ..qqa.algorithm import product_of_dictators, qqa_extract_tensor
from ..simulation.circuits import circuit_cross_check
from .reporting import CSV_DELIMITER, CSV_DIALECT, CSV_NEWLINE

logger = logging.getLogger(__name__)

WITNESS_TOL = 1e-9
F_PHI_TOL = 1e-10
F_PHI_SUP_TOL = 1e-6
CIRCUIT_TOL = 1e-9

VERIFY_COLUMNS = ("check", "case", "value", "limit", "passed")


@dataclass(frozen=True)
class VerifyOutcome:
    check: str
    case: str
    value: float
    limit: float

    @property
    def passed(self) -> bool:
        return bool(self.value <= self.limit)

    def as_csv_row(self) -> List[Any]:
        return [self.check, self.case, repr(self.value), repr(self.limit), self.passed]


def address_witnesses(degrees=(2, 3, 4)) -> List[VerifyOutcome]:
    """Address functions sit exactly on the Boolean bound."""
    outcomes = []
    for d in degrees:
        report = bh_check_boolean(address_function(d), d)
        outcomes.append(VerifyOutcome("address", f"d={d}", abs(report.ratio - 1.0), WITNESS_TOL))
    return outcomes


def cb_witnesses(degrees=(1, 2, 3), n: int = 2) -> List[VerifyOutcome]:
    """T = x_1(1) ... x_d(1) from the dictator algorithm reaches ratio 1."""
    outcomes = []
    for d in degrees:
        tensor = qqa_extract_tensor(product_of_dictators(n, 1, d)).tensor
        report = bh_cb_check(tensor)
        outcomes.append(VerifyOutcome("cb_witness", f"d={d}", abs(report.lhs - 1.0), WITNESS_TOL))
    return outcomes


def f_phi_identities(seeds=range(5)) -> List[VerifyOutcome]:
    outcomes = []
    for n in (1, 2):
        for seed in seeds:
            for family, channel in (("pauli-mixture", pauli_mixture_channel(n, 2 * n, 3, seed)),
                                    ("junta-conjugated", junta_conjugated_channel(n, 2 * n, seed))):
                comparison = f_phi_compare(channel)
                case = f"{family} n={n} seed={seed}"
                outcomes.append(VerifyOutcome("f_phi_closed_form", case, comparison.max_coefficient_error,
                                              F_PHI_TOL))
                outcomes.append(VerifyOutcome("f_phi_bounded", case, comparison.max_abs_value, 1.0 + F_PHI_SUP_TOL))
    return outcomes


def circuit_battery(seed: int = 0, count: int = 6) -> List[Tuple[str, Dict[str, Any]]]:
    """Five seeded primitive cases per round on two qubits."""
    rng = np.random.default_rng(seed)
    strings = list(low_weight_strings(2, 2))
    # probe bases carry no identity sites
    bases = [PauliString(word) for word in itertools.product((1, 2, 3), repeat=2)]
    cases = []
    for k in range(count):
        unitary = spectrum_of_operator(unitary_group.rvs(4, random_state=rng))
        channel = junta_conjugated_channel(2, 4, int(rng.integers(2 ** 31)))
        mixture = pauli_mixture_channel(2, 4, 5, int(rng.integers(2 ** 31)))
        x, y = (strings[int(i)] for i in rng.integers(len(strings), size=2))
        s = bases[int(rng.integers(len(bases)))]
        cases.extend([
            ("hadamard", {"unitary": unitary, "x": x, "part": ("re", "im")[k % 2]}),
            ("bell", {"unitary": unitary}),
            ("choi_diag", {"channel": channel}),
            ("swap", {"channel": channel, "x": x, "y": y, "test": ("diag", "re", "im")[k % 3]}),
            ("pauli_probe", {"channel": mixture, "s": s}),
        ])
    return cases


def circuit_cross_checks(seed: int = 0) -> List[VerifyOutcome]:
    outcomes = []
    for index, (tag, params) in enumerate(circuit_battery(seed)):
        expected, simulated = circuit_cross_check(tag, params)
        outcomes.append(VerifyOutcome("circuit", f"{tag} #{index}", tv_distance(expected, simulated), CIRCUIT_TOL))
    return outcomes


def run_battery(seed: int = 0) -> List[VerifyOutcome]:
    outcomes = address_witnesses() + cb_witnesses() + f_phi_identities() + circuit_cross_checks(seed)
    failed = [o for o in outcomes if not o.passed]
    for outcome in failed:
        logger.error(f"{outcome.check} {outcome.case}: {outcome.value:.3e} above {outcome.limit:.3e}")
    logger.info(f"Verify battery: {len(outcomes) - len(failed)}/{len(outcomes)} checks passed")
    return outcomes


def write_battery_csv(outcomes: List[VerifyOutcome], path: str) -> None:
    with open(path, 'w', newline=CSV_NEWLINE) as f:
        writer = csv.writer(f, dialect=CSV_DIALECT, delimiter=CSV_DELIMITER)
        writer.writerow(VERIFY_COLUMNS)
        for outcome in outcomes:
            writer.writerow(outcome.as_csv_row())
