"""
Seeded property sweeps over random instances, one InequalityReport per instance.

Every sweep derives one integer seed per instance from its master seed, so rows can be rebuilt
individually and the thread count never changes the result.
"""
import csv
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field as dc_field
from typing import Callable, Dict, List, Optional, Sequence

import numpy as np

from ..config import config
from ..core.exceptions import InvalidInputError
from ..core.families import junta_conjugated_channel, junta_unitary, pauli_mixture_channel, phase_evolution_unitary
from ..core.transforms import lift_operator_spectrum, spectrum_of_operator
from ..qqa.algorithm import random_algorithm, qqa_extract_tensor
from .cb import bh_cb_check, blei_mixed_norm
from .inequalities import bh_check_channel, bh_check_operator, spectrum_field
from .norms import operator_norm
from .reports import InequalityReport
from .tensor import MultilinearTensor

logger = logging.getLogger(__name__)

CSV_COLUMNS = ("instance_id", "d", "n", "lhs", "rhs", "ratio", "field", "seed")
CSV_DELIMITER = ','
CSV_NEWLINE = ''
CSV_DIALECT = 'excel'

TENSOR_KINDS = ("gaussian", "sign")


@dataclass(frozen=True)
class SweepRow:
    instance_id: int
    d: int
    n: int
    lhs: float
    rhs: float
    ratio: float
    field: str
    seed: int
    holds: bool = True
    witness: Dict = dc_field(default_factory=dict, compare=False)

    @classmethod
    def from_report(cls, instance_id: int, seed: int, report: InequalityReport) -> "SweepRow":
        return cls(instance_id=instance_id, d=int(report.witness["d"]), n=int(report.witness["n"]),
                   lhs=report.lhs, rhs=report.rhs, ratio=report.ratio, field=report.field, seed=seed,
                   holds=report.holds, witness=dict(report.witness))

    def as_csv_row(self) -> List:
        return [self.instance_id, self.d, self.n, repr(self.lhs), repr(self.rhs), repr(self.ratio), self.field,
                self.seed]


@dataclass
class SweepResult:
    name: str
    seed: int
    rows: List[SweepRow]

    def __len__(self) -> int:
        return len(self.rows)

    @property
    def max_lhs(self) -> float:
        return max((row.lhs for row in self.rows), default=0.0)

    def max_ratio_per_d(self) -> Dict[int, float]:
        table: Dict[int, float] = {}
        for row in self.rows:
            table[row.d] = max(table.get(row.d, 0.0), row.ratio)
        return dict(sorted(table.items()))

    def fitted_constant(self) -> float:
        """Smallest C with ratio <= C^d on every row."""
        return max((row.ratio ** (1.0 / max(row.d, 1)) for row in self.rows if np.isfinite(row.ratio)),
                   default=0.0)

    @property
    def all_hold(self) -> bool:
        return all(row.holds for row in self.rows)

    def summary(self) -> Dict:
        return {
            "sweep": self.name,
            "seed": self.seed,
            "instances": len(self.rows),
            "all_hold": self.all_hold,
            "max_lhs": self.max_lhs,
            "fitted_constant": self.fitted_constant(),
            "max_ratio_per_d": self.max_ratio_per_d(),
        }


def instance_seeds(seed: int, count: int) -> List[int]:
    return [int(s) for s in np.random.SeedSequence(seed).generate_state(count, dtype=np.uint32)]


def _run(name: str, count: int, seed: int, job: Callable[[int, int], InequalityReport],
         threads: Optional[int]) -> SweepResult:
    if count < 0:
        raise InvalidInputError(f"Sweep size must be non-negative, got {count}")
    seeds = instance_seeds(seed, count)
    workers = max(1, int(threads or config.harness.threads))

    def one(instance_id: int) -> SweepRow:
        return SweepRow.from_report(instance_id, seeds[instance_id], job(instance_id, seeds[instance_id]))

    if workers == 1:
        rows = [one(i) for i in range(count)]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(one, range(count)))
    result = SweepResult(name=name, seed=seed, rows=rows)
    logger.info(f"Sweep {name}: {count} instances, max ratio {max((r.ratio for r in rows), default=0.0):.6g}, "
                f"C_fit {result.fitted_constant():.6g}")
    return result


# ----------------------------------------------------------------------------
# Superoperators and matrices
# ----------------------------------------------------------------------------
def channel_sweep(count: int = 500, n_max: int = 3, d_max: int = 4, seed: int = 0,
                  threads: Optional[int] = None) -> SweepResult:
    """Pauli mixtures and junta conjugations of degree at most d_max on up to n_max qubits."""
    def job(_, instance_seed: int) -> InequalityReport:
        rng = np.random.default_rng(instance_seed)
        d = int(rng.integers(1, d_max + 1))
        n = int(rng.integers(max(1, d // 2), n_max + 1))
        if d >= 2 and rng.random() < 0.5:
            spectrum = junta_conjugated_channel(n, d, instance_seed)
        else:
            spectrum = pauli_mixture_channel(n, d, int(rng.integers(2, 6)), instance_seed)
        return bh_check_channel(spectrum, d, seed=instance_seed)

    return _run("channel", count, seed, job, threads)


def random_hermitian_contraction(n: int, d: int, seed: int):
    """Gaussian hermitian matrix on d random qubits, scaled to operator norm 1."""
    rng = np.random.default_rng(seed)
    sites = sorted(int(s) for s in rng.choice(n, size=d, replace=False))
    block = rng.standard_normal((2 ** d, 2 ** d)) + 1j * rng.standard_normal((2 ** d, 2 ** d))
    hermitian = (block + block.conj().T) / 2
    hermitian /= np.linalg.norm(hermitian, 2)
    return lift_operator_spectrum(spectrum_of_operator(hermitian), sites, n)


def operator_sweep(count: int = 500, n: int = 3, d_max: int = 3, seed: int = 0,
                   threads: Optional[int] = None) -> SweepResult:
    def job(_, instance_seed: int) -> InequalityReport:
        d = int(np.random.default_rng(instance_seed).integers(1, min(d_max, n) + 1))
        return bh_check_operator(random_hermitian_contraction(n, d, instance_seed), d)

    return _run("operator", count, seed, job, threads)


def unitary_l1_sweep(count: int = 100, n: int = 4, d_max: int = 3, seed: int = 0,
                     threads: Optional[int] = None) -> SweepResult:
    """
    Records ||U^||_1 for random low-degree unitaries against ||U||_op = 1.

    Nothing is asserted: whether this stays bounded in n is open.
    """
    def job(_, instance_seed: int) -> InequalityReport:
        rng = np.random.default_rng(instance_seed)
        d = int(rng.integers(1, min(d_max, n) + 1))
        if rng.random() < 0.5:
            spectrum, family = junta_unitary(n, d, instance_seed), "junta-unitary"
        else:
            spectrum, family = phase_evolution_unitary(n, d, instance_seed), "phase-evolution-unitary"
        witness = {"d": d, "n": n, "family": family, "degree": spectrum.degree}
        return InequalityReport.build("unitary_l1", spectrum.pnorm(1.0), operator_norm(spectrum),
                                      field=spectrum_field(spectrum), witness=witness, tolerance=float("inf"))

    return _run("unitary_l1", count, seed, job, threads)


# ----------------------------------------------------------------------------
# Multilinear forms
# ----------------------------------------------------------------------------
def random_tensor(rng: np.random.Generator, kind: str, d: int, n: int) -> MultilinearTensor:
    if kind == "gaussian":
        return MultilinearTensor(rng.standard_normal((n,) * d))
    if kind == "sign":
        return MultilinearTensor(rng.choice((-1.0, 1.0), size=(n,) * d))
    raise InvalidInputError(f"Unknown tensor kind {kind!r}; expected one of {TENSOR_KINDS}")


def _tensor_shape(rng: np.random.Generator, arities: Sequence[int], n_max: int):
    return int(rng.choice(arities)), int(rng.integers(1, n_max + 1))


def blei_sweep(count: int = 100, kind: str = "gaussian", arities: Sequence[int] = (2, 3), n_max: int = 5,
               seed: int = 0, threads: Optional[int] = None) -> SweepResult:
    """Coefficient norm against the mixed norm; every row must hold."""
    def job(_, instance_seed: int) -> InequalityReport:
        rng = np.random.default_rng(instance_seed)
        d, n = _tensor_shape(rng, arities, n_max)
        tensor = random_tensor(rng, kind, d, n)
        return InequalityReport.build("blei", tensor.bh_norm(), blei_mixed_norm(tensor), field=tensor.field,
                                      witness={"d": d, "n": n, "kind": kind})

    return _run(f"blei_{kind}", count, seed, job, threads)


def varopoulos_sweep(count: int = 100, kind: str = "gaussian", arities: Sequence[int] = (2, 3), n_max: int = 3,
                     seed: int = 0, threads: Optional[int] = None) -> SweepResult:
    """Full cb check per tensor; a failed contraction certificate raises."""
    def job(_, instance_seed: int) -> InequalityReport:
        rng = np.random.default_rng(instance_seed)
        d, n = _tensor_shape(rng, arities, n_max)
        return bh_cb_check(random_tensor(rng, kind, d, n))

    return _run(f"varopoulos_{kind}", count, seed, job, threads)


def qqa_sweep(count: int = 50, n_max: int = 3, m_max: int = 2, d_max: int = 2, seed: int = 0,
              threads: Optional[int] = None) -> SweepResult:
    """Amplitude tensors of random query algorithms against the cb bound 1."""
    def job(_, instance_seed: int) -> InequalityReport:
        rng = np.random.default_rng(instance_seed)
        n, m, d = (int(rng.integers(1, k + 1)) for k in (n_max, m_max, d_max))
        tensor = qqa_extract_tensor(random_algorithm(n, m, d, instance_seed)).tensor
        return InequalityReport.build("qqa_cb", tensor.bh_norm(), 1.0, field=tensor.field,
                                      witness={"d": d, "n": n, "m": m}, tolerance=1e-8)

    return _run("qqa_cb", count, seed, job, threads)


SWEEPS: Dict[str, Callable[..., SweepResult]] = {
    "channel": channel_sweep,
    "operator": operator_sweep,
    "unitary_l1": unitary_l1_sweep,
    "blei": blei_sweep,
    "varopoulos": varopoulos_sweep,
    "qqa": qqa_sweep,
}


def write_sweep_csv(result: SweepResult, path: str) -> None:
    with open(path, 'w', newline=CSV_NEWLINE) as f:
        writer = csv.writer(f, dialect=CSV_DIALECT, delimiter=CSV_DELIMITER)
        writer.writerow(CSV_COLUMNS)
        for row in result.rows:
            writer.writerow(row.as_csv_row())
    logger.info(f"Wrote {len(result)} rows of sweep {result.name} to {path}")


def read_sweep_csv(path: str, name: str = "loaded") -> SweepResult:
    with open(path, 'r', newline=CSV_NEWLINE) as f:
        reader = csv.DictReader(f, dialect=CSV_DIALECT, delimiter=CSV_DELIMITER)
        if tuple(reader.fieldnames or ()) != CSV_COLUMNS:
            raise InvalidInputError(f"{path} does not carry the sweep columns {CSV_COLUMNS}")
        rows = [SweepRow(instance_id=int(r["instance_id"]), d=int(r["d"]), n=int(r["n"]), lhs=float(r["lhs"]),
                         rhs=float(r["rhs"]), ratio=float(r["ratio"]), field=r["field"], seed=int(r["seed"]))
                for r in reader]
    return SweepResult(name=name, seed=rows[0].seed if rows else 0, rows=rows)
