"""
Measurement primitives consumed by the learners.

Each primitive computes the exact outcome law of its measurement from the hidden target and then
samples it with the oracle's per-primitive stream. The `*_distribution` helpers expose those laws
so the circuit-level cross-check can compare them against explicit circuit simulation.
"""
import logging
from collections import Counter
from typing import Dict, List, Mapping, Sequence, Tuple

import numpy as np

from ..config import config
from ..core.exceptions import CapExceededError, InvalidInputError, NotAChannelError, NotBooleanError, NotUnitaryError
from ..core.pauli import PauliString, star, star_array
from ..core.spectra import BooleanSpectrum, OperatorSpectrum, SuperopSpectrum
from ..qqa.algorithm import QuerySamples
from .base import ShotOracle
from .records import digest_array
from .targets import ChannelTarget, FunctionTarget, QueryAlgorithmTarget, UnitaryTarget

logger = logging.getLogger(__name__)

Bits = Tuple[int, ...]

SWAP_TESTS = ("diag", "re", "im")


# ----------------------------------------------------------------------------
# Outcome laws
# ----------------------------------------------------------------------------
def choi_diag_distribution(spectrum: SuperopSpectrum) -> Dict[PauliString, float]:
    """Bell-basis statistics of the Choi state: x with probability Phi^(x, x)."""
    return {x: max(rate, 0.0) for x, rate in spectrum.diagonal().items()}


def bell_distribution(spectrum: OperatorSpectrum) -> Dict[PauliString, float]:
    """Bell-basis statistics of |v(U)>: x with probability |U^(x)|^2."""
    return spectrum.probabilities()


def _part_value(value: complex, part: str) -> float:
    tag = part.lower()
    if tag not in ("re", "im"):
        raise InvalidInputError(f"Part must be 'Re' or 'Im', got {part!r}")
    return float(value.real) if tag == "re" else float(value.imag)


def hadamard_distribution(spectrum: OperatorSpectrum, x: PauliString, part: str) -> Dict[int, float]:
    """Ancilla outcome +1 / -1 of the Hadamard test on sigma_x U."""
    value = _part_value(complex(spectrum[x]), part)
    return {1: (1.0 + value) / 2.0, -1: (1.0 - value) / 2.0}


def swap_overlap(spectrum: SuperopSpectrum, x: PauliString, y: PauliString, test: str) -> float:
    """
    Tr(Phi^ rho') for the three reference states on span{|x>, |y>}.

    diag: (|x><x| + |y><y|)/2            -> (Phi^(x,x) + Phi^(y,y))/2
    re:   |+><+| with |+> = (|x>+|y>)/sqrt2 -> diag + Re Phi^(x,y)
    im:   |+i><+i| with |+i> = (|x>-i|y>)/sqrt2 -> diag + Im Phi^(x,y)
    """
    if test not in SWAP_TESTS:
        raise InvalidInputError(f"Unknown SWAP reference {test!r}")
    diag = 0.5 * (complex(spectrum[(x, x)]).real + complex(spectrum[(y, y)]).real)
    if test == "diag" or x == y:
        return diag
    off = complex(spectrum[(x, y)])
    return diag + (off.real if test == "re" else off.imag)


def swap_distribution(spectrum: SuperopSpectrum, x: PauliString, y: PauliString, test: str) -> Dict[int, float]:
    """SWAP-test ancilla outcome 0 (accept) / 1."""
    overlap = min(max(swap_overlap(spectrum, x, y, test), 0.0), 1.0)
    return {0: (1.0 + overlap) / 2.0, 1: (1.0 - overlap) / 2.0}


def probe_distribution(rates: Mapping[PauliString, float], s: PauliString) -> Dict[Bits, float]:
    """Outcome r = s * x of a product-state probe, marginalised over the hidden error x."""
    law: Dict[Bits, float] = {}
    for x, rate in rates.items():
        r = star(s, x)
        law[r] = law.get(r, 0.0) + rate
    return law


def fourier_distribution(spectrum: BooleanSpectrum) -> Dict[Bits, float]:
    return {s: float(abs(value) ** 2) for s, value in spectrum.items()}


# ----------------------------------------------------------------------------
# Sampling helpers
# ----------------------------------------------------------------------------
def _check_shots(shots: int) -> int:
    """Shot counts of mean estimators, which return one number and are not capped."""
    shots = int(shots)
    if shots < 0:
        raise InvalidInputError(f"Shot count must be non-negative, got {shots}")
    return shots


def _check_count(count: int) -> int:
    count = int(count)
    if count < 0:
        raise InvalidInputError(f"Sample count must be non-negative, got {count}")
    if count > config.simulation.max_sampled_outcomes:
        raise CapExceededError(f"{count} samples exceed the per-call cap")
    return count


def _draw(rng: np.random.Generator, law: Mapping, count: int) -> Tuple[List, np.ndarray]:
    keys = list(law)
    probabilities = np.clip(np.array([law[k] for k in keys], dtype=float), 0.0, None)
    probabilities /= probabilities.sum()
    return keys, rng.choice(len(keys), size=count, p=probabilities)


def _estimate_mean(rng: np.random.Generator, value: float, shots: int) -> Tuple[float, int]:
    """Mean of +-1 outcomes with expectation `value`, and the number of +1 outcomes."""
    accept = int(rng.binomial(shots, min(max((1.0 + value) / 2.0, 0.0), 1.0)))
    return 2.0 * accept / shots - 1.0, accept


def _counts(samples: Sequence) -> Dict[str, int]:
    return {str(key): count for key, count in sorted(Counter(samples).items())}


def expect_kind(oracle: ShotOracle, primitive: str, kind: str, error: type, what: str) -> None:
    """Reject the wrong kind of object before any count or budget is checked."""
    if oracle.kind != kind:
        raise error(f"{primitive} needs {what}, oracle holds a {oracle.kind} target")


def _target(call, expected: type, error: type, what: str):
    target = call.target
    if not isinstance(target, expected):
        raise error(f"{call.primitive} needs {what}, oracle holds a {target.kind} target")
    return target


# ----------------------------------------------------------------------------
# Channels
# ----------------------------------------------------------------------------
def sample_choi_diag_channel(oracle: ShotOracle, shots: int) -> List[PauliString]:
    """Bell-measure `shots` copies of the Choi state: i.i.d. x ~ Phi^(x, x)."""
    expect_kind(oracle, "choi_diag", "channel", NotAChannelError, "a channel")
    shots = _check_count(shots)
    with oracle.call("choi_diag", shots) as call:
        target = _target(call, ChannelTarget, NotAChannelError, "a channel")
        keys, picks = _draw(call.rng, choi_diag_distribution(target.spectrum), shots)
        samples = [keys[i] for i in picks]
        call.record({}, _counts(samples))
    return samples


def estimate_channel_coeff(oracle: ShotOracle, x: PauliString, y: PauliString, shots: int) -> complex:
    """
    Estimate Phi^(x, y) from SWAP tests between the Choi state and reference states.

    Shots are split evenly over the diag, re and im tests; Re = re - diag, Im = im - diag. Each
    part then carries at most three halves of the per-test error. For x == y only the diag test runs.
    """
    expect_kind(oracle, "channel_swap", "channel", NotAChannelError, "a channel")
    shots = _check_shots(shots)
    if shots < 1 or (x != y and shots < 3):
        raise InvalidInputError(f"Too few shots ({shots}) for a coefficient estimate")
    with oracle.call("channel_swap", shots) as call:
        target = _target(call, ChannelTarget, NotAChannelError, "a channel")
        if x == y:
            value, accept = _estimate_mean(call.rng, swap_overlap(target.spectrum, x, x, "diag"), shots)
            call.record({"x": str(x), "y": str(y), "split": [shots]}, {"accept": [accept]})
            return complex(value, 0.0)
        split = [shots // 3 + (1 if k < shots % 3 else 0) for k in range(3)]
        estimates, accepts = [], []
        for test, part_shots in zip(SWAP_TESTS, split):
            value, accept = _estimate_mean(call.rng, swap_overlap(target.spectrum, x, y, test), part_shots)
            estimates.append(value)
            accepts.append(accept)
        call.record({"x": str(x), "y": str(y), "split": split, "error_model": "1.5 * per-test error"},
                    {"accept": accepts})
    diag, real, imag = estimates
    return complex(real - diag, imag - diag)


# ----------------------------------------------------------------------------
# Unitaries
# ----------------------------------------------------------------------------
def bell_sample_unitary(oracle: ShotOracle, shots: int) -> List[PauliString]:
    """Bell-measure `shots` copies of |v(U)>: i.i.d. x ~ |U^(x)|^2."""
    expect_kind(oracle, "bell_unitary", "unitary", NotUnitaryError, "a unitary")
    shots = _check_count(shots)
    with oracle.call("bell_unitary", shots) as call:
        target = _target(call, UnitaryTarget, NotUnitaryError, "a unitary")
        keys, picks = _draw(call.rng, bell_distribution(target.spectrum), shots)
        samples = [keys[i] for i in picks]
        call.record({}, _counts(samples))
    return samples


def hadamard_test(oracle: ShotOracle, x: PauliString, part: str, shots: int) -> float:
    """
    Mean ancilla outcome of the Hadamard test on sigma_x U.

    The ancilla gate is I for the real part and S^dagger for the imaginary part, so the mean
    converges to Re U^(x) or Im U^(x) respectively.
    """
    expect_kind(oracle, "hadamard", "unitary", NotUnitaryError, "a unitary")
    shots = _check_shots(shots)
    if shots < 1:
        raise InvalidInputError("Hadamard test needs at least one shot")
    _part_value(0j, part)
    with oracle.call("hadamard", shots) as call:
        target = _target(call, UnitaryTarget, NotUnitaryError, "a unitary")
        value, accept = _estimate_mean(call.rng, _part_value(complex(target.spectrum[x]), part), shots)
        call.record({"x": str(x), "part": part.lower()}, {"accept": accept})
    return value


# ----------------------------------------------------------------------------
# Pauli channels
# ----------------------------------------------------------------------------
def _pauli_target(call) -> ChannelTarget:
    target = _target(call, ChannelTarget, NotAChannelError, "a Pauli channel")
    if not target.is_pauli:
        raise NotAChannelError("Target channel is not a Pauli channel")
    return target


def pauli_channel_probe(oracle: ShotOracle, s: PauliString) -> Bits:
    """Prepare the +1 eigenstate of sigma_s, send it through the channel, measure in basis s."""
    if any(symbol == 0 for symbol in s.word):
        raise InvalidInputError(f"Basis string {s} must not contain 0")
    with oracle.call("pauli_probe", 1) as call:
        target = _pauli_target(call)
        if s.n != target.n:
            raise InvalidInputError(f"Basis string has {s.n} sites, channel acts on {target.n}")
        keys, picks = _draw(call.rng, target.error_rates(), 1)
        outcome = star(s, keys[picks[0]])
        call.record({"s": str(s)}, "".join(str(b) for b in outcome))
    return outcome


def pauli_channel_probes(oracle: ShotOracle, count: int) -> Tuple[np.ndarray, np.ndarray]:
    """
    `count` probes with uniformly random bases.

    Returns (bases, outcomes): int8 arrays of shape (count, n) with bases in {1, 2, 3}.
    """
    expect_kind(oracle, "pauli_probe", "channel", NotAChannelError, "a Pauli channel")
    count = _check_count(count)
    with oracle.call("pauli_probe", count) as call:
        target = _pauli_target(call)
        bases = call.rng.integers(1, 4, size=(count, target.n)).astype(np.int8)
        keys, picks = _draw(call.rng, target.error_rates(), count)
        errors = np.array([k.word for k in keys], dtype=np.int8)[picks]
        outcomes = star_array(bases, errors)
        call.record({"count": count}, {"bases": digest_array(bases), "outcomes": digest_array(outcomes)})
    return bases, outcomes


# ----------------------------------------------------------------------------
# Boolean and bounded functions
# ----------------------------------------------------------------------------
def _function_target(call, boolean: bool) -> FunctionTarget:
    target = _target(call, FunctionTarget, NotBooleanError, "a function")
    if boolean:
        target.require_boolean()
    return target


def quantum_examples_boolean(oracle: ShotOracle, count: int) -> List[Bits]:
    """Fourier sampling: each quantum example yields a subset S ~ f^(S)^2."""
    expect_kind(oracle, "fourier_sample", "function", NotBooleanError, "a function")
    count = _check_count(count)
    with oracle.call("fourier_sample", count) as call:
        target = _function_target(call, boolean=True)
        keys, picks = _draw(call.rng, fourier_distribution(target.spectrum), count)
        samples = [keys[i] for i in picks]
        call.record({"count": count}, {"".join(map(str, k)): c for k, c in sorted(Counter(samples).items())})
    return samples


def quantum_example_boolean(oracle: ShotOracle) -> Bits:
    return quantum_examples_boolean(oracle, 1)[0]


def classical_examples_boolean(oracle: ShotOracle, count: int,
                               measured_quantum: bool = False) -> Tuple[np.ndarray, np.ndarray]:
    """
    Uniform examples (x, f(x)) with x in {-1,1}^n as int8 rows.

    With measured_quantum=True the examples come from measuring quantum examples in the
    computational basis and are charged as quantum examples.
    """
    expect_kind(oracle, "classical_example", "function", NotBooleanError, "a function")
    count = _check_count(count)
    primitive = "quantum_example_measured" if measured_quantum else "classical_example"
    with oracle.call(primitive, count) as call:
        target = _function_target(call, boolean=False)
        points = (1 - 2 * call.rng.integers(0, 2, size=(count, target.n))).astype(np.int8)
        values = target.spectrum.evaluate(points)
        call.record({"count": count}, {"points": digest_array(points), "values": digest_array(values)})
    return points, values


def classical_example_boolean(oracle: ShotOracle) -> Tuple[np.ndarray, float]:
    points, values = classical_examples_boolean(oracle, 1)
    return points[0], float(values[0])


def cj_sample_block_encoding(oracle: ShotOracle, shots: int) -> List[PauliString]:
    """Bell-measure copies of the Choi state of U_p: x ~ |U_p^(x)|^2 over n+1 sites."""
    expect_kind(oracle, "block_encoding_cj", "function", NotBooleanError, "a function")
    shots = _check_count(shots)
    with oracle.call("block_encoding_cj", shots) as call:
        target = _function_target(call, boolean=False)
        keys, picks = _draw(call.rng, bell_distribution(target.block_spectrum), shots)
        samples = [keys[i] for i in picks]
        call.record({}, _counts(samples))
    return samples


# ----------------------------------------------------------------------------
# Query algorithms
# ----------------------------------------------------------------------------
def amplitude_samples(oracle: ShotOracle, count: int):
    """Uniform points of ({-1,1}^n)^d with the exact acceptance amplitude at each."""
    expect_kind(oracle, "amplitude_sample", "query_algorithm", InvalidInputError, "a query algorithm")
    count = _check_count(count)
    with oracle.call("amplitude_sample", count) as call:
        target = _target(call, QueryAlgorithmTarget, InvalidInputError, "a query algorithm")
        algorithm = target.algorithm
        points = (1 - 2 * call.rng.integers(0, 2, size=(count, algorithm.d, algorithm.n))).astype(np.int8)
        values = algorithm.evaluate_batch(points)
        call.record({"count": count}, {"points": digest_array(points), "values": digest_array(values)})
    return QuerySamples(points=points, values=values)
