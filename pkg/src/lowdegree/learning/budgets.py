"""
Theory-shaped thresholds and sample counts.

Every count is returned before the shot multiplier; learners pass it through
LearnParams.scaled together with the floor configured for that phase.
"""
import math
from dataclasses import dataclass
from typing import Optional

from ..config import config
from ..core.exceptions import CapExceededError, InvalidInputError
from ..core.pauli import count_low_weight
from .params import LearnParams

THRESHOLD_RULES = ("proof", "box")


def _constant(value: Optional[float]) -> float:
    return float(config.learners.bh_constant if value is None else value)


def _require_positive(c: float, what: str) -> float:
    if not c > 0:
        raise InvalidInputError(f"Degenerate {what} {c}")
    return c


def channel_threshold(params: LearnParams, rule: Optional[str] = None, bh_constant: Optional[float] = None) -> float:
    """
    c = eps^(2d+2) C^(-d(d+1)) under the 'proof' rule, eps^(4d+2) C^(-4d^2) under 'box'.

    A c_override on the params wins over both.
    """
    if params.c_override is not None:
        return _require_positive(params.c_override, "threshold")
    rule = rule or config.learners.threshold_rule
    d, eps, C = params.d, params.epsilon, _constant(bh_constant)
    if rule == "proof":
        return _require_positive(eps ** (2 * d + 2) * C ** (-d * (d + 1)), "threshold")
    if rule == "box":
        return _require_positive(eps ** (4 * d + 2) * C ** (-4 * d * d), "threshold")
    raise InvalidInputError(f"Unknown threshold rule {rule!r}; expected one of {THRESHOLD_RULES}")


def unitary_threshold(params: LearnParams, bh_constant: Optional[float] = None) -> float:
    """c = eps^(d+1) C^(-d(d+1)); the heavy set keeps Bell frequencies of at least c^2."""
    if params.c_override is not None:
        return _require_positive(params.c_override, "threshold")
    d = params.d
    return _require_positive(params.epsilon ** (d + 1) * _constant(bh_constant) ** (-d * (d + 1)), "threshold")


@dataclass(frozen=True)
class TwoPhaseCounts:
    phase1: float
    phase2_total: float


def channel_counts(params: LearnParams, c: float) -> TwoPhaseCounts:
    """Diagonal samples (1/c)^2 log(1/delta); coefficient shots (1/c)^4 (1/eps)^2 log(c^-2/delta) in total."""
    scales = config.learners.channel
    delta, eps = params.delta, params.epsilon
    phase1 = scales.phase1_scale * c ** -2 * math.log(1 / delta)
    phase2 = scales.phase2_scale * c ** -4 * eps ** -2 * math.log(c ** -2 / delta)
    return TwoPhaseCounts(phase1=phase1, phase2_total=phase2)


def unitary_counts(params: LearnParams, c: float) -> TwoPhaseCounts:
    """Bell samples (1/c)^4 log(1/delta); Hadamard shots (1/c)^4 (1/eps)^2 log(c^-2/delta) in total."""
    scales = config.learners.unitary
    delta, eps = params.delta, params.epsilon
    phase1 = scales.phase1_scale * c ** -4 * math.log(1 / delta)
    phase2 = scales.phase2_scale * c ** -4 * eps ** -2 * math.log(c ** -2 / delta)
    return TwoPhaseCounts(phase1=phase1, phase2_total=phase2)


def pauli_channel_probe_count(params: LearnParams, n: int) -> float:
    """9^d n^(2d) / eps^2 log(n / delta) unentangled probes."""
    d, eps = params.d, params.epsilon
    scale = config.learners.pauli_channel.probe_scale
    return scale * 9 ** d * n ** (2 * d) / eps ** 2 * math.log(max(n, 2) / params.delta)


def entangled_shot_count(params: LearnParams, n: int) -> float:
    """(3^d n^d + log(1/delta)) / eps^2 Bell samples of the Choi state."""
    d, eps = params.d, params.epsilon
    return config.learners.pauli_channel.entangled_scale * (3 ** d * n ** d + math.log(1 / params.delta)) / eps ** 2


@dataclass(frozen=True)
class BooleanCounts:
    classical: float
    fourier: float
    quantum_estimation: float


def boolean_sample_counts(params: LearnParams, n: int) -> BooleanCounts:
    """
    Hoeffding counts for estimating coefficients to within half the 2^(1-d) grid.

    Classical mode estimates every subset of size <= d. Quantum mode first Fourier samples until
    every non-zero coefficient (at most 4^(d-1) of them, each of weight >= 4^(1-d)) has been seen,
    then estimates only those.
    """
    d, delta = params.d, params.delta
    scale = config.learners.boolean.sample_scale
    subsets = sum(math.comb(n, k) for k in range(min(d, n) + 1))
    classical = scale * 2 * 4 ** d * math.log(2 * subsets / delta)
    fourier = scale * 2 * 4 ** (d - 1) * math.log(4 ** d / delta)
    estimation = scale * 2 * 4 ** d * math.log(2 * 4 ** (d - 1) / delta)
    return BooleanCounts(classical=classical, fourier=fourier, quantum_estimation=estimation)


def bounded_poly_threshold(params: LearnParams, bh_constant: Optional[float] = None) -> float:
    """a = eps^(d+1) C^(-d^1.5 sqrt(log d))."""
    if params.c_override is not None:
        return _require_positive(params.c_override, "threshold")
    d = params.d
    exponent = d ** 1.5 * math.sqrt(math.log(d)) if d > 1 else 0.0
    return _require_positive(params.epsilon ** (d + 1) * _constant(bh_constant) ** (-exponent), "threshold")


def bounded_poly_counts(params: LearnParams, a: float, phase1_shots: Optional[int] = None) -> TwoPhaseCounts:
    """
    T1 = (1/a)^2 log(2 / (delta a^2)) block-encoding copies; T2 = (1/b)^2 log(2 T1 / delta) examples with
    b^2 = eps^2 a^2 / log(2 / (delta a^2)).
    """
    scales = config.learners.bounded_poly
    eps, delta = params.epsilon, params.delta
    log_term = math.log(2 / (delta * a * a))
    phase1 = scales.phase1_scale * a ** -2 * log_term
    b_squared = eps * eps * a * a / log_term
    t1 = phase1_shots if phase1_shots is not None else max(phase1, 1.0)
    phase2 = scales.phase2_scale / b_squared * math.log(2 * t1 / delta)
    return TwoPhaseCounts(phase1=phase1, phase2_total=phase2)


def tensor_threshold(params: LearnParams) -> float:
    """eps^((d+1)/2) / 2 unless the config or the params fix it."""
    if params.c_override is not None:
        return params.c_override
    configured = config.learners.tensor.threshold
    if configured is not None:
        return float(configured)
    return params.epsilon ** ((params.d + 1) / 2) / 2


def tensor_sample_count(params: LearnParams, n: int) -> float:
    """eps^-(d+1) C^(2d) log(n / delta) with C the cb bound of the tensor."""
    tensor = config.learners.tensor
    d = params.d
    return (tensor.sample_scale * params.epsilon ** -(d + 1) * float(tensor.bh_constant) ** (2 * d)
            * math.log(max(n, 2) / params.delta))


def linf_sample_count(epsilon: float, delta: float) -> int:
    """Samples for an empirical distribution within epsilon of p everywhere, with probability 1 - delta."""
    if not (0 < epsilon < 1 and 0 < delta < 1):
        raise InvalidInputError(f"Need epsilon, delta in (0, 1), got {epsilon}, {delta}")
    return int(math.ceil(2 * math.log(2 / delta) / epsilon ** 2))


def check_enumeration(n: int, d: int) -> int:
    """Number of strings of weight <= d, refused above the configured cap."""
    count = count_low_weight(n, d)
    if count > config.learners.pauli_channel.enumeration_cap:
        raise CapExceededError(f"{count} strings of weight <= {d} on {n} qubits exceed the enumeration cap")
    return count
