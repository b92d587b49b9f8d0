"""
Budgeted oracle around a hidden target.

The oracle owns the ground truth, one random stream per primitive and the query counters.
Primitives open a call with `oracle.call(tag, shots)`; only inside such a call is the target
reachable. A call that raises is refunded, so counters only ever reflect delivered samples.
"""
import logging
from contextlib import contextmanager
from typing import Any, Dict, Iterator, Optional, Union

import numpy as np

from ..config import config
from ..core.exceptions import BudgetExceededError, InvalidInputError, InvariantViolationError
from .records import SampleLog, SampleRecord
from .targets import target_for

logger = logging.getLogger(__name__)

PRIMITIVES = (
    "choi_diag",
    "channel_swap",
    "bell_unitary",
    "hadamard",
    "pauli_probe",
    "fourier_sample",
    "classical_example",
    "quantum_example_measured",
    "block_encoding_cj",
    "amplitude_sample",
)

SeedLike = Union[int, np.random.SeedSequence]


def as_seed_sequence(seed: SeedLike) -> np.random.SeedSequence:
    if isinstance(seed, np.random.SeedSequence):
        return seed
    if seed is None or int(seed) < 0:
        raise InvalidInputError(f"A non-negative integer seed is required, got {seed!r}")
    return np.random.SeedSequence(int(seed))


def primitive_stream(seed: SeedLike, primitive: str) -> np.random.Generator:
    """Sub-stream of `seed` reserved for one primitive."""
    root = as_seed_sequence(seed)
    index = PRIMITIVES.index(primitive)
    child = np.random.SeedSequence(entropy=root.entropy, spawn_key=tuple(root.spawn_key) + (index,))
    return np.random.default_rng(child)


class OracleCall:
    """Handle passed to a primitive for the duration of one charged call."""

    def __init__(self, oracle: "SimulatedOracle", primitive: str, shots: int, query_index: int):
        self._oracle = oracle
        self.primitive = primitive
        self.shots = shots
        self.query_index = query_index
        self.rng = oracle._stream(primitive)

    @property
    def target(self):
        return self._oracle.hidden_target

    def record(self, inputs: Dict[str, Any], outcome: Any) -> None:
        self._oracle.log.append(SampleRecord(primitive=self.primitive, inputs=inputs, outcome=outcome,
                                             query_index=self.query_index, shots=self.shots))


class SimulatedOracle:
    def __init__(self, target, seed: SeedLike = 0, max_queries: Optional[int] = None,
                 keep_log: Optional[bool] = None):
        self._target = target_for(target)
        self._seed = as_seed_sequence(seed)
        self._streams: Dict[str, np.random.Generator] = {}
        self._used = {primitive: 0 for primitive in PRIMITIVES}
        self._depth = 0
        self.max_queries = max_queries
        keep_log = config.simulation.keep_sample_log if keep_log is None else keep_log
        self.log = SampleLog(enabled=keep_log)

    @property
    def n(self) -> int:
        return self._target.n

    @property
    def kind(self) -> str:
        return self._target.kind

    @property
    def budget_used(self) -> Dict[str, int]:
        """Queries charged per primitive, primitives never called omitted."""
        return {primitive: count for primitive, count in self._used.items() if count}

    @property
    def total_queries(self) -> int:
        return sum(self._used.values())

    @property
    def hidden_target(self):
        if self._depth == 0:
            raise InvariantViolationError("Ground truth accessed outside a primitive call")
        return self._target

    def _stream(self, primitive: str) -> np.random.Generator:
        if primitive not in self._streams:
            self._streams[primitive] = primitive_stream(self._seed, primitive)
        return self._streams[primitive]

    @contextmanager
    def call(self, primitive: str, shots: int) -> Iterator[OracleCall]:
        if primitive not in PRIMITIVES:
            raise InvalidInputError(f"Unknown primitive {primitive!r}")
        shots = int(shots)
        if shots < 0:
            raise InvalidInputError(f"Shot count must be non-negative, got {shots}")
        if self.max_queries is not None and self.total_queries + shots > self.max_queries:
            raise BudgetExceededError(
                f"{primitive}: {shots} more queries would exceed the budget of {self.max_queries} "
                f"({self.total_queries} used)")
        handle = OracleCall(self, primitive, shots, self.total_queries)
        self._used[primitive] += shots
        self._depth += 1
        try:
            yield handle
        except Exception:
            self._used[primitive] -= shots
            raise
        finally:
            self._depth -= 1
        logger.debug(f"{primitive}: charged {shots} queries (total {self.total_queries})")
