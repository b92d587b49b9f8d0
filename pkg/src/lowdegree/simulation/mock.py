from typing import List, Tuple

from ..core.exceptions import InvariantViolationError
from .oracle import SimulatedOracle


class InstrumentedOracle(SimulatedOracle):
    """SimulatedOracle that records every call and every attempt to read the target directly."""

    def __init__(self, target, seed=0, max_queries=None, keep_log=True):
        super().__init__(target, seed=seed, max_queries=max_queries, keep_log=keep_log)
        self.calls: List[Tuple[str, int]] = []
        self.leaks = 0

    def call(self, primitive: str, shots: int):
        self.calls.append((primitive, int(shots)))
        return super().call(primitive, shots)

    @property
    def hidden_target(self):
        try:
            return super().hidden_target
        except InvariantViolationError:
            self.leaks += 1
            raise

    def primitives_called(self) -> List[str]:
        return sorted({primitive for primitive, _ in self.calls})
