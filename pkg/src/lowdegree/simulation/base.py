from contextlib import AbstractContextManager
from typing import Any, Dict, Protocol


class PrimitiveCall(Protocol):
    """Handle given to a primitive while it runs: hidden target, its random stream, its log."""
    target: Any
    rng: Any

    def record(self, inputs: Dict[str, Any], outcome: Any) -> None:
        ...


class ShotOracle(Protocol):
    """Query handle to an unknown object; only primitives may open calls."""

    @property
    def n(self) -> int:
        ...

    @property
    def kind(self) -> str:
        ...

    @property
    def budget_used(self) -> Dict[str, int]:
        ...

    def call(self, primitive: str, shots: int) -> AbstractContextManager:
        ...
