"""
Empirical distributions of sampled keys.
"""
from collections import Counter
from typing import Dict, Hashable, Iterable, Mapping

from ..core.exceptions import InvalidInputError
from .budgets import linf_sample_count


def empirical_distribution(samples: Iterable[Hashable]) -> Dict[Hashable, float]:
    counts = Counter(samples)
    total = sum(counts.values())
    if total == 0:
        raise InvalidInputError("Cannot form an empirical distribution from no samples")
    return {key: count / total for key, count in counts.items()}


def linf_error(estimate: Mapping[Hashable, float], truth: Mapping[Hashable, float]) -> float:
    keys = set(estimate) | set(truth)
    return max((abs(estimate.get(k, 0.0) - truth.get(k, 0.0)) for k in keys), default=0.0)


def heavy_keys(frequencies: Mapping[Hashable, float], threshold: float) -> list:
    """Keys with frequency at least `threshold`, sorted; ties at the threshold are kept."""
    return sorted(key for key, value in frequencies.items() if value >= threshold)


__all__ = ["empirical_distribution", "heavy_keys", "linf_error", "linf_sample_count"]
