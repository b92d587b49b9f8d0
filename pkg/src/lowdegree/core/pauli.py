"""
Pauli strings and the star (commutation pattern) operation.
"""
import itertools
import math
from dataclasses import dataclass, field
from functools import lru_cache, reduce
from typing import Iterator, Sequence, Tuple

import numpy as np

from .constants import PAULI_LABELS, PAULI_MATRICES
from .exceptions import InvalidInputError


@dataclass(frozen=True, order=True)
class PauliString:
    """A word over {0, 1, 2, 3}; sigma_x is the tensor product of the site Paulis."""
    word: Tuple[int, ...]
    weight: int = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        word = tuple(int(symbol) for symbol in self.word)
        if len(word) < 1:
            raise InvalidInputError("PauliString needs at least one site")
        if any(symbol not in (0, 1, 2, 3) for symbol in word):
            raise InvalidInputError(f"Invalid Pauli symbols in {word}")
        object.__setattr__(self, "word", word)
        object.__setattr__(self, "weight", sum(1 for symbol in word if symbol))

    @classmethod
    def from_str(cls, text: str) -> "PauliString":
        """Parse a digit string such as '0123' or a label string such as 'IXYZ'."""
        text = text.strip()
        if text and all(ch in "IXYZ" for ch in text.upper()):
            return cls(tuple(PAULI_LABELS.index(ch) for ch in text.upper()))
        if not text.isdigit():
            raise InvalidInputError(f"Cannot parse Pauli string {text!r}")
        return cls(tuple(int(ch) for ch in text))

    @classmethod
    def identity(cls, n: int) -> "PauliString":
        return cls((0,) * n)

    @classmethod
    def single(cls, n: int, site: int, symbol: int) -> "PauliString":
        word = [0] * n
        word[site] = symbol
        return cls(tuple(word))

    @property
    def n(self) -> int:
        return len(self.word)

    @property
    def support(self) -> Tuple[int, ...]:
        return tuple(i for i, symbol in enumerate(self.word) if symbol)

    def index(self) -> int:
        """Position in the lexicographic order of all 4^n words."""
        value = 0
        for symbol in self.word:
            value = 4 * value + symbol
        return value

    @classmethod
    def from_index(cls, index: int, n: int) -> "PauliString":
        digits = []
        for _ in range(n):
            index, digit = divmod(index, 4)
            digits.append(digit)
        return cls(tuple(reversed(digits)))

    def matrix(self) -> np.ndarray:
        return pauli_matrix(self.word)

    def label(self) -> str:
        return "".join(PAULI_LABELS[s] for s in self.word)

    def __str__(self) -> str:
        return "".join(str(s) for s in self.word)


def weight(x: PauliString) -> int:
    return x.weight


def star(s: PauliString, x: PauliString) -> Tuple[int, ...]:
    """
    Commutation pattern of a measurement basis s against a Pauli error x.

    Bit j is 0 iff sigma_{s_j} and sigma_{x_j} commute, i.e. x_j is 0 or equal to s_j.
    """
    if s.n != x.n:
        raise InvalidInputError(f"Length mismatch: s has {s.n} sites, x has {x.n}")
    if any(symbol == 0 for symbol in s.word):
        raise InvalidInputError(f"Basis string {s} must not contain 0")
    return tuple(int(b != 0 and b != a) for a, b in zip(s.word, x.word))


def star_array(s: np.ndarray, x: np.ndarray) -> np.ndarray:
    """Vectorised star on integer arrays with matching trailing shape."""
    return ((x != 0) & (x != s)).astype(np.int8)


@lru_cache(maxsize=None)
def _pauli_matrix_cached(word: Tuple[int, ...]) -> np.ndarray:
    matrix = reduce(np.kron, (PAULI_MATRICES[s] for s in word))
    matrix.setflags(write=False)
    return matrix


def pauli_matrix(word: Sequence[int]) -> np.ndarray:
    return _pauli_matrix_cached(tuple(int(s) for s in word))


def all_pauli_strings(n: int) -> Iterator[PauliString]:
    """All 4^n strings in lexicographic order."""
    for word in itertools.product(range(4), repeat=n):
        yield PauliString(word)


def count_low_weight(n: int, d: int) -> int:
    return sum(math.comb(n, k) * 3 ** k for k in range(min(d, n) + 1))


def low_weight_strings(n: int, d: int) -> Iterator[PauliString]:
    """Strings of weight at most d, in lexicographic order."""
    words = []
    for size in range(min(d, n) + 1):
        for positions in itertools.combinations(range(n), size):
            for symbols in itertools.product((1, 2, 3), repeat=size):
                word = [0] * n
                for p, s in zip(positions, symbols):
                    word[p] = s
                words.append(tuple(word))
    for word in sorted(words):
        yield PauliString(word)


def low_weight_subsets(n: int, d: int) -> Iterator[Tuple[int, ...]]:
    """Bitstrings of length n with at most d ones, by size then lexicographically."""
    for size in range(min(d, n) + 1):
        for positions in itertools.combinations(range(n), size):
            bits = [0] * n
            for p in positions:
                bits[p] = 1
            yield tuple(bits)
