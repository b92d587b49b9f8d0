"""
The address function: d-1 address pairs select one of 2^(d-1) target bits.

Variables are laid out as (x_1(1), x_1(2), ..., x_{d-1}(1), x_{d-1}(2), y(0), ..., y(2^(d-1) - 1)).
Pair k selects the address bit a_k = -x_k(1) x_k(2) and g_a = prod_k (x_k(1) - a_k x_k(2)) / 2
is +-1 on the matching address and 0 elsewhere. The address a in {-1,1}^(d-1) is identified with
[2^(d-1)] through a_k = (-1)^(b_k), b_1 the most significant bit.
"""
import itertools

from ..core.exceptions import CapExceededError, InvalidInputError
from ..core.spectra import BooleanSpectrum

MAX_DEGREE = 5


def address_variable_count(d: int) -> int:
    return 2 * (d - 1) + 2 ** (d - 1)


def address_function(d: int) -> BooleanSpectrum:
    if d < 1:
        raise InvalidInputError(f"Address function needs d >= 1, got {d}")
    if d > MAX_DEGREE:
        raise CapExceededError(f"Address function of degree {d} exceeds the cap of {MAX_DEGREE}")
    pairs = d - 1
    n = address_variable_count(d)
    scale = 2.0 ** (1 - d)
    coeffs = {}
    for target, bits in enumerate(itertools.product((0, 1), repeat=pairs)):
        signs = [(-1) ** b for b in bits]
        for choice in itertools.product((0, 1), repeat=pairs):
            key = [0] * n
            value = scale
            for k, picked in enumerate(choice):
                key[2 * k + picked] = 1
                if picked:
                    value *= -signs[k]
            key[2 * pairs + target] = 1
            coeffs[tuple(key)] = value
    return BooleanSpectrum(n, coeffs)
