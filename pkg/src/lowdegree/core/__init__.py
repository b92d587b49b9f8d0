from .pauli import PauliString, weight, star, all_pauli_strings, low_weight_strings
from .spectra import (BooleanSpectrum, OperatorSpectrum, SuperopSpectrum, bh_exponent, degree,
                      l2_distance, linf_distance, pnorm, tv_distance)
from .dense import DenseOperator, DenseState
from .transforms import (bell_amplitudes, boolean_spectrum, choi_state_of_unitary, spectrum_of_operator,
                         spectrum_of_superop, superop_from_map, synth_boolean, synth_operator)

__all__ = [
    "PauliString", "weight", "star", "all_pauli_strings", "low_weight_strings",
    "BooleanSpectrum", "OperatorSpectrum", "SuperopSpectrum", "bh_exponent", "degree",
    "l2_distance", "linf_distance", "pnorm", "tv_distance",
    "DenseOperator", "DenseState",
    "bell_amplitudes", "boolean_spectrum", "choi_state_of_unitary", "spectrum_of_operator",
    "spectrum_of_superop", "superop_from_map", "synth_boolean", "synth_operator",
]
