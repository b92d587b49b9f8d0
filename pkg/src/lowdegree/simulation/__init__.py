from .oracle import PRIMITIVES, SimulatedOracle, primitive_stream
from .targets import ChannelTarget, FunctionTarget, QueryAlgorithmTarget, UnitaryTarget, target_for
from .records import SampleLog, SampleRecord
from .primitives import (amplitude_samples, bell_sample_unitary, cj_sample_block_encoding, classical_example_boolean,
                         classical_examples_boolean, estimate_channel_coeff, hadamard_test, pauli_channel_probe,
                         pauli_channel_probes, quantum_example_boolean, quantum_examples_boolean,
                         sample_choi_diag_channel)
from .block_encoding import block_encoding_spectrum, build_block_encoding, sector_subset
from .circuits import circuit_cross_check
from .mock import InstrumentedOracle

__all__ = [
    "PRIMITIVES", "SimulatedOracle", "primitive_stream",
    "ChannelTarget", "FunctionTarget", "QueryAlgorithmTarget", "UnitaryTarget", "target_for",
    "SampleLog", "SampleRecord",
    "amplitude_samples", "bell_sample_unitary", "cj_sample_block_encoding", "classical_example_boolean",
    "classical_examples_boolean", "estimate_channel_coeff", "hadamard_test", "pauli_channel_probe",
    "pauli_channel_probes", "quantum_example_boolean", "quantum_examples_boolean", "sample_choi_diag_channel",
    "block_encoding_spectrum", "build_block_encoding", "sector_subset",
    "circuit_cross_check",
    "InstrumentedOracle",
]
