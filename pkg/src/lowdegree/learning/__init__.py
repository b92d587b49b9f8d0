"""
Learners for low-degree channels, unitaries, Pauli channels, Boolean functions, bounded
polynomials and multilinear forms. Each consumes only oracle primitives and returns a LearnReport.
"""
from .boolean import learn_boolean_exact, learn_bounded_poly
from .channels import learn_channel
from .empirical import empirical_distribution
from .params import LearnParams, LearnReport
from .pauli_channels import estimator_expectation, learn_pauli_channel, learn_pauli_channel_entangled
from .scoring import heavy_set_sound, score_report
from .tensors import learn_tensor_ei, learn_tensor_from_oracle
from .unitaries import learn_unitary

LEARNERS = {
    "learn-channel": learn_channel,
    "learn-unitary": learn_unitary,
    "learn-pauli-channel": learn_pauli_channel,
    "learn-pauli-channel-entangled": learn_pauli_channel_entangled,
    "learn-boolean": learn_boolean_exact,
    "learn-poly": learn_bounded_poly,
    "learn-tensor": learn_tensor_from_oracle,
}
