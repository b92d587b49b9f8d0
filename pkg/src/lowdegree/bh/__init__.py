from .tensor import MultilinearTensor
from .reports import InequalityReport
from .norms import (operator_norm, precise_bh_norm, s1_to_sinfty_converged, s1_to_sinfty_lb, s1_to_sinfty_upper,
                    sup_norm_bruteforce)
from .address import address_function, address_variable_count
from .f_phi import FPhiComparison, f_phi_build, f_phi_compare, f_phi_direct
from .cb import Contractions, bh_cb_check, blei_mixed_norm, slot_norms, varopoulos_contractions
from .inequalities import bh_check_boolean, bh_check_channel, bh_check_operator

__all__ = [
    "MultilinearTensor",
    "InequalityReport",
    "operator_norm", "precise_bh_norm", "s1_to_sinfty_converged", "s1_to_sinfty_lb", "s1_to_sinfty_upper",
    "sup_norm_bruteforce",
    "address_function", "address_variable_count",
    "FPhiComparison", "f_phi_build", "f_phi_compare", "f_phi_direct",
    "Contractions", "bh_cb_check", "blei_mixed_norm", "slot_norms", "varopoulos_contractions",
    "bh_check_boolean", "bh_check_channel", "bh_check_operator",
]
