# Fixed matrices and symbols shared by the core modules.
import numpy as np

# Single-qubit Paulis sigma_0..sigma_3; sigma_2 uses the (-i, i) convention.
PAULI_MATRICES = np.array([
    [[1, 0], [0, 1]],
    [[0, 1], [1, 0]],
    [[0, -1j], [1j, 0]],
    [[1, 0], [0, -1]],
], dtype=complex)

PAULI_LABELS = ("I", "X", "Y", "Z")

HADAMARD = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)
PHASE_S = np.array([[1, 0], [0, 1j]], dtype=complex)
PHASE_S_DAGGER = np.array([[1, 0], [0, -1j]], dtype=complex)

# +1/-1 eigenvectors of sigma_1, sigma_2, sigma_3 (rows: eigenvalue +1, -1).
PAULI_EIGENSTATES = {
    1: np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2),
    2: np.array([[1, 1j], [1, -1j]], dtype=complex) / np.sqrt(2),
    3: np.array([[1, 0], [0, 1]], dtype=complex),
}

# Local change of basis for Pauli coefficients: row x, column 2*i + j holds sigma_x[j, i] / 2,
# so applying it on every site of vec(M) gives Tr(sigma_x M) / 2^n.
PAULI_ANALYSIS = np.array([[PAULI_MATRICES[x][j, i] / 2 for i in range(2) for j in range(2)]
                           for x in range(4)], dtype=complex)
# Inverse map: column x holds vec(sigma_x).
PAULI_SYNTHESIS = np.array([[PAULI_MATRICES[x][i, j] for x in range(4)]
                            for i in range(2) for j in range(2)], dtype=complex)

WALSH_HADAMARD = np.array([[1, 1], [1, -1]], dtype=float)
