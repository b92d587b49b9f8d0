"""
Seeded random objects of bounded degree: Pauli mixtures, junta unitaries and channels,
Boolean juntas and bounded polynomials.
"""
import numpy as np
from scipy.linalg import expm
from scipy.stats import unitary_group

from .channels import pauli_channel, unitary_channel
from .exceptions import InvalidInputError
from .pauli import PauliString, low_weight_strings, low_weight_subsets
from .spectra import BooleanSpectrum, OperatorSpectrum, SuperopSpectrum
from .transforms import boolean_spectrum, lift_boolean_spectrum, lift_operator_spectrum, spectrum_of_operator


def _sites(rng: np.random.Generator, n: int, k: int):
    if not 1 <= k <= n:
        raise InvalidInputError(f"Junta size {k} must lie in [1, {n}]")
    return sorted(int(s) for s in rng.choice(n, size=k, replace=False))


def pauli_mixture_channel(n: int, d: int, sparsity: int, seed: int) -> SuperopSpectrum:
    """Rates on the identity and sparsity - 1 further strings of weight <= d // 2."""
    rng = np.random.default_rng(seed)
    candidates = [x for x in low_weight_strings(n, d // 2) if x.weight > 0]
    count = min(max(sparsity - 1, 0), len(candidates))
    chosen = [candidates[i] for i in sorted(rng.choice(len(candidates), size=count, replace=False))]
    rates = rng.dirichlet(np.ones(count + 1))
    return pauli_channel(dict(zip([PauliString.identity(n)] + chosen, rates)))


def junta_unitary(n: int, k: int, seed: int) -> OperatorSpectrum:
    """Haar-random unitary on k random qubits; degree at most k."""
    rng = np.random.default_rng(seed)
    sites = _sites(rng, n, k)
    block = unitary_group.rvs(2 ** k, random_state=rng)
    return lift_operator_spectrum(spectrum_of_operator(block), sites, n)


def phase_evolution_unitary(n: int, d: int, seed: int, terms: int = 3) -> OperatorSpectrum:
    """exp(i H) for a random Pauli Hamiltonian on a d-qubit junta."""
    rng = np.random.default_rng(seed)
    sites = _sites(rng, n, d)
    hamiltonian = np.zeros((2 ** d, 2 ** d), dtype=complex)
    strings = [x for x in low_weight_strings(d, d) if x.weight > 0]
    for index in rng.choice(len(strings), size=min(terms, len(strings)), replace=False):
        hamiltonian += rng.uniform(-np.pi / 2, np.pi / 2) * strings[index].matrix()
    return lift_operator_spectrum(spectrum_of_operator(expm(1j * hamiltonian)), sites, n)


def junta_conjugated_channel(n: int, d: int, seed: int) -> SuperopSpectrum:
    """rho -> U rho U^* with U a Haar unitary on d // 2 qubits; degree at most d."""
    if d < 2:
        raise InvalidInputError(f"Conjugation channels have degree at least 2, got d={d}")
    return unitary_channel(junta_unitary(n, d // 2, seed))


def boolean_junta(n: int, k: int, seed: int) -> BooleanSpectrum:
    """Uniformly random +-1 function of k random variables."""
    rng = np.random.default_rng(seed)
    variables = _sites(rng, n, k)
    table = rng.choice((-1.0, 1.0), size=2 ** k)
    return lift_boolean_spectrum(boolean_spectrum(table), variables, n)


def bounded_poly(n: int, d: int, seed: int, sparsity: int = 6, peak: float = 1.0) -> BooleanSpectrum:
    """Random degree-d polynomial rescaled so that max |p| over the cube equals peak."""
    if sparsity < 1:
        raise InvalidInputError(f"Need at least one term, got sparsity={sparsity}")
    rng = np.random.default_rng(seed)
    subsets = [s for s in low_weight_subsets(n, d) if sum(s) > 0]
    count = min(sparsity, len(subsets))
    chosen = [subsets[i] for i in rng.choice(len(subsets), size=count, replace=False)]
    # One top-degree term keeps the declared degree exact
    top = [s for s in subsets if sum(s) == min(d, n)]
    if not any(sum(s) == min(d, n) for s in chosen):
        chosen[0] = top[int(rng.integers(len(top)))]
    raw = BooleanSpectrum(n, {s: rng.standard_normal() for s in chosen})
    sup = float(np.max(np.abs(raw.truth_table())))
    return raw.scaled(peak / sup)
