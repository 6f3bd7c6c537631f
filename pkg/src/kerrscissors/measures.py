"""Fidelity, Bures distance and entanglement measures.

Matrix square roots are taken through a Hermitian eigendecomposition;
eigenvalues below ``EIG_CUTOFF`` (relative to the largest) are treated as
numerical dust and set to zero.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateProjectionError
from .fock import FockDims, as_dims, partial_trace, qubit_indices

EIG_CUTOFF = 1e-13
HERMITIAN_TOL = 1e-10

_SQRT_HALF = np.sqrt(0.5)

#: Rows are <B_j| expressed as kets in the (|00>, |01>, |10>, |11>) basis.
BELL_STATES = np.array(
    [
        [1j * _SQRT_HALF, 0, 0, _SQRT_HALF],  # B1 = (|11> + i|00>)/sqrt2
        [_SQRT_HALF, 0, 0, 1j * _SQRT_HALF],  # B2 = (|00> + i|11>)/sqrt2
        [0, _SQRT_HALF, -1j * _SQRT_HALF, 0],  # B3 = (|01> - i|10>)/sqrt2
        [0, -1j * _SQRT_HALF, _SQRT_HALF, 0],  # B4 = (|10> - i|01>)/sqrt2
    ],
    dtype=complex,
)

_SIGMA_Y = np.array([[0, -1j], [1j, 0]])
_YY = np.kron(_SIGMA_Y, _SIGMA_Y)

QUBIT_DIMS = FockDims(2, 2)


def _check_hermitian(rho, name="rho"):
    rho = np.asarray(rho, dtype=complex)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise ValueError(f"{name} must be a square matrix, got shape {rho.shape}")
    if np.max(np.abs(rho - rho.conj().T)) > HERMITIAN_TOL:
        raise ValueError(f"{name} is not Hermitian")
    return rho


def _clamped_eigh(rho):
    w, v = np.linalg.eigh(0.5 * (rho + rho.conj().T))
    cutoff = EIG_CUTOFF * max(w.max(initial=0.0), 1.0)
    return np.where(w > cutoff, w, 0.0), v


def sqrtm_psd(rho: np.ndarray) -> np.ndarray:
    """Square root of a positive semidefinite Hermitian matrix."""
    w, v = _clamped_eigh(np.asarray(rho, dtype=complex))
    return (v * np.sqrt(w)) @ v.conj().T


def _as_density(state):
    state = np.asarray(state, dtype=complex)
    return np.outer(state, state.conj()) if state.ndim == 1 else state


def fidelity(rho, sigma) -> float:
    """Uhlmann fidelity (Tr sqrt(sqrt(sigma) rho sqrt(sigma)))^2.

    Either argument may be a state vector, in which case the result is
    the expectation value <psi|rho|psi>.
    """
    rho = np.asarray(rho, dtype=complex)
    sigma = np.asarray(sigma, dtype=complex)
    if rho.shape[0] != sigma.shape[0]:
        raise ValueError(f"dimension mismatch: {rho.shape} vs {sigma.shape}")
    if rho.ndim == 1 and sigma.ndim == 1:
        return float(min(abs(np.vdot(rho, sigma)) ** 2, 1.0))
    if sigma.ndim == 1:
        rho, sigma = sigma, rho
    if rho.ndim == 1:
        sigma = _check_hermitian(sigma, "sigma")
        return float(np.clip(np.real(np.vdot(rho, sigma @ rho)), 0.0, 1.0))
    rho = _check_hermitian(rho)
    sigma = _check_hermitian(sigma, "sigma")
    # Nuclear norm of sqrt(rho) sqrt(sigma); symmetric in its arguments.
    root = np.linalg.svd(sqrtm_psd(rho) @ sqrtm_psd(sigma), compute_uv=False).sum()
    return float(np.clip(root**2, 0.0, 1.0))


def pure_fidelity(psi, rho) -> float:
    """<psi|rho|psi> for a normalized vector psi."""
    psi = np.asarray(psi, dtype=complex)
    return float(np.real(np.vdot(psi, _as_density(rho) @ psi)))


def bures_distance(rho, sigma) -> float:
    """2 - 2 sqrt(F)."""
    return float(max(2.0 - 2.0 * np.sqrt(fidelity(rho, sigma)), 0.0))


def binary_entropy(p: float) -> float:
    """h(p) in bits; h(0) = h(1) = 0."""
    if p <= 0.0 or p >= 1.0:
        return 0.0
    return float(-p * np.log2(p) - (1 - p) * np.log2(1 - p))


def cal_e(x: float) -> float:
    """h((1 + sqrt(1 - x^2)) / 2) for x in [0, 1], in ebits."""
    if not -1e-12 <= x <= 1 + 1e-12:
        raise ValueError(f"argument must lie in [0, 1], got {x!r}")
    x = min(max(float(x), 0.0), 1.0)
    root = np.sqrt(1.0 - x * x)
    # small eigenvalue written without the 1 - root cancellation
    small = x * x / (2.0 * (1.0 + root))
    return binary_entropy(small)


def von_neumann_entropy(rho: np.ndarray) -> float:
    """-Tr rho log2 rho."""
    w = np.linalg.eigvalsh(0.5 * (rho + rho.conj().T))
    w = w[w > 0]
    return float(max(-np.sum(w * np.log2(w)), 0.0))


def entropy_of_entanglement(psi: np.ndarray, dims=None) -> float:
    """Entropy of the reduced state Tr_b |psi><psi| in ebits.

    ``dims`` defaults to two qubits when ``psi`` has four components.
    """
    psi = np.asarray(psi, dtype=complex)
    dims = QUBIT_DIMS if dims is None and psi.size == 4 else as_dims(dims)
    if abs(np.linalg.norm(psi) - 1) > 1e-8:
        raise ValueError("state is not normalized")
    rho_a = partial_trace(np.outer(psi, psi.conj()), dims, keep="a")
    return von_neumann_entropy(rho_a)


def entropy_from_amplitudes(c) -> float:
    """Two-qubit pure-state entropy from c00 c11 - c01 c10."""
    c00, c01, c10, c11 = np.asarray(c, dtype=complex)
    return cal_e(min(2.0 * abs(c00 * c11 - c01 * c10), 1.0))


def project_two_qubit(rho: np.ndarray, dims) -> tuple[np.ndarray, float]:
    """Renormalized {|00>,|01>,|10>,|11>} block of rho and the weight outside it."""
    dims = as_dims(dims)
    rho = np.asarray(rho, dtype=complex)
    idx = qubit_indices(dims)
    block = rho[np.ix_(idx, idx)]
    weight = float(np.trace(block).real)
    if weight < 1e-12:
        raise DegenerateProjectionError("two-qubit block has zero trace")
    leakage = float(min(max(np.trace(rho).real - weight, 0.0), 1.0))
    return block / weight, leakage


def concurrence(rho4: np.ndarray) -> float:
    """Wootters concurrence of a two-qubit density matrix.

    The lambda_i (square roots of the eigenvalues of rho Y rho* Y) are
    obtained as singular values of W^T Y W with W = V sqrt(D) from the
    eigendecomposition rho = V D V^dagger, which keeps them accurate for
    nearly pure states.
    """
    rho4 = _check_hermitian(rho4, "rho4")
    if rho4.shape != (4, 4):
        raise ValueError(f"expected a 4x4 matrix, got {rho4.shape}")
    w, v = _clamped_eigh(rho4)
    weighted = v * np.sqrt(w)
    lam = np.linalg.svd(weighted.T @ _YY @ weighted, compute_uv=False)
    return float(min(max(2 * lam.max() - lam.sum(), 0.0), 1.0))


def concurrence_eigenvalue_path(rho4: np.ndarray) -> float:
    """Concurrence from the eigenvalues of rho Y rho* Y directly."""
    rho4 = _check_hermitian(rho4, "rho4")
    r = rho4 @ _YY @ rho4.conj() @ _YY
    lam = np.sqrt(np.clip(np.linalg.eigvals(r).real, 0.0, None))
    return float(max(2 * lam.max() - lam.sum(), 0.0))


def entanglement_of_formation(rho4: np.ndarray) -> float:
    """cal_e(C(rho)) in ebits."""
    return cal_e(concurrence(rho4))


@dataclass(frozen=True)
class BellDecomposition:
    """Amplitudes b_j = <B_j|psi> and the probability outside the qubit block."""

    b1: complex
    b2: complex
    b3: complex
    b4: complex
    leakage: float = 0.0

    @property
    def amplitudes(self) -> np.ndarray:
        return np.array([self.b1, self.b2, self.b3, self.b4])

    @property
    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2


def bell_decompose(state, dims=None) -> BellDecomposition:
    """Expand a pure state in the Bell basis B1..B4.

    ``state`` is either the four qubit amplitudes (array or
    ``TruncatedQubitPair``) or a full two-mode vector with ``dims``.
    """
    if hasattr(state, "as_array"):
        state = state.as_array()
    state = np.asarray(state, dtype=complex)
    if dims is None and state.size == 4:
        c, leakage = state, 0.0
    else:
        idx = qubit_indices(as_dims(dims))
        c = state[idx]
        leakage = float(max(np.sum(np.abs(state) ** 2) - np.sum(np.abs(c) ** 2), 0.0))
    b = BELL_STATES.conj() @ c
    return BellDecomposition(*b, leakage=leakage)
