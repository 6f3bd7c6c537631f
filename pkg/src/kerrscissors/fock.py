"""Two-mode truncated Fock space.

Basis states |m, n> (m photons in mode a, n in mode b) are stored in
row-major order: ``index = m * dim_b + n``.  Every vector and matrix in the
package uses this layout.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

import numpy as np

Mode = Literal["a", "b"]

#: Linear indices of |00>, |01>, |10>, |11> are obtained from ``qubit_indices``.
QUBIT_LABELS = ((0, 0), (0, 1), (1, 0), (1, 1))


@dataclass(frozen=True)
class FockDims:
    """Number of Fock levels kept for each mode."""

    dim_a: int = 20
    dim_b: int = 20

    def __post_init__(self):
        for name in ("dim_a", "dim_b"):
            value = getattr(self, name)
            if int(value) != value or value < 2:
                raise ValueError(f"{name} must be an integer >= 2, got {value!r}")

    @property
    def total(self) -> int:
        return self.dim_a * self.dim_b

    def __iter__(self):
        yield self.dim_a
        yield self.dim_b


def as_dims(dims) -> FockDims:
    if isinstance(dims, FockDims):
        return dims
    dim_a, dim_b = dims
    return FockDims(int(dim_a), int(dim_b))


def tensor_index(m: int, n: int, dims) -> int:
    """Linear index of |m, n>."""
    dims = as_dims(dims)
    if not (0 <= m < dims.dim_a and 0 <= n < dims.dim_b):
        raise IndexError(f"level ({m}, {n}) outside dims ({dims.dim_a}, {dims.dim_b})")
    return m * dims.dim_b + n


def levels(index: int, dims) -> tuple[int, int]:
    """Inverse of :func:`tensor_index`."""
    dims = as_dims(dims)
    if not 0 <= index < dims.total:
        raise IndexError(f"index {index} outside basis of size {dims.total}")
    return divmod(index, dims.dim_b)


def qubit_indices(dims) -> np.ndarray:
    """Linear indices of |00>, |01>, |10>, |11> in that order."""
    return np.array([tensor_index(m, n, dims) for m, n in QUBIT_LABELS])


def basis_state(m: int, n: int, dims) -> np.ndarray:
    dims = as_dims(dims)
    psi = np.zeros(dims.total, dtype=complex)
    psi[tensor_index(m, n, dims)] = 1.0
    return psi


def embed_qubit_state(c, dims) -> np.ndarray:
    """Place amplitudes (c00, c01, c10, c11) into the full two-mode basis."""
    dims = as_dims(dims)
    psi = np.zeros(dims.total, dtype=complex)
    psi[qubit_indices(dims)] = np.asarray(c, dtype=complex)
    return psi


def _single_mode_annihilation(dim: int) -> np.ndarray:
    return np.diag(np.sqrt(np.arange(1, dim, dtype=float)), k=1).astype(complex)


def annihilation_matrix(dims, mode: Mode) -> np.ndarray:
    """Matrix of a (x) 1 or 1 (x) b in the linearized basis.

    The creation operator is the conjugate transpose; it sends the top
    retained level to zero.
    """
    dims = as_dims(dims)
    if mode == "a":
        return np.kron(_single_mode_annihilation(dims.dim_a), np.eye(dims.dim_b))
    if mode == "b":
        return np.kron(np.eye(dims.dim_a), _single_mode_annihilation(dims.dim_b))
    raise ValueError(f"mode must be 'a' or 'b', got {mode!r}")


def number_matrix(dims, mode: Mode) -> np.ndarray:
    """Diagonal photon-number operator of one mode."""
    dims = as_dims(dims)
    if mode == "a":
        counts = np.repeat(np.arange(dims.dim_a), dims.dim_b)
    elif mode == "b":
        counts = np.tile(np.arange(dims.dim_b), dims.dim_a)
    else:
        raise ValueError(f"mode must be 'a' or 'b', got {mode!r}")
    return np.diag(counts.astype(complex))


def density_matrix(psi: np.ndarray) -> np.ndarray:
    psi = np.asarray(psi)
    return np.outer(psi, psi.conj())


def partial_trace(rho: np.ndarray, dims, keep: Mode) -> np.ndarray:
    """Reduced density matrix of the kept mode."""
    dims = as_dims(dims)
    rho = np.asarray(rho).reshape(dims.dim_a, dims.dim_b, dims.dim_a, dims.dim_b)
    if keep == "a":
        return np.einsum("ijkj->ik", rho)
    if keep == "b":
        return np.einsum("ijil->jl", rho)
    raise ValueError(f"keep must be 'a' or 'b', got {keep!r}")


def random_density_matrix(dim: int, rng=None, rank=None) -> np.ndarray:
    """Random density matrix from the Ginibre ensemble."""
    rng = np.random.default_rng(rng)
    rank = dim if rank is None else rank
    g = rng.normal(size=(dim, rank)) + 1j * rng.normal(size=(dim, rank))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


def random_pure_state(dim: int, rng=None) -> np.ndarray:
    rng = np.random.default_rng(rng)
    psi = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    return psi / np.linalg.norm(psi)
