"""Interaction-picture Hamiltonian of the pumped Kerr coupler.

    H1 = chi_a/2 a+^2 a^2 + chi_b/2 b+^2 b^2
         + eps a+ b + eps* a b+ + alpha a+ + alpha* a + beta b+ + beta* b

Setting ``beta = 0`` gives the coupler pumped in mode a only.  All rates are
angular frequencies in rad/s (hbar = 1).
"""
from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .fock import annihilation_matrix, as_dims


@dataclass(frozen=True)
class SystemParams:
    """Physical constants of the coupler and its reservoirs.

    ``chi_*``, ``alpha``, ``beta``, ``epsilon`` and ``gamma_*`` are in rad/s;
    ``nbar_*`` are mean thermal photon numbers.
    """

    chi_a: float = 1e8
    chi_b: float = 1e8
    alpha: complex = 0.0
    beta: complex = 0.0
    epsilon: complex = 0.0
    gamma_a: float = 0.0
    gamma_b: float = 0.0
    nbar_a: float = 0.0
    nbar_b: float = 0.0

    def __post_init__(self):
        for name in ("chi_a", "chi_b", "gamma_a", "gamma_b", "nbar_a", "nbar_b"):
            value = getattr(self, name)
            if not np.isfinite(value) or value < 0:
                raise ValueError(f"{name} must be finite and >= 0, got {value!r}")
        for name in ("alpha", "beta", "epsilon"):
            if not np.isfinite(complex(getattr(self, name))):
                raise ValueError(f"{name} must be finite")

    def replace(self, **changes) -> "SystemParams":
        return replace(self, **changes)


def build_h1(params: SystemParams, dims) -> np.ndarray:
    """Dense Hermitian matrix of H1 over the truncated basis."""
    dims = as_dims(dims)
    a = annihilation_matrix(dims, "a")
    b = annihilation_matrix(dims, "b")
    ad, bd = a.conj().T, b.conj().T
    alpha, beta, eps = complex(params.alpha), complex(params.beta), complex(params.epsilon)

    h = (params.chi_a / 2) * (ad @ ad @ a @ a) + (params.chi_b / 2) * (bd @ bd @ b @ b)
    h = h + eps * (ad @ b) + np.conj(eps) * (a @ bd)
    h = h + alpha * ad + np.conj(alpha) * a + beta * bd + np.conj(beta) * b
    h = 0.5 * (h + h.conj().T)
    assert np.array_equal(h, h.conj().T)
    return h


def amplitude_rhs(params: SystemParams, dims, c: np.ndarray) -> np.ndarray:
    """dc/dt for the Fock amplitudes c_mn, written term by term.

    This evaluates the coupled amplitude equations directly on the
    (dim_a, dim_b) grid of amplitudes rather than through ``build_h1``.
    """
    dims = as_dims(dims)
    grid = np.asarray(c, dtype=complex).reshape(dims.dim_a, dims.dim_b)
    m = np.arange(dims.dim_a)[:, None].astype(float)
    n = np.arange(dims.dim_b)[None, :].astype(float)
    alpha, beta, eps = complex(params.alpha), complex(params.beta), complex(params.epsilon)

    # Kerr diagonal (chi/2) m(m-1), the matrix element of (chi/2) a^2+ a^2
    out = 0.5 * (params.chi_a * m * (m - 1) + params.chi_b * n * (n - 1)) * grid

    # eps c_{m-1,n+1} sqrt(m(n+1))
    out[1:, :-1] += eps * grid[:-1, 1:] * np.sqrt(m[1:] * (n[:, :-1] + 1))
    # eps* c_{m+1,n-1} sqrt((m+1)n)
    out[:-1, 1:] += np.conj(eps) * grid[1:, :-1] * np.sqrt((m[:-1] + 1) * n[:, 1:])
    # alpha c_{m-1,n} sqrt(m) + alpha* c_{m+1,n} sqrt(m+1)
    out[1:, :] += alpha * grid[:-1, :] * np.sqrt(m[1:])
    out[:-1, :] += np.conj(alpha) * grid[1:, :] * np.sqrt(m[:-1] + 1)
    # beta c_{m,n-1} sqrt(n) + beta* c_{m,n+1} sqrt(n+1)
    out[:, 1:] += beta * grid[:, :-1] * np.sqrt(n[:, 1:])
    out[:, :-1] += np.conj(beta) * grid[:, 1:] * np.sqrt(n[:, :-1] + 1)

    return -1j * out.reshape(-1)
