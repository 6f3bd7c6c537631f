"""Master-equation evolution with standard damping or phase damping.

    d rho/dt = -i [H1, rho] + L(rho)

Standard damping (thermal photon loss/gain with mean occupation nbar)::

    L = sum_k gamma_k (nbar_k + 1) D[a_k] + gamma_k nbar_k D[a_k^+]

which equals ``gamma/2 ([a rho, a+] + [a, rho a+]) + gamma nbar [[a, rho], a+]``
for untruncated modes.  Phase damping::

    L = sum_k gamma_k/2 (2 nbar_k + 1) (2 n_k rho n_k - n_k^2 rho - rho n_k^2)

with ``D[L] rho = L rho L+ - {L+ L, rho}/2``.
"""
from __future__ import annotations

import enum

import numpy as np
import scipy.sparse
from scipy.integrate import DOP853

from .dynamics import TimeGrid, Trajectory, _as_times
from .errors import IntegrationError, NumericalError
from .fock import annihilation_matrix, as_dims, number_matrix
from .hamiltonian import SystemParams, build_h1

TRACE_TOL = 1e-8
HERMITIAN_TOL = 1e-10
EIGEN_FLOOR = -1e-6


class DissipationKind(str, enum.Enum):
    STANDARD_DAMPING = "standard_damping"
    PHASE_DAMPING = "phase_damping"


class Liouvillian:
    """Right-hand side of the master equation with operators precomputed.

    Jump terms a rho a^+ and a^+ rho a are shifted, weighted slices of rho
    in its (m, n, m', n') view, so only the Hamiltonian part needs a
    matrix product.
    """

    def __init__(self, params: SystemParams, dims, kind=DissipationKind.STANDARD_DAMPING):
        self.params = params
        self.dims = as_dims(dims)
        self.kind = DissipationKind(kind)
        h = build_h1(params, self.dims)

        # (rate, axis, raising) for standard damping; the anti-commutator
        # parts are folded into an effective non-Hermitian Hamiltonian.
        self.jumps = []
        self.dephasing = np.zeros((self.dims.total, self.dims.total))
        decay = np.zeros(self.dims.total)
        modes = (("a", 0, params.gamma_a, params.nbar_a), ("b", 1, params.gamma_b, params.nbar_b))
        for mode, axis, gamma, nbar in modes:
            if gamma == 0:
                continue
            n = np.diag(number_matrix(self.dims, mode)).real
            dim = (self.dims.dim_a, self.dims.dim_b)[axis]
            if self.kind is DissipationKind.STANDARD_DAMPING:
                self.jumps.append((gamma * (nbar + 1), axis, False))
                decay += gamma * (nbar + 1) * n
                if nbar > 0:
                    self.jumps.append((gamma * nbar, axis, True))
                    # a a^+ = n + 1 except on the top retained level
                    decay += gamma * nbar * np.where(n < dim - 1, n + 1, 0.0)
            else:
                rate = gamma * (2 * nbar + 1)
                self.dephasing += rate * np.outer(n, n)
                decay += rate * n**2
        self.h = h
        self.k_eff = h - 0.5j * np.diag(decay)
        # H1 has at most seven nonzeros per row
        self._k_sparse = scipy.sparse.csr_matrix(self.k_eff)
        self._shape = (self.dims.dim_a, self.dims.dim_b, self.dims.dim_a, self.dims.dim_b)
        self._weights = []
        for rate, axis, _ in self.jumps:
            w = np.sqrt(np.arange(1, self._shape[axis]))
            if axis == 0:
                self._weights.append(rate * w[:, None, None, None] * w[None, None, :, None])
            else:
                self._weights.append(rate * w[None, :, None, None] * w[None, None, None, :])

    def __call__(self, rho: np.ndarray, assume_hermitian: bool = False) -> np.ndarray:
        k_rho = self._k_sparse @ rho
        # for Hermitian rho, rho K^+ = (K rho)^+
        right = k_rho.conj().T if assume_hermitian else (self._k_sparse @ rho.conj().T).conj().T
        out = -1j * (k_rho - right)
        if self.jumps:
            r = rho.reshape(self._shape)
            acc = out.reshape(self._shape)
            for (_, axis, raising), weight in zip(self.jumps, self._weights):
                # a r a^+ (lowering) or a^+ r a (raising) as shifted slices
                if axis == 0:
                    if raising:
                        acc[1:, :, 1:, :] += weight * r[:-1, :, :-1, :]
                    else:
                        acc[:-1, :, :-1, :] += weight * r[1:, :, 1:, :]
                elif raising:
                    acc[:, 1:, :, 1:] += weight * r[:, :-1, :, :-1]
                else:
                    acc[:, :-1, :, :-1] += weight * r[:, 1:, :, 1:]
        if self.kind is DissipationKind.PHASE_DAMPING:
            out += self.dephasing * rho
        return out

    def dense_jump_operators(self):
        """(rate, L) pairs of the equivalent dense Lindblad form."""
        ops = []
        if self.kind is DissipationKind.STANDARD_DAMPING:
            for rate, axis, raising in self.jumps:
                a = annihilation_matrix(self.dims, "ab"[axis])
                ops.append((rate, a.conj().T if raising else a))
        else:
            p = self.params
            for mode, gamma, nbar in (("a", p.gamma_a, p.nbar_a), ("b", p.gamma_b, p.nbar_b)):
                if gamma:
                    ops.append((gamma * (2 * nbar + 1), number_matrix(self.dims, mode)))
        return ops


def liouvillian_rhs(rho: np.ndarray, params: SystemParams, kind, dims=None) -> np.ndarray:
    """d rho/dt for a single density matrix.

    ``dims`` defaults to two equal modes inferred from the matrix size.
    """
    rho = np.asarray(rho, dtype=complex)
    if dims is None:
        side = int(round(np.sqrt(rho.shape[0])))
        if side * side != rho.shape[0]:
            raise ValueError("pass dims explicitly for unequal mode truncations")
        dims = (side, side)
    return Liouvillian(params, dims, kind)(rho)


def printed_standard_rhs(rho: np.ndarray, params: SystemParams, dims) -> np.ndarray:
    """Standard-damping RHS transcribed with explicit commutators.

    Used to cross-check :class:`Liouvillian` away from the truncation edge.
    """
    dims = as_dims(dims)
    h = build_h1(params, dims)

    def comm(x, y):
        return x @ y - y @ x

    out = -1j * comm(h, rho)
    for mode, gamma, nbar in (("a", params.gamma_a, params.nbar_a), ("b", params.gamma_b, params.nbar_b)):
        a = annihilation_matrix(dims, mode)
        ad = a.conj().T
        out += gamma / 2 * (comm(a @ rho, ad) + comm(a, rho @ ad))
        out += gamma * nbar * comm(comm(a, rho), ad)
    return out


def _hermitize(rho):
    return 0.5 * (rho + rho.conj().T)


def check_density_matrix(rho, time=None, trace_tol=TRACE_TOL, floor=EIGEN_FLOOR):
    """Raise NumericalError unless rho is Hermitian, unit-trace and (numerically) PSD."""
    herm = np.max(np.abs(rho - rho.conj().T))
    if herm > HERMITIAN_TOL:
        raise NumericalError(f"density matrix not Hermitian ({herm:.2e})", time)
    trace_dev = abs(np.trace(rho) - 1)
    if trace_dev > trace_tol:
        raise NumericalError(f"trace drifted by {trace_dev:.2e}", time)
    lowest = np.linalg.eigvalsh(rho).min()
    if lowest < floor:
        raise NumericalError(f"negative eigenvalue {lowest:.2e}", time)


def solve_master(
    rho0: np.ndarray,
    params: SystemParams,
    dims,
    kind=DissipationKind.STANDARD_DAMPING,
    grid=None,
    tol: float = 1e-9,
    atol: float = 1e-12,
) -> Trajectory:
    """Integrate the master equation and return rho at every grid time.

    Uses an adaptive 8(5,3) Dormand-Prince scheme acting on the density
    matrix directly.  The derivative is Hermitized before every stage and
    the reported states are Hermitized as well.
    """
    dims = as_dims(dims)
    if grid is None:
        raise ValueError("grid is required")
    times = _as_times(grid)
    if np.any(np.diff(times) <= 0):
        raise ValueError("grid times must be strictly increasing")
    rho0 = _hermitize(np.asarray(rho0, dtype=complex))
    if rho0.shape != (dims.total, dims.total):
        raise ValueError(f"rho0 has shape {rho0.shape}, expected {(dims.total,) * 2}")
    check_density_matrix(rho0, times[0])

    liouv = Liouvillian(params, dims, kind)
    d = dims.total

    def fun(_t, y):
        return _hermitize(liouv(y.reshape(d, d), assume_hermitian=True)).reshape(-1)

    states = np.empty((len(times), d, d), dtype=complex)
    states[0] = rho0
    if len(times) > 1:
        scale = max(np.abs(liouv.k_eff).max(), 1.0)
        solver = DOP853(
            fun,
            times[0],
            rho0.reshape(-1),
            times[-1],
            rtol=tol,
            atol=atol,
            first_step=min(0.1 / scale, times[-1] - times[0]),
        )
        k = 1
        while k < len(times):
            if solver.status != "running":
                break
            t_prev = solver.t
            message = solver.step()
            if solver.status == "failed":
                raise IntegrationError(f"integration failed: {message}", t_prev)
            if solver.t > t_prev:
                dense = solver.dense_output()
                while k < len(times) and times[k] <= solver.t:
                    states[k] = _hermitize(dense(times[k]).reshape(d, d))
                    k += 1
        if k < len(times):
            raise IntegrationError("integration stopped early", solver.t)

    for t, rho in zip(times, states):
        check_density_matrix(rho, t)
    return Trajectory(times, states)


def pure_initial_state(psi: np.ndarray) -> np.ndarray:
    psi = np.asarray(psi, dtype=complex)
    return np.outer(psi, psi.conj())


__all__ = [
    "DissipationKind",
    "Liouvillian",
    "TimeGrid",
    "check_density_matrix",
    "liouvillian_rhs",
    "printed_standard_rhs",
    "solve_master",
]
