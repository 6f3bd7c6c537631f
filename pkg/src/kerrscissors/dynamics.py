"""Exact unitary propagation under a time-independent Hamiltonian."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NumericalError
from .fock import as_dims, qubit_indices

NORM_TOL = 1e-10


@dataclass(frozen=True)
class TimeGrid:
    """Evenly spaced evaluation times in seconds."""

    t_start: float
    t_end: float
    n_points: int

    def __post_init__(self):
        if int(self.n_points) != self.n_points or self.n_points < 1:
            raise ValueError(f"n_points must be a positive integer, got {self.n_points!r}")
        if not self.t_start <= self.t_end:
            raise ValueError("t_start must not exceed t_end")
        if self.n_points > 1 and self.t_start == self.t_end:
            raise ValueError("a grid with several points needs t_end > t_start")

    @property
    def points(self) -> np.ndarray:
        return np.linspace(self.t_start, self.t_end, int(self.n_points))


@dataclass
class Trajectory:
    """Per-time-point states (vectors or density matrices)."""

    times: np.ndarray
    states: np.ndarray

    def __post_init__(self):
        if len(self.times) != len(self.states):
            raise ValueError("times and states must have the same length")

    def __len__(self):
        return len(self.times)


def _as_times(grid) -> np.ndarray:
    if isinstance(grid, TimeGrid):
        return grid.points
    return np.atleast_1d(np.asarray(grid, dtype=float))


class Propagator:
    """exp(-i H t) from a single eigendecomposition of H.

    Instances are immutable after construction, so ``evolve`` may be called
    from several threads at once.
    """

    def __init__(self, h: np.ndarray):
        h = np.asarray(h, dtype=complex)
        if np.max(np.abs(h - h.conj().T), initial=0.0) > 1e-12 * max(1.0, np.abs(h).max()):
            raise ValueError("Hamiltonian is not Hermitian")
        try:
            self.energies, self.eigvecs = np.linalg.eigh(h)
        except np.linalg.LinAlgError as exc:
            raise NumericalError(f"eigendecomposition of H failed: {exc}") from exc

    def evolve(self, psi0: np.ndarray, times) -> np.ndarray:
        """States at each time, shape (len(times), dim)."""
        times = np.atleast_1d(np.asarray(times, dtype=float))
        coeffs = self.eigvecs.conj().T @ np.asarray(psi0, dtype=complex)
        phases = np.exp(-1j * np.outer(times, self.energies))
        return (phases * coeffs) @ self.eigvecs.T


def propagate(h1: np.ndarray, psi0: np.ndarray, grid) -> Trajectory:
    """Pure-state trajectory psi(t_k) = exp(-i h1 t_k) psi0."""
    psi0 = np.asarray(psi0, dtype=complex)
    if abs(np.linalg.norm(psi0) - 1) > NORM_TOL:
        raise ValueError("initial state is not normalized")
    times = _as_times(grid)
    states = Propagator(h1).evolve(psi0, times)
    drift = np.abs(np.linalg.norm(states, axis=1) - 1)
    if drift.max(initial=0.0) > NORM_TOL:
        k = int(np.argmax(drift))
        raise NumericalError(f"norm drift {drift[k]:.2e} exceeds {NORM_TOL}", times[k])
    return Trajectory(times, states)


def leaked_probability(state: np.ndarray, dims) -> float:
    """Probability outside span{|00>, |01>, |10>, |11>}."""
    state = np.asarray(state)
    kept = np.sum(np.abs(state[qubit_indices(as_dims(dims))]) ** 2)
    total = np.sum(np.abs(state) ** 2)
    return float(min(max(total - kept, 0.0), 1.0))
