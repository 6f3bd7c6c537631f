"""Closed-form dynamics of the truncated two-qubit coupler.

Inside span{|00>, |01>, |10>, |11>} the amplitudes obey four linear ODEs.
For real couplings with either a single pump (beta = 0) or equal pumps
(beta = alpha) they integrate in closed form; this module collects those
solutions together with the corresponding entropies of entanglement.

Public functions take physical time ``t`` in seconds (scalar or array).
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import UnsupportedRegimeError
from .hamiltonian import SystemParams
from .measures import cal_e, entropy_from_amplitudes

SQRT5 = np.sqrt(5.0)
INITIAL_LABELS = ("00", "01", "10", "11")


@dataclass(frozen=True)
class TruncatedQubitPair:
    """Amplitudes of c00|00> + c01|01> + c10|10> + c11|11>.

    Fields may be scalars or equally shaped arrays (one entry per time).
    """

    c00: complex
    c01: complex
    c10: complex
    c11: complex

    def as_array(self) -> np.ndarray:
        """Shape (4,) or (4, n_times)."""
        return np.array([self.c00, self.c01, self.c10, self.c11], dtype=complex)

    @classmethod
    def from_array(cls, c) -> "TruncatedQubitPair":
        c00, c01, c10, c11 = np.asarray(c, dtype=complex)
        return cls(c00, c01, c10, c11)

    @property
    def norm2(self):
        return np.sum(np.abs(self.as_array()) ** 2, axis=0)


@dataclass(frozen=True)
class DerivedFrequencies:
    """Characteristic frequencies of the single-pump solution (rad/s)."""

    gamma_freq: float
    omega_1: float
    omega_2: float
    lam: float


def derived_frequencies(alpha: float, epsilon: float) -> DerivedFrequencies:
    alpha, epsilon = _real(alpha, "alpha"), _real(epsilon, "epsilon")
    g = np.sqrt(4 * alpha**2 + epsilon**2)
    # take the larger root directly; omega_1 omega_2 = 4 alpha^2 gives the
    # smaller one without cancellation
    big, small = (1, 2) if epsilon >= 0 else (2, 1)
    om = {big: np.sqrt(2 * (2 * alpha**2 + epsilon**2 + abs(epsilon) * g))}
    om[small] = 4 * alpha**2 / om[big] if om[big] > 0 else 0.0
    om1, om2 = om[1], om[2]
    return DerivedFrequencies(g, om1, om2, np.sqrt(16 * alpha**2 + epsilon**2))


def _real(value, name):
    value = complex(value)
    if value.imag != 0:
        raise UnsupportedRegimeError(f"closed forms need real {name}; use the numeric path")
    return value.real


def _label(initial) -> str:
    if not isinstance(initial, str):
        initial = "".join(str(int(k)) for k in initial)
    if initial not in INITIAL_LABELS:
        raise ValueError(f"initial state must be one of {INITIAL_LABELS}, got {initial!r}")
    return initial


def _require_equal(alpha, epsilon):
    if not np.isclose(alpha, epsilon, rtol=1e-12, atol=0.0):
        raise UnsupportedRegimeError(
            "closed forms for initial one-photon states need alpha == epsilon"
        )


def truncated_generator(params: SystemParams) -> np.ndarray:
    """Matrix M with i dc/dt = M c in the (c00, c01, c10, c11) basis."""
    a, b, e = complex(params.alpha), complex(params.beta), complex(params.epsilon)
    ac, bc, ec = np.conj(a), np.conj(b), np.conj(e)
    return np.array(
        [
            [0, bc, ac, 0],
            [b, 0, ec, ac],
            [a, e, 0, bc],
            [0, a, b, 0],
        ],
        dtype=complex,
    )


def truncated_ode_rhs(params: SystemParams, c: TruncatedQubitPair) -> TruncatedQubitPair:
    """Time derivatives of the four truncated amplitudes."""
    a, b, e = complex(params.alpha), complex(params.beta), complex(params.epsilon)
    return TruncatedQubitPair(
        c00=-1j * (np.conj(a) * c.c10 + np.conj(b) * c.c01),
        c01=-1j * (np.conj(e) * c.c10 + np.conj(a) * c.c11 + b * c.c00),
        c10=-1j * (e * c.c01 + a * c.c00 + np.conj(b) * c.c11),
        c11=-1j * (a * c.c01 + b * c.c10),
    )


def _vacuum_single_pump(alpha, epsilon, t):
    if alpha == 0:
        one = np.ones_like(t, dtype=complex)
        return TruncatedQubitPair(one, 0 * one, 0 * one, 0 * one)
    f = derived_frequencies(alpha, epsilon)
    g, om1, om2 = f.gamma_freq, f.omega_1, f.omega_2
    tau1, tau2 = om1 * t / 2, om2 * t / 2
    return TruncatedQubitPair(
        c00=((g - epsilon) * np.cos(tau1) + (g + epsilon) * np.cos(tau2)) / (2 * g) + 0j,
        c01=alpha / g * (np.cos(tau1) - np.cos(tau2)) + 0j,
        c10=-1j * (g + epsilon) * om2 / (4 * alpha * g) * (np.sin(tau1) + np.sin(tau2)),
        c11=-1j / (2 * g) * (om2 * np.sin(tau1) - om1 * np.sin(tau2)),
    )


def equal_coupling_amplitudes(alpha: float, t) -> TruncatedQubitPair:
    """Vacuum evolution for alpha == epsilon, with tau = alpha t / 2."""
    tau = _real(alpha, "alpha") * np.asarray(t, dtype=float) / 2
    s5, c5 = np.sin(SQRT5 * tau), np.cos(SQRT5 * tau)
    return TruncatedQubitPair(
        c00=c5 * np.cos(tau) + s5 * np.sin(tau) / SQRT5 + 0j,
        c01=-2 / SQRT5 * s5 * np.sin(tau) + 0j,
        c10=-2j / SQRT5 * s5 * np.cos(tau),
        c11=-1j * c5 * np.sin(tau) + 1j / SQRT5 * s5 * np.cos(tau),
    )


def _tilde_single_pump(alpha, t):
    tau = alpha * np.asarray(t, dtype=float) / 2
    s5, c5 = np.sin(SQRT5 * tau), np.cos(SQRT5 * tau)
    t00 = c5 * np.cos(tau) - s5 * np.sin(tau) / SQRT5 + 0j
    t11 = -1j * c5 * np.sin(tau) - 1j / SQRT5 * s5 * np.cos(tau)
    return t00, t11


def _from_fock(initial, c: TruncatedQubitPair, t00, t11) -> TruncatedQubitPair:
    """Arrange vacuum and tilde amplitudes for the initial state |kl>."""
    if initial == "00":
        return c
    if initial == "01":
        return TruncatedQubitPair(c.c01, t00, t11, c.c10)
    if initial == "10":
        return TruncatedQubitPair(c.c10, t11, t00, c.c01)
    return TruncatedQubitPair(c.c11, c.c10, c.c01, c.c00)


def single_pump_amplitudes(alpha: float, epsilon: float, t, initial="00") -> TruncatedQubitPair:
    """Truncated state of the coupler pumped in mode a only (beta = 0).

    From vacuum any real alpha, epsilon is allowed.  Initial states with
    one photon are covered only for alpha == epsilon.
    """
    alpha, epsilon = _real(alpha, "alpha"), _real(epsilon, "epsilon")
    initial = _label(initial)
    t = np.asarray(t, dtype=float)
    if initial == "00":
        return _vacuum_single_pump(alpha, epsilon, t)
    _require_equal(alpha, epsilon)
    c = equal_coupling_amplitudes(alpha, t)
    return _from_fock(initial, c, *_tilde_single_pump(alpha, t))


def _vacuum_two_pump(alpha, epsilon, t):
    lam = np.sqrt(16 * alpha**2 + epsilon**2)
    phase = np.exp(-1j * epsilon * t / 2)
    s, co = np.sin(lam * t / 2), np.cos(lam * t / 2)
    c00 = 0.5 * (1 + (co + 1j * epsilon / lam * s) * phase)
    c01 = -2j * alpha / lam * s * phase
    return TruncatedQubitPair(c00, c01, c01, c00 - 1)


def two_pump_amplitudes(alpha: float, epsilon: float, t, initial="00") -> TruncatedQubitPair:
    """Truncated state of the coupler with equal real pumps (beta = alpha)."""
    alpha, epsilon = _real(alpha, "alpha"), _real(epsilon, "epsilon")
    initial = _label(initial)
    t = np.asarray(t, dtype=float)
    if alpha == 0 and epsilon == 0:
        raise UnsupportedRegimeError("all couplings vanish")
    c = _vacuum_two_pump(alpha, epsilon, t)
    if initial == "00":
        return c
    lam = np.sqrt(16 * alpha**2 + epsilon**2)
    s, co = np.sin(lam * t / 2), np.cos(lam * t / 2)
    t00 = 0.5 * (np.exp(1j * epsilon * t) + np.exp(-1j * epsilon * t / 2) * (co - 1j * epsilon / lam * s))
    t11 = t00 - np.exp(1j * epsilon * t)
    return _from_fock(initial, c, t00, t11)


def numeric_truncated_amplitudes(params: SystemParams, t, initial="00") -> TruncatedQubitPair:
    """Exact exponential of the 4x4 truncated generator (any complex couplings)."""
    initial = _label(initial)
    t = np.asarray(t, dtype=float)
    w, v = scipy.linalg.eigh(truncated_generator(params))
    c0 = np.zeros(4, dtype=complex)
    c0[INITIAL_LABELS.index(initial)] = 1.0
    coeffs = v.conj().T @ c0
    phases = np.exp(-1j * np.multiply.outer(w, t))
    out = v @ (coeffs.reshape(4, *([1] * t.ndim)) * phases)
    return TruncatedQubitPair.from_array(out)


def truncated_state(params: SystemParams, t, initial="00") -> TruncatedQubitPair:
    """Ideal truncated amplitudes, closed form where one exists."""
    initial = _label(initial)
    couplings = [complex(params.alpha), complex(params.beta), complex(params.epsilon)]
    if all(c.imag == 0 for c in couplings):
        alpha, beta, eps = (c.real for c in couplings)
        if beta == 0 and alpha != 0 and (initial == "00" or np.isclose(alpha, eps, rtol=1e-12, atol=0)):
            return single_pump_amplitudes(alpha, eps, t, initial)
        if beta == alpha and alpha != 0:
            return two_pump_amplitudes(alpha, eps, t, initial)
    return numeric_truncated_amplitudes(params, t, initial)


def _map(func, t):
    t = np.asarray(t, dtype=float)
    out = np.array([func(x) for x in t.reshape(-1)])
    return out.reshape(t.shape) if t.ndim else float(out[0])


def entropy_single_pump(alpha: float, epsilon: float, t, initial="00"):
    """Entropy of entanglement (ebits) of the single-pump truncated state.

    Vacuum start: any real alpha, epsilon.  One-photon starts: alpha ==
    epsilon only.
    """
    alpha, epsilon = _real(alpha, "alpha"), _real(epsilon, "epsilon")
    initial = _label(initial)
    if initial == "00":
        if alpha == 0:
            return _map(lambda _: 0.0, t)
        f = derived_frequencies(alpha, epsilon)
        om = {1: f.omega_1, 2: f.omega_2}
        g = f.gamma_freq

        def arg(x):
            total = 0.0
            for j in (1, 2):
                total += (
                    om[j]
                    / g**2
                    * (epsilon * np.cos(om[3 - j] * x / 2) - (epsilon + (-1) ** j * g) * np.cos(om[j] * x / 2))
                    * np.sin(om[3 - j] * x / 2)
                )
            return cal_e(min(abs(total), 1.0))

        return _map(arg, t)

    _require_equal(alpha, epsilon)
    sign = (-1) ** (int(initial[0]) - int(initial[1]))

    def arg_kl(x):
        ax = alpha * x
        val = ((4 + np.cos(SQRT5 * ax)) * np.sin(ax) - sign * SQRT5 * np.cos(ax) * np.sin(SQRT5 * ax)) / 5
        return cal_e(min(abs(val), 1.0))

    return _map(arg_kl, t)


def entropy_equal_coupling(alpha: float, t):
    """Vacuum-start entropy for alpha == epsilon in its simplest form."""
    alpha = _real(alpha, "alpha")

    def arg(x):
        ax = alpha * x
        val = ((4 + np.cos(SQRT5 * ax)) * np.sin(ax) - SQRT5 * np.cos(ax) * np.sin(SQRT5 * ax)) / 5
        return cal_e(min(abs(val), 1.0))

    return _map(arg, t)


def entropy_two_pump(alpha: float, epsilon: float, t, initial="00"):
    """Entropy of entanglement (ebits) of the equal-pump truncated state.

    The vacuum start uses its closed form; other starts go through the
    amplitudes.
    """
    alpha, epsilon = _real(alpha, "alpha"), _real(epsilon, "epsilon")
    initial = _label(initial)
    if initial != "00":
        amps = two_pump_amplitudes(alpha, epsilon, t, initial).as_array()
        if amps.ndim == 1:
            return entropy_from_amplitudes(amps)
        return np.array([entropy_from_amplitudes(amps[:, k]) for k in range(amps.shape[1])])
    lam2 = 16 * alpha**2 + epsilon**2
    lam = np.sqrt(lam2)

    def arg(x):
        inner = 16 * alpha**2 + epsilon**2 * np.cos(lam * x) + 1j * epsilon * lam * np.sin(lam * x)
        return cal_e(min(0.5 * abs(1 - np.exp(-1j * epsilon * x) / lam2 * inner), 1.0))

    return _map(arg, t)


def entropy_two_pump_fock(alpha: float, epsilon: float, t, initial="00"):
    """Closed-form two-pump entropy for any initial |kl>, for comparison only.

    The bracket multiplies lambda^-2 exp(-i(2|k-l|+1) eps t) and its last
    term is added; with that reading it reproduces the amplitude route.
    """
    alpha, epsilon = _real(alpha, "alpha"), _real(epsilon, "epsilon")
    initial = _label(initial)
    k, l = int(initial[0]), int(initial[1])
    lam2 = 16 * alpha**2 + epsilon**2
    lam = np.sqrt(lam2)
    sign = (-1) ** (k - l)

    def arg(x):
        inner = 16 * alpha**2 + epsilon**2 * np.cos(lam * x) + sign * 1j * epsilon * lam * np.sin(lam * x)
        val = 0.5 * abs(1 - np.exp(-1j * (2 * abs(k - l) + 1) * epsilon * x) / lam2 * inner)
        return cal_e(min(val, 1.0))

    return _map(arg, t)


def peak_time(m: int, n: int, alpha: float) -> float:
    """Approximate time of an entanglement maximum for alpha == epsilon.

    ``t(m, n) = [(2m - 1) T1 + (2n - 1) T2] / 2`` with ``T1 = pi/|alpha|``
    (fast period) and ``T2 = 8 pi/|alpha|`` (slow modulation).
    """
    t1, t2 = fast_period(alpha), slow_period(alpha)
    return 0.5 * ((2 * m - 1) * t1 + (2 * n - 1) * t2)


def fast_period(alpha: float) -> float:
    return np.pi / abs(alpha)


def slow_period(alpha: float) -> float:
    return 8 * np.pi / abs(alpha)
