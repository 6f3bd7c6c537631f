"""Kerr nonlinearity achievable in a resonantly enhanced EIT medium."""
from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple


@dataclass(frozen=True)
class EitParams:
    """Four-level-atom parameters (all rates in rad/s).

    ``g13`` and ``g24`` are the atom-field coupling coefficients, ``rabi``
    the Rabi frequency of the classical coupling field, ``detuning`` the
    detuning of the 2-4 transition and ``n_atom`` the number of atoms.
    """

    g13: complex
    g24: complex
    rabi: float
    detuning: float
    n_atom: float = 1.0

    def __post_init__(self):
        if self.rabi == 0:
            raise ValueError("rabi frequency must be nonzero")
        if self.detuning == 0:
            raise ValueError("detuning must be nonzero")
        if self.n_atom < 1:
            raise ValueError(f"n_atom must be >= 1, got {self.n_atom!r}")


class KerrEstimate(NamedTuple):
    chi: float
    adiabatic_ok: bool


def kerr_estimate(p: EitParams) -> KerrEstimate:
    """chi from 2 chi = 3 |g13|^2 |g24|^2 n_atom / (rabi^2 detuning).

    The relation is an order-of-magnitude one.  ``adiabatic_ok`` reports
    whether |g13|^2 n_atom / rabi^2 < 1, the condition for eliminating
    the atomic levels.
    """
    g13, g24 = abs(p.g13) ** 2, abs(p.g24) ** 2
    chi = 3 * g13 * g24 * p.n_atom / (p.rabi**2 * p.detuning) / 2
    return KerrEstimate(float(chi), bool(g13 * p.n_atom / p.rabi**2 < 1))
