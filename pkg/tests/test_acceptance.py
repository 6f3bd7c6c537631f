"""Acceptance suite: one test (or small group) per criterion.

Run ``pytest tests/test_acceptance.py`` and read the "acceptance criteria"
section at the end of the report for the per-criterion verdicts.
"""
import numpy as np
import pytest

from kerrscissors import analytic, config, experiments
from kerrscissors.analytic import INITIAL_LABELS
from kerrscissors.dynamics import TimeGrid, propagate
from kerrscissors.fock import FockDims, basis_state, qubit_indices, random_density_matrix, random_pure_state
from kerrscissors.hamiltonian import SystemParams, build_h1
from kerrscissors.lindblad import DissipationKind, solve_master
from kerrscissors.measures import (
    entanglement_of_formation,
    entropy_from_amplitudes,
    entropy_of_entanglement,
    fidelity,
    pure_fidelity,
)

from conftest import ALPHA, CHI, random_times, truncated_ode_oracle

C1 = "peak entanglement values at t(m,n) and t(1,1) in seconds"
C2 = "truncation fidelity bounds at dims (20,20)"
C3 = "Bell probability ceiling of |b3|^2, |b4|^2 for alpha = epsilon"
C4 = "closed forms vs independent ODE integration (1e-8)"
C5 = "measure cross-checks on 1000 random states (1e-10)"
C6 = "conservation on all preset runs"
C7 = "symmetries and structural identities"
C8 = "dissipation ordering and unitary limit"
C9 = "dephasing leaves Fock populations fixed"

DISSIPATIVE_PRESETS = ("fig8", "fig9", "fig10", "fig11")
UNITARY_PRESETS = [n for n, d in config.PRESETS.items() if d["experiment"] not in ("dissipative", "eit_estimate")]


@pytest.fixture(scope="session")
def dissipative_results():
    """Master-equation preset runs, shared by criteria 6 and 8."""
    return {name: experiments.run(config.preset(name)) for name in DISSIPATIVE_PRESETS}


def _peak(result, column):
    return float(np.max(result.column(column)))


# 1 -------------------------------------------------------------------------

PEAKS = {(1, 1): 0.994, (1, 2): 0.997, (2, 3): 0.992, (2, 4): 0.998}


@pytest.mark.criterion(1, C1)
def test_c1_peak_entropies(note):
    values = {mn: float(analytic.entropy_equal_coupling(ALPHA, analytic.peak_time(*mn, ALPHA))) for mn in PEAKS}
    note(", ".join(f"E{mn}={v:.4f}" for mn, v in values.items()))
    for mn, expected in PEAKS.items():
        assert values[mn] == pytest.approx(expected, abs=0.002)


@pytest.mark.criterion(1, C1)
def test_c1_peak_time_in_seconds(note):
    # chi = 1e8 rad/s, alpha = chi/200: t(1,1) = 4.5 pi / alpha
    t11 = analytic.peak_time(1, 1, ALPHA)
    note(f"t(1,1)={t11:.4g} s, target 4.5e-6 s +/- 2%")
    assert t11 == pytest.approx(4.5e-6, rel=0.02)


# 2 -------------------------------------------------------------------------


@pytest.mark.criterion(2, C2)
def test_c2_fidelity_bounds(note):
    a = experiments.run(config.preset("fig2a"))
    b = experiments.run(config.preset("fig2b"))
    assert tuple(a.config.dims) == (20, 20) and a.config.grid.t_end == 5e-6
    loss_a = 1 - a.column("F[beta=alpha]").min()
    loss_b = 1 - b.column("F[beta=i*alpha]").min()
    note(f"beta=alpha, eps=alpha: max 1-F={loss_a:.3g}; beta=i alpha, eps=alpha/10: max 1-F={loss_b:.3g}")
    assert loss_a < 0.03
    assert loss_b < 6e-4


# 3 -------------------------------------------------------------------------


@pytest.mark.criterion(3, C3)
def test_c3_bell_ceiling(note):
    res = experiments.run(config.preset("fig5"))
    assert res.config.grid.t_end == pytest.approx(analytic.slow_period(ALPHA))
    b3, b4 = _peak(res, "b3_sq"), _peak(res, "b4_sq")
    note(f"max|b3|^2={b3:.4f}, max|b4|^2={b4:.4f}")
    for value in (b3, b4):
        assert value == pytest.approx(0.80, abs=0.05)
        assert value <= 0.9


# 4 -------------------------------------------------------------------------


def _unit(label):
    return np.eye(4)[INITIAL_LABELS.index(label)]


def _oracle_cases():
    """(beta/alpha, epsilon/alpha, initial, closed form of t)."""
    single, pair = analytic.single_pump_amplitudes, analytic.two_pump_amplitudes
    cases = [(0.0, r, "00", lambda t, r=r: single(ALPHA, r * ALPHA, t)) for r in (1.0, 0.1, 0.5, 2.0)]
    cases.append((0.0, 1.0, "00", lambda t: analytic.equal_coupling_amplitudes(ALPHA, t)))
    cases += [(0.0, 1.0, k, lambda t, k=k: single(ALPHA, ALPHA, t, k)) for k in ("01", "10", "11")]
    for r in (1.0, 0.1):
        cases += [(1.0, r, k, lambda t, r=r, k=k: pair(ALPHA, r * ALPHA, t, k)) for k in INITIAL_LABELS]
    return cases


@pytest.mark.criterion(4, C4)
def test_c4_closed_forms_vs_ode(rng, note):
    worst = 0.0
    for beta_ratio, eps_ratio, label, closed in _oracle_cases():
        t = random_times(rng)
        ref = truncated_ode_oracle(ALPHA, beta_ratio * ALPHA, eps_ratio * ALPHA, _unit(label), t)
        worst = max(worst, float(np.max(np.abs(closed(t).as_array() - ref))))
    note(f"max deviation {worst:.2e} over {len(_oracle_cases())} cases x 100 times")
    assert worst < 1e-8


# 5 -------------------------------------------------------------------------


@pytest.mark.criterion(5, C5)
def test_c5_measure_cross_checks(rng, note):
    dev_e = dev_ef = dev_f = 0.0
    for _ in range(1000):
        c = random_pure_state(4, rng)
        e = entropy_of_entanglement(c)
        dev_e = max(dev_e, abs(e - entropy_from_amplitudes(c)))
        dev_ef = max(dev_ef, abs(entanglement_of_formation(np.outer(c, c.conj())) - e))
        rho = random_density_matrix(4, rng)
        dev_f = max(dev_f, abs(fidelity(np.outer(c, c.conj()), rho) - pure_fidelity(c, rho)))
    note(f"E: {dev_e:.1e}, E_F: {dev_ef:.1e}, F: {dev_f:.1e}")
    assert dev_e < 1e-10 and dev_ef < 1e-10 and dev_f < 1e-10


# 6 -------------------------------------------------------------------------


@pytest.mark.criterion(6, C6)
def test_c6_unitary_presets_conserve_norm(note):
    worst = 0.0
    for name in UNITARY_PRESETS:
        res = experiments.run(config.preset(name))
        worst = max(worst, max(d["max_norm_drift"] for d in res.diagnostics.values()))
    note(f"{len(UNITARY_PRESETS)} presets, max norm drift {worst:.1e}")
    assert worst < 1e-10


@pytest.mark.criterion(6, C6)
def test_c6_master_presets_conserve_trace(dissipative_results, note):
    diags = [d for res in dissipative_results.values() for d in res.diagnostics.values()]
    trace = max(d["max_trace_drift"] for d in diags)
    herm = max(d["max_antihermitian"] for d in diags)
    floor = min(d["min_eigenvalue"] for d in diags)
    note(f"trace drift {trace:.1e}, anti-Hermitian {herm:.1e}, eigenvalue floor {floor:.1e}")
    assert trace < 1e-8 and herm < 1e-10 and floor >= -1e-6


# 7 -------------------------------------------------------------------------


@pytest.mark.criterion(7, C7)
def test_c7_entropy_symmetries(rng, note):
    t = random_times(rng, 500)
    e = {k: analytic.entropy_single_pump(ALPHA, ALPHA, t, k) for k in INITIAL_LABELS}
    d1 = np.max(np.abs(e["00"] - e["11"]))
    d2 = np.max(np.abs(e["01"] - e["10"]))
    note(f"|E00-E11|={d1:.1e}, |E01-E10|={d2:.1e}")
    assert d1 < 1e-12 and d2 < 1e-12


@pytest.mark.criterion(7, C7)
def test_c7_structural_identities(rng):
    t = random_times(rng, 500)
    for ratio in (1.0, 0.1, 3.0):
        c = analytic.two_pump_amplitudes(ALPHA, ratio * ALPHA, t)
        np.testing.assert_allclose(c.c01, c.c10, rtol=1e-9, atol=0)
        np.testing.assert_allclose(c.c11, c.c00 - 1, rtol=1e-9, atol=1e-15)
    for alpha, eps in rng.uniform(1e3, 1e7, size=(200, 2)):
        f = analytic.derived_frequencies(alpha, eps)
        assert (f.gamma_freq + eps) * f.omega_2 == pytest.approx((f.gamma_freq - eps) * f.omega_1, rel=1e-9)


# 8 -------------------------------------------------------------------------

GAMMAS = ("gamma=0", "gamma=chi/500", "gamma=chi/200")


@pytest.mark.criterion(8, C8)
def test_c8_monotone_degradation(dissipative_results, note):
    std, phase = dissipative_results["fig8"], dissipative_results["fig10"]
    p_std = [_peak(std, f"E_F[{g}]") for g in GAMMAS]
    p_phase = [_peak(phase, f"E_F[{g}]") for g in GAMMAS]
    note("standard " + "/".join(f"{v:.3f}" for v in p_std) + ", phase " + "/".join(f"{v:.3f}" for v in p_phase))
    assert p_std[0] > p_std[1] > p_std[2]
    assert p_phase[0] > p_phase[1] > p_phase[2]


@pytest.mark.criterion(8, C8)
def test_c8_phase_damping_is_gentler(dissipative_results):
    std, phase = dissipative_results["fig8"], dissipative_results["fig10"]
    for g in GAMMAS[1:]:
        assert _peak(phase, f"E_F[{g}]") > _peak(std, f"E_F[{g}]")


@pytest.mark.criterion(8, C8)
def test_c8_lossless_master_matches_pure_entropy(dissipative_results, note):
    cfg = config.preset("fig8")
    params = cfg.points()[0][1]
    assert params.gamma_a == params.gamma_b == 0
    traj = propagate(build_h1(params, cfg.dims), basis_state(0, 0, cfg.dims), cfg.grid)
    block = traj.states[:, qubit_indices(cfg.dims)]
    pure = np.array([entropy_from_amplitudes(c / np.linalg.norm(c)) for c in block])
    dev = np.max(np.abs(dissipative_results["fig8"].column("E_F[gamma=0]") - pure))
    note(f"max |E_F - E| = {dev:.1e}")
    assert dev < 1e-6


# 9 -------------------------------------------------------------------------


@pytest.mark.criterion(9, C9)
def test_c9_dephasing_invariant(rng, note):
    dims = FockDims(6, 6)
    params = SystemParams(chi_a=CHI, chi_b=CHI, gamma_a=CHI / 200, gamma_b=CHI / 500, nbar_a=1.0, nbar_b=0.1)
    rho0 = random_density_matrix(dims.total, rng)
    traj = solve_master(rho0, params, dims, DissipationKind.PHASE_DAMPING, TimeGrid(0.0, 2e-6, 21))
    pops = np.real(np.einsum("kii->ki", traj.states))
    dev = np.max(np.abs(pops - pops[0]))
    note(f"max population change {dev:.1e}")
    assert dev < 1e-8
