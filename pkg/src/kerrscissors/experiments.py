"""Experiment runners producing one table row per time point."""
from __future__ import annotations

import json
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import analytic
from .config import ExperimentConfig
from .dynamics import propagate
from .eit import kerr_estimate
from .errors import ConfigError, UnsupportedRegimeError
from .fock import basis_state, embed_qubit_state, qubit_indices
from .hamiltonian import SystemParams, build_h1
from .lindblad import solve_master
from .measures import (
    bell_decompose,
    entanglement_of_formation,
    entropy_from_amplitudes,
    project_two_qubit,
)


@dataclass
class Result:
    """Tabular output of one experiment run."""

    config: ExperimentConfig
    columns: list[str]
    rows: np.ndarray
    diagnostics: dict = field(default_factory=dict)

    def column(self, name: str) -> np.ndarray:
        return self.rows[:, self.columns.index(name)]


def _initial_label(cfg):
    return "".join(str(k) for k in cfg.initial_state)


def _pure_trajectory(cfg, params):
    psi0 = basis_state(*cfg.initial_state, cfg.dims)
    traj = propagate(build_h1(params, cfg.dims), psi0, cfg.grid)
    norms = np.linalg.norm(traj.states, axis=1)
    return traj, {"max_norm_drift": float(np.max(np.abs(norms - 1)))}


def _leakage(states, dims):
    kept = np.sum(np.abs(states[:, qubit_indices(dims)]) ** 2, axis=1)
    return np.clip(np.sum(np.abs(states) ** 2, axis=1) - kept, 0.0, 1.0)


def _reference(cfg, params, times):
    """Ideal truncated amplitudes, shape (4, n_times)."""
    return analytic.truncated_state(params, times, _initial_label(cfg)).as_array().reshape(4, -1)


def _fidelity_point(cfg, params):
    traj, diag = _pure_trajectory(cfg, params)
    ref = _reference(cfg, params, traj.times)
    overlap = np.einsum("ik,ki->k", ref.conj(), traj.states[:, qubit_indices(cfg.dims)])
    leak = _leakage(traj.states, cfg.dims)
    diag["max_leakage"] = float(leak.max())
    return {"F": np.abs(overlap) ** 2, "leakage": leak}, diag


def _closed_form_entropy(params: SystemParams, times, initial):
    couplings = [complex(params.alpha), complex(params.beta), complex(params.epsilon)]
    if all(c.imag == 0 for c in couplings) and couplings[0].real != 0:
        alpha, beta, eps = (c.real for c in couplings)
        try:
            if beta == 0:
                return analytic.entropy_single_pump(alpha, eps, times, initial)
            if beta == alpha:
                return analytic.entropy_two_pump(alpha, eps, times, initial)
        except UnsupportedRegimeError:
            pass
    # no closed form: entropy of the numerically exponentiated truncated model
    amps = analytic.numeric_truncated_amplitudes(params, times, initial).as_array().reshape(4, -1)
    return np.array([entropy_from_amplitudes(amps[:, k]) for k in range(amps.shape[1])])


def _projected_amplitudes(states, dims):
    block = states[:, qubit_indices(dims)]
    return block / np.linalg.norm(block, axis=1, keepdims=True)


def _entropy_point(cfg, params):
    traj, diag = _pure_trajectory(cfg, params)
    block = _projected_amplitudes(traj.states, cfg.dims)
    numeric = np.array([entropy_from_amplitudes(c) for c in block])
    closed = np.asarray(_closed_form_entropy(params, traj.times, _initial_label(cfg)), dtype=float)
    leak = _leakage(traj.states, cfg.dims)
    diag["max_leakage"] = float(leak.max())
    return {"E_numeric": numeric, "E_analytic": closed.reshape(-1), "leakage": leak}, diag


def _bell_point(cfg, params):
    traj, diag = _pure_trajectory(cfg, params)
    probs = np.array([bell_decompose(psi, cfg.dims).probabilities for psi in traj.states])
    leak = _leakage(traj.states, cfg.dims)
    diag["max_leakage"] = float(leak.max())
    cols = {f"b{j + 1}_sq": probs[:, j] for j in range(4)}
    cols["leakage"] = leak
    return cols, diag


def _dissipative_point(cfg, params):
    if cfg.dissipation is None:
        raise ConfigError("dissipative experiment needs a 'dissipation' section")
    psi0 = basis_state(*cfg.initial_state, cfg.dims)
    traj = solve_master(
        np.outer(psi0, psi0.conj()),
        params,
        cfg.dims,
        cfg.dissipation.kind,
        cfg.grid,
        tol=cfg.dissipation.rtol,
        atol=cfg.dissipation.atol,
    )
    ref = _reference(cfg, params, traj.times)
    e_f, fid, trace, leak = [], [], [], []
    herm, floor = 0.0, np.inf
    for k, rho in enumerate(traj.states):
        block, leakage = project_two_qubit(rho, cfg.dims)
        e_f.append(entanglement_of_formation(block))
        psi_cut = embed_qubit_state(ref[:, k], cfg.dims)
        fid.append(float(np.real(np.vdot(psi_cut, rho @ psi_cut))))
        trace.append(float(np.trace(rho).real))
        leak.append(leakage)
        herm = max(herm, float(np.max(np.abs(rho - rho.conj().T))))
        floor = min(floor, float(np.linalg.eigvalsh(rho).min()))
    trace = np.array(trace)
    diag = {
        "max_trace_drift": float(np.max(np.abs(trace - 1))),
        "max_antihermitian": herm,
        "min_eigenvalue": floor,
        "max_leakage": float(max(leak)),
    }
    cols = {"E_F": np.array(e_f), "F_vs_truncated": np.array(fid), "trace": trace, "leakage": np.array(leak)}
    return cols, diag


_POINT_RUNNERS = {
    "truncation_fidelity": _fidelity_point,
    "entropy": _entropy_point,
    "bell_probabilities": _bell_point,
    "dissipative": _dissipative_point,
}


def _run_sweep(cfg: ExperimentConfig, workers=None) -> Result:
    runner = _POINT_RUNNERS[cfg.experiment]
    points = cfg.points()
    workers = workers or min(len(points), os.cpu_count() or 1)
    if workers > 1 and len(points) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            outputs = list(pool.map(lambda p: runner(cfg, p[1]), points))
    else:
        outputs = [runner(cfg, params) for _, params in points]

    columns = ["t_s"]
    data = [cfg.grid.points]
    diagnostics = {}
    for (label, _), (cols, diag) in zip(points, outputs):
        suffix = "" if label is None else f"[{label}]"
        for name, values in cols.items():
            columns.append(name + suffix)
            data.append(np.asarray(values, dtype=float))
        diagnostics[label or "run"] = diag
    return Result(cfg, columns, np.column_stack(data), diagnostics)


def run_truncation_fidelity(cfg: ExperimentConfig, workers=None) -> Result:
    """Fidelity of the full-space state against the ideal truncated state."""
    return _run_sweep(_expect(cfg, "truncation_fidelity"), workers)


def run_entropy(cfg: ExperimentConfig, workers=None) -> Result:
    """Entropy of entanglement of the simulated (projected) and truncated states."""
    return _run_sweep(_expect(cfg, "entropy"), workers)


def run_bell_probabilities(cfg: ExperimentConfig, workers=None) -> Result:
    return _run_sweep(_expect(cfg, "bell_probabilities"), workers)


def run_dissipative(cfg: ExperimentConfig, workers=None) -> Result:
    """Master-equation run reporting E_F of the projected two-qubit block."""
    return _run_sweep(_expect(cfg, "dissipative"), workers)


def run_eit_estimate(cfg: ExperimentConfig, workers=None) -> Result:
    cfg = _expect(cfg, "eit_estimate")
    est = kerr_estimate(cfg.eit)
    ratio = abs(cfg.eit.g13) ** 2 * cfg.eit.n_atom / cfg.eit.rabi**2
    rows = np.array([[est.chi, float(est.adiabatic_ok), ratio]])
    return Result(cfg, ["chi_rad_per_s", "adiabatic_ok", "g13_sq_n_over_rabi_sq"], rows, {})


def _expect(cfg, name):
    if cfg.experiment != name:
        raise ConfigError(f"expected a {name} configuration, got {cfg.experiment}")
    return cfg


RUNNERS = {
    "truncation_fidelity": run_truncation_fidelity,
    "entropy": run_entropy,
    "bell_probabilities": run_bell_probabilities,
    "dissipative": run_dissipative,
    "eit_estimate": run_eit_estimate,
}


def run(cfg: ExperimentConfig, workers=None) -> Result:
    return RUNNERS[cfg.experiment](cfg, workers)


# ---------------------------------------------------------------------------
# Output


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def to_csv(result: Result) -> str:
    """CSV with the resolved configuration as '#' comment lines."""
    lines = ["# " + line for line in json.dumps(result.config.to_dict(), indent=2).splitlines()]
    if result.diagnostics:
        lines.append("# diagnostics: " + json.dumps(result.diagnostics))
    lines.append(",".join(result.columns))
    lines.extend(",".join(_fmt(x) for x in row) for row in result.rows)
    return "\n".join(lines) + "\n"


def to_json(result: Result) -> str:
    rows = [[float(_fmt(x)) for x in row] for row in result.rows]
    doc = {
        "config": result.config.to_dict(),
        "columns": result.columns,
        "rows": rows,
        "diagnostics": result.diagnostics,
    }
    return json.dumps(doc, indent=1)


def render(result: Result, fmt: str) -> str:
    return to_json(result) if fmt == "json" else to_csv(result)


def read_csv(text: str):
    """Parse ``to_csv`` output back into (config, columns, rows)."""
    header, body = [], []
    for line in text.splitlines():
        (header if line.startswith("#") else body).append(line)
    config_lines = [h[2:] for h in header if not h.startswith("# diagnostics:")]
    config = json.loads("\n".join(config_lines))
    columns = body[0].split(",")
    rows = np.array([[float(x) for x in line.split(",")] for line in body[1:] if line])
    return config, columns, rows
