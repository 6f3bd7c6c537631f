"""Experiment configuration: parsing, validation and built-in presets.

A configuration is one nested key/value document (YAML or JSON).  Physical
quantities carry their unit in the key name::

    experiment: truncation_fidelity
    params:
      chi_a_rad_per_s: 1.0e8
      chi_b_rad_per_s: 1.0e8
      alpha_rad_per_s: 5.0e5
      beta_rad_per_s: [0.0, 5.0e5]     # complex values as [re, im] or "0+5e5j"
      epsilon_rad_per_s: 5.0e4
    dims: [20, 20]
    grid: {t_start_s: 0.0, t_end_s: 5.0e-6, n_points: 501}
    initial_state: [0, 0]
    sweep:                              # optional
      parameters: [beta_rad_per_s]
      values: [0.0, 5.0e5]
      labels: [beta=0, beta=alpha]
    dissipation: {kind: standard_damping, rtol: 1.0e-9, atol: 1.0e-12}
    output: {path: out.csv, format: csv}
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from pathlib import Path

import numpy as np
import yaml

from .dynamics import TimeGrid
from .eit import EitParams
from .errors import ConfigError
from .fock import FockDims
from .hamiltonian import SystemParams
from .lindblad import DissipationKind

EXPERIMENTS = ("truncation_fidelity", "entropy", "bell_probabilities", "dissipative", "eit_estimate")
FORMATS = ("csv", "json")

# config key -> SystemParams field
PARAM_KEYS = {
    "chi_a_rad_per_s": "chi_a",
    "chi_b_rad_per_s": "chi_b",
    "alpha_rad_per_s": "alpha",
    "beta_rad_per_s": "beta",
    "epsilon_rad_per_s": "epsilon",
    "gamma_a_rad_per_s": "gamma_a",
    "gamma_b_rad_per_s": "gamma_b",
    "nbar_a": "nbar_a",
    "nbar_b": "nbar_b",
}
COMPLEX_FIELDS = {"alpha", "beta", "epsilon"}

EIT_KEYS = {
    "g13_rad_per_s": "g13",
    "g24_rad_per_s": "g24",
    "rabi_rad_per_s": "rabi",
    "detuning_rad_per_s": "detuning",
    "n_atom": "n_atom",
}

DEFAULT_UNITARY_DIMS = FockDims(20, 20)
DEFAULT_DISSIPATIVE_DIMS = FockDims(10, 10)


@dataclass(frozen=True)
class DissipationConfig:
    kind: DissipationKind = DissipationKind.STANDARD_DAMPING
    rtol: float = 1e-9
    atol: float = 1e-12


@dataclass(frozen=True)
class Sweep:
    """Run the experiment once per value, setting every listed parameter."""

    parameters: tuple[str, ...]
    values: tuple[complex, ...]
    labels: tuple[str, ...]


@dataclass(frozen=True)
class OutputConfig:
    path: str | None = None
    format: str = "csv"


@dataclass(frozen=True)
class ExperimentConfig:
    experiment: str
    params: SystemParams = field(default_factory=SystemParams)
    dims: FockDims = DEFAULT_UNITARY_DIMS
    grid: TimeGrid = TimeGrid(0.0, 0.0, 1)
    initial_state: tuple[int, int] = (0, 0)
    dissipation: DissipationConfig | None = None
    sweep: Sweep | None = None
    output: OutputConfig = OutputConfig()
    eit: EitParams | None = None
    name: str | None = None

    def replace(self, **changes) -> "ExperimentConfig":
        return replace(self, **changes)

    def points(self):
        """(label, SystemParams) for every sweep point (one unlabeled point without a sweep)."""
        if self.sweep is None:
            return [(None, self.params)]
        out = []
        for label, value in zip(self.sweep.labels, self.sweep.values):
            changes = {}
            for key in self.sweep.parameters:
                name = PARAM_KEYS[key]
                changes[name] = value if name in COMPLEX_FIELDS else value.real
            out.append((label, self.params.replace(**changes)))
        return out

    def to_dict(self) -> dict:
        """Fully resolved, JSON-serializable form; ``from_dict`` inverts it."""
        out = {"experiment": self.experiment}
        if self.name is not None:
            out["preset"] = self.name
        if self.experiment == "eit_estimate":
            out["eit"] = {
                key: _encode(getattr(self.eit, name), name in ("g13", "g24")) for key, name in EIT_KEYS.items()
            }
            out["output"] = {"path": self.output.path, "format": self.output.format}
            return out
        out["params"] = {
            key: _encode(getattr(self.params, name), name in COMPLEX_FIELDS) for key, name in PARAM_KEYS.items()
        }
        out["dims"] = [self.dims.dim_a, self.dims.dim_b]
        out["grid"] = {"t_start_s": self.grid.t_start, "t_end_s": self.grid.t_end, "n_points": self.grid.n_points}
        out["initial_state"] = list(self.initial_state)
        if self.sweep is not None:
            out["sweep"] = {
                "parameters": list(self.sweep.parameters),
                "values": [_encode(v, True) for v in self.sweep.values],
                "labels": list(self.sweep.labels),
            }
        if self.dissipation is not None:
            out["dissipation"] = {
                "kind": self.dissipation.kind.value,
                "rtol": self.dissipation.rtol,
                "atol": self.dissipation.atol,
            }
        out["output"] = {"path": self.output.path, "format": self.output.format}
        return out


def _encode(value, is_complex):
    value = complex(value)
    if is_complex:
        return [value.real, value.imag]
    return value.real


def _number(value, where, allow_complex=False):
    try:
        if isinstance(value, (list, tuple)):
            if len(value) != 2:
                raise ValueError
            out = complex(float(value[0]), float(value[1]))
        elif isinstance(value, bool):
            raise ValueError
        elif isinstance(value, str):
            out = complex(value.replace(" ", ""))
        else:
            out = complex(value)
    except (TypeError, ValueError):
        raise ConfigError(f"{where}: expected a number, got {value!r}") from None
    if not np.isfinite(out):
        raise ConfigError(f"{where}: value must be finite")
    if not allow_complex:
        if out.imag != 0:
            raise ConfigError(f"{where}: expected a real number, got {value!r}")
        return out.real
    return out


def _mapping(doc, key, required=True):
    value = doc.get(key)
    if value is None:
        if required:
            raise ConfigError(f"missing required section '{key}'")
        return None
    if not isinstance(value, dict):
        raise ConfigError(f"'{key}' must be a mapping")
    return value


def _reject_unknown(section, allowed, where):
    unknown = set(section) - set(allowed)
    if unknown:
        raise ConfigError(f"{where}: unknown keys {sorted(unknown)}")


def _parse_params(doc):
    section = _mapping(doc, "params")
    _reject_unknown(section, PARAM_KEYS, "params")
    kwargs = {}
    for key, name in PARAM_KEYS.items():
        if key in section:
            kwargs[name] = _number(section[key], f"params.{key}", name in COMPLEX_FIELDS)
    for key in ("chi_a_rad_per_s", "chi_b_rad_per_s"):
        if key not in section:
            raise ConfigError(f"params.{key} is required")
    try:
        return SystemParams(**kwargs)
    except ValueError as exc:
        raise ConfigError(f"params: {exc}") from None


def _parse_dims(doc, default):
    raw = doc.get("dims")
    if raw is None:
        return default
    if not isinstance(raw, (list, tuple)) or len(raw) != 2:
        raise ConfigError("dims must be a pair [dim_a, dim_b]")
    values = [_number(v, "dims") for v in raw]
    if not all(float(v).is_integer() for v in values):
        raise ConfigError(f"dims must be integers, got {raw!r}")
    try:
        return FockDims(int(values[0]), int(values[1]))
    except ValueError as exc:
        raise ConfigError(f"dims: {exc}") from None


def _parse_grid(doc):
    section = _mapping(doc, "grid")
    _reject_unknown(section, ("t_start_s", "t_end_s", "n_points"), "grid")
    try:
        n_points = section["n_points"]
        if isinstance(n_points, bool) or int(n_points) != n_points:
            raise ConfigError("grid.n_points must be an integer")
        return TimeGrid(
            _number(section.get("t_start_s", 0.0), "grid.t_start_s"),
            _number(section["t_end_s"], "grid.t_end_s"),
            int(n_points),
        )
    except KeyError as exc:
        raise ConfigError(f"grid: missing {exc.args[0]}") from None
    except ValueError as exc:
        raise ConfigError(f"grid: {exc}") from None


def _parse_initial(doc):
    raw = doc.get("initial_state", [0, 0])
    if isinstance(raw, str) and len(raw) == 2 and raw.isdigit():
        raw = [int(raw[0]), int(raw[1])]
    if not isinstance(raw, (list, tuple)) or len(raw) != 2 or not all(isinstance(k, int) and k >= 0 for k in raw):
        raise ConfigError(f"initial_state must be a Fock label [m, n], got {raw!r}")
    return tuple(raw)


def _parse_sweep(doc):
    section = _mapping(doc, "sweep", required=False)
    if section is None:
        return None
    _reject_unknown(section, ("parameters", "values", "labels"), "sweep")
    params = section.get("parameters")
    if isinstance(params, str):
        params = [params]
    if not params or any(p not in PARAM_KEYS for p in params):
        raise ConfigError(f"sweep.parameters must name keys from {sorted(PARAM_KEYS)}")
    values = section.get("values")
    if not isinstance(values, list) or not values:
        raise ConfigError("sweep.values must be a non-empty list")
    values = tuple(_number(v, "sweep.values", allow_complex=True) for v in values)
    for p in params:
        if PARAM_KEYS[p] not in COMPLEX_FIELDS and any(v.imag for v in values):
            raise ConfigError(f"sweep.values must be real for {p}")
    labels = section.get("labels") or [f"{params[0]}={_format_value(v)}" for v in values]
    if len(labels) != len(values):
        raise ConfigError("sweep.labels must match sweep.values in length")
    return Sweep(tuple(params), values, tuple(str(label) for label in labels))


def _format_value(v):
    return f"{v.real:g}" if v.imag == 0 else f"{v:g}"


def _parse_dissipation(doc, experiment):
    section = _mapping(doc, "dissipation", required=experiment == "dissipative")
    if section is None:
        return None
    _reject_unknown(section, ("kind", "rtol", "atol"), "dissipation")
    try:
        kind = DissipationKind(section.get("kind", "standard_damping"))
    except ValueError:
        raise ConfigError(f"dissipation.kind must be one of {[k.value for k in DissipationKind]}") from None
    rtol = _number(section.get("rtol", 1e-9), "dissipation.rtol")
    atol = _number(section.get("atol", 1e-12), "dissipation.atol")
    if rtol <= 0 or atol <= 0:
        raise ConfigError("dissipation tolerances must be positive")
    return DissipationConfig(kind, rtol, atol)


def _parse_eit(doc):
    section = _mapping(doc, "eit")
    _reject_unknown(section, EIT_KEYS, "eit")
    kwargs = {}
    for key, name in EIT_KEYS.items():
        if key not in section:
            raise ConfigError(f"eit.{key} is required")
        kwargs[name] = _number(section[key], f"eit.{key}", name in ("g13", "g24"))
    try:
        return EitParams(**kwargs)
    except ValueError as exc:
        raise ConfigError(f"eit: {exc}") from None


def _parse_output(doc):
    section = doc.get("output") or {}
    if not isinstance(section, dict):
        raise ConfigError("'output' must be a mapping")
    _reject_unknown(section, ("path", "format"), "output")
    fmt = section.get("format", "csv")
    if fmt not in FORMATS:
        raise ConfigError(f"output.format must be one of {FORMATS}")
    path = section.get("path")
    return OutputConfig(None if path is None else str(path), fmt)


def from_dict(doc: dict) -> ExperimentConfig:
    """Validate a configuration document before any computation."""
    if not isinstance(doc, dict):
        raise ConfigError("configuration must be a mapping")
    _reject_unknown(
        doc,
        ("experiment", "preset", "params", "dims", "grid", "initial_state", "sweep", "dissipation", "eit", "output"),
        "config",
    )
    experiment = doc.get("experiment")
    if experiment not in EXPERIMENTS:
        raise ConfigError(f"experiment must be one of {EXPERIMENTS}, got {experiment!r}")
    output = _parse_output(doc)
    name = doc.get("preset")
    if experiment == "eit_estimate":
        return ExperimentConfig(experiment, eit=_parse_eit(doc), output=output, name=name)

    dissipation = _parse_dissipation(doc, experiment)
    default_dims = DEFAULT_DISSIPATIVE_DIMS if experiment == "dissipative" else DEFAULT_UNITARY_DIMS
    cfg = ExperimentConfig(
        experiment=experiment,
        params=_parse_params(doc),
        dims=_parse_dims(doc, default_dims),
        grid=_parse_grid(doc),
        initial_state=_parse_initial(doc),
        dissipation=dissipation,
        sweep=_parse_sweep(doc),
        output=output,
        name=name,
    )
    m, n = cfg.initial_state
    if m >= cfg.dims.dim_a or n >= cfg.dims.dim_b:
        raise ConfigError(f"initial_state {cfg.initial_state} outside dims {tuple(cfg.dims)}")
    if experiment != "eit_estimate" and (m > 1 or n > 1):
        raise ConfigError("initial_state must lie in the two-qubit subspace (m, n in {0, 1})")
    return cfg


def load(path) -> ExperimentConfig:
    """Read a YAML or JSON configuration file."""
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config file: {exc}") from None
    try:
        doc = json.loads(text) if path.suffix == ".json" else yaml.safe_load(text)
    except (json.JSONDecodeError, yaml.YAMLError) as exc:
        raise ConfigError(f"cannot parse {path.name}: {exc}") from None
    return from_dict(doc)


# ---------------------------------------------------------------------------
# Figure presets.  Kerr constants are 1e8 rad/s and the pump is chi/200
# (figures 2-7) or chi/20 (figures 8-11).

CHI = 1e8


def _unitary(experiment, epsilon_ratio, beta_ratio, t_end, n_points, sweep_betas=None):
    alpha = CHI / 200
    doc = {
        "experiment": experiment,
        "params": {
            "chi_a_rad_per_s": CHI,
            "chi_b_rad_per_s": CHI,
            "alpha_rad_per_s": alpha,
            "beta_rad_per_s": _encode(beta_ratio * alpha, True),
            "epsilon_rad_per_s": _encode(epsilon_ratio * alpha, True),
        },
        "dims": [20, 20],
        "grid": {"t_start_s": 0.0, "t_end_s": t_end, "n_points": n_points},
        "initial_state": [0, 0],
    }
    if sweep_betas:
        labels, ratios = zip(*sweep_betas)
        doc["sweep"] = {
            "parameters": ["beta_rad_per_s"],
            "values": [_encode(r * alpha, True) for r in ratios],
            "labels": list(labels),
        }
    return doc


def _dissipative(kind, nbar):
    alpha = CHI / 20
    return {
        "experiment": "dissipative",
        "params": {
            "chi_a_rad_per_s": CHI,
            "chi_b_rad_per_s": CHI,
            "alpha_rad_per_s": alpha,
            "epsilon_rad_per_s": alpha / 2,
            "nbar_a": nbar,
            "nbar_b": nbar,
        },
        "dims": [10, 10],
        "grid": {"t_start_s": 0.0, "t_end_s": 2e-6, "n_points": 201},
        "initial_state": [0, 0],
        "sweep": {
            "parameters": ["gamma_a_rad_per_s", "gamma_b_rad_per_s"],
            "values": [0.0, CHI / 500, CHI / 200],
            "labels": ["gamma=0", "gamma=chi/500", "gamma=chi/200"],
        },
        "dissipation": {"kind": kind, "rtol": 1e-9, "atol": 1e-12},
    }


_ALL_BETAS = [("beta=0", 0), ("beta=alpha", 1), ("beta=-alpha", -1), ("beta=i*alpha", 1j)]
_FIRST_SLOW_PERIOD = 8 * np.pi / (CHI / 200)
_LONG_WINDOW = 2 * _FIRST_SLOW_PERIOD

PRESETS = {
    "fig2a": _unitary("truncation_fidelity", 1.0, 0, 5e-6, 501, _ALL_BETAS),
    "fig2b": _unitary("truncation_fidelity", 0.1, 0, 5e-6, 501, _ALL_BETAS),
    "fig3a": _unitary("entropy", 1.0, 0, _FIRST_SLOW_PERIOD, 1001),
    "fig3b": _unitary("entropy", 1.0, 1, _FIRST_SLOW_PERIOD, 1001),
    "fig3c": _unitary("entropy", 1.0, -1, _FIRST_SLOW_PERIOD, 1001),
    "fig3d": _unitary("entropy", 1.0, 1j, _FIRST_SLOW_PERIOD, 1001),
    "fig4a": _unitary("entropy", 0.1, 0, _LONG_WINDOW, 2001),
    "fig4b": _unitary(
        "entropy", 0.1, 1, _LONG_WINDOW, 2001, [("beta=alpha", 1), ("beta=-alpha", -1), ("beta=i*alpha", 1j)]
    ),
    "fig5": _unitary("bell_probabilities", 1.0, 0, _FIRST_SLOW_PERIOD, 1001),
    "fig6": _unitary("bell_probabilities", 0.1, 0, _LONG_WINDOW, 2001),
    "fig7": _unitary("bell_probabilities", 0.1, 1, _LONG_WINDOW, 2001),
    "fig8": _dissipative("standard_damping", 0.0),
    "fig9": _dissipative("standard_damping", 0.1),
    "fig10": _dissipative("phase_damping", 0.0),
    "fig11": _dissipative("phase_damping", 1.0),
    "eit": {
        "experiment": "eit_estimate",
        # one consistent parameter set giving chi = 1e8 rad/s with |g13|^2 n / rabi^2 = 0.25
        "eit": {
            "g13_rad_per_s": [1e8, 0.0],
            "g24_rad_per_s": [1e8, 0.0],
            "rabi_rad_per_s": 2e8,
            "detuning_rad_per_s": 3.75e7,
            "n_atom": 1,
        },
    },
}


def preset(name: str) -> ExperimentConfig:
    try:
        doc = dict(PRESETS[name])
    except KeyError:
        raise ConfigError(f"unknown preset {name!r}; choose from {sorted(PRESETS)}") from None
    doc["preset"] = name
    return from_dict(doc)
