"""Command-line entry point: ``simulate <preset|--config FILE>``."""
from __future__ import annotations

import argparse
import logging
import sys
import threading
from pathlib import Path

from . import config as config_mod
from .config import DissipationConfig, OutputConfig
from .errors import ConfigError, NumericalError
from .experiments import render, run
from .fock import FockDims

log = logging.getLogger("kerrscissors")

EXIT_OK, EXIT_CONFIG, EXIT_NUMERICAL = 0, 1, 2

_write_lock = threading.Lock()


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="simulate",
        description="Simulate pumped two-mode Kerr couplers and write the results as a table.",
    )
    p.add_argument("preset", nargs="?", help="built-in configuration name (see --list-presets)")
    p.add_argument("--config", type=Path, help="YAML or JSON configuration file")
    p.add_argument("--output", "-o", help="output file (default: config output.path, else stdout)")
    p.add_argument("--format", choices=config_mod.FORMATS, help="output format (default: csv)")
    p.add_argument("--dims", nargs=2, type=int, metavar=("A", "B"), help="Fock cutoffs per mode")
    p.add_argument("--tol", type=float, metavar="REL", help="relative tolerance of the master-equation integrator")
    p.add_argument("--workers", type=int, help="threads for sweep points")
    p.add_argument("--list-presets", action="store_true", help="print the built-in preset names and exit")
    p.add_argument("-v", "--verbose", action="store_true")
    return p


def resolve_config(args) -> config_mod.ExperimentConfig:
    """Combine preset/config file with command-line overrides."""
    if (args.preset is None) == (args.config is None):
        raise ConfigError("give exactly one of a preset name or --config FILE")
    cfg = config_mod.preset(args.preset) if args.preset else config_mod.load(args.config)

    if args.dims is not None:
        try:
            dims = FockDims(*args.dims)
        except ValueError as exc:
            raise ConfigError(f"--dims: {exc}") from None
        cfg = cfg.replace(dims=dims)
    if args.tol is not None:
        if not args.tol > 0:
            raise ConfigError("--tol must be positive")
        base = cfg.dissipation or DissipationConfig()
        if cfg.dissipation is not None:
            cfg = cfg.replace(dissipation=DissipationConfig(base.kind, args.tol, base.atol))
        else:
            log.warning("--tol only affects dissipative runs; ignored")
    if args.output is not None or args.format is not None:
        fmt = args.format or _format_from_path(args.output) or cfg.output.format
        cfg = cfg.replace(output=OutputConfig(args.output or cfg.output.path, fmt))
    # re-validate after overrides
    return config_mod.from_dict(cfg.to_dict())


def _format_from_path(path):
    if path and Path(path).suffix.lower() == ".json":
        return "json"
    return None


def write_output(text: str, path: str | None) -> None:
    with _write_lock:
        if path is None:
            sys.stdout.write(text)
            return
        Path(path).parent.mkdir(parents=True, exist_ok=True)
        Path(path).write_text(text)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s: %(message)s")

    if args.list_presets:
        for name in config_mod.PRESETS:
            print(name)
        return EXIT_OK

    try:
        cfg = resolve_config(args)
        log.info("running %s (%s)", cfg.name or args.config, cfg.experiment)
        result = run(cfg, workers=args.workers)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except NumericalError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL

    for label, diag in result.diagnostics.items():
        log.info("%s: %s", label, diag)
    write_output(render(result, cfg.output.format), cfg.output.path)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
