"""
Command-line front end::

    qdsim <subcommand> [--config FILE] [--<key> VALUE ...] [--out FILE] [--workers N]

Exit status: 0 on success, 1 on a configuration, solver or I/O error,
2 when some points of a sweep failed. Diagnostics go to stderr only.
"""

from __future__ import annotations

import argparse
import dataclasses
import logging
import sys

import numpy as np

from .config import KEYS, SUBCOMMANDS, ConfigError, RunConfig, parse_config
from .csvio import format_float, write_csv
from .model import from_real, to_real
from .observables import SweepSpec, run_grid, run_sweep
from .solvers import SolverError, integrate, residual_norm, steady_state_direct

__all__ = ["main", "run_command", "build_parser"]

log = logging.getLogger("qdsim")

STATE_NAMES = ("rho00", "rho11", "rho22", "re_rho01", "im_rho01",
               "re_rho02", "im_rho02", "re_rho12", "im_rho12")


class _Parser(argparse.ArgumentParser):
    # usage errors are configuration errors: exit 1, not argparse's 2
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="qdsim",
        description="Three-level double quantum dot: steady states, dynamics and sweeps.")
    parser.add_argument("subcommand", choices=SUBCOMMANDS)
    parser.add_argument("--config", metavar="FILE", help="key = value configuration file")
    parser.add_argument("--out", metavar="FILE", help="CSV output path (default: stdout)")
    parser.add_argument("--workers", type=int, default=1,
                        help="processes for sweep evaluation; output does not depend on it")
    keys = parser.add_argument_group("model and run keys (override the config file)")
    for key in KEYS:
        keys.add_argument("--" + key.replace("_", "-"), dest=key, metavar="VALUE")
    return parser


def _write(result, cfg: RunConfig, stdout):
    write_csv(result, cfg.out if cfg.out else stdout, cfg.echo(), cfg.precision)


def _sweep_exit(result, total) -> int:
    if result.failures:
        log.error("%d of %d points failed", len(result.failures), total)
        return 2
    return 0


def run_command(cfg: RunConfig, workers: int | None = None, stdout=None) -> int:
    """Execute ``cfg.subcommand`` and return the exit status."""
    stdout = sys.stdout if stdout is None else stdout
    sub = cfg.subcommand
    try:
        if sub == "steady":
            rho = steady_state_direct(cfg.params)
            for name, v in zip(STATE_NAMES, to_real(rho)):
                print(f"{name}={v + 0.0:.{cfg.precision}f}", file=stdout)
            print(f"residual={format_float(residual_norm(rho, cfg.params), cfg.precision)}",
                  file=stdout)
            return 0
        if sub == "evolve":
            rho0 = from_real(np.array([1.0, 0, 0, 0, 0, 0, 0, 0, 0]))
            _write(integrate(rho0, cfg.params, cfg.settings), cfg, stdout)
            return 0
        spec = SweepSpec(cfg.swept, cfg.sweep_start, cfg.sweep_stop, cfg.sweep_count,
                         base=cfg.params)
        if sub == "grid":
            outer = SweepSpec("t_e", cfg.grid_te_start, cfg.grid_te_stop, cfg.grid_te_count,
                              base=cfg.params)
            result = run_grid(outer, spec, workers=workers)
            _write(result, cfg, stdout)
            return _sweep_exit(result, len(result))
        result = run_sweep(spec, workers=workers)
        _write(result, cfg, stdout)
        return _sweep_exit(result, len(result))
    except SolverError as exc:
        log.error("%s", exc)
        return 1
    except OSError as exc:
        log.error("cannot write output: %s", exc)
        return 1


def main(argv=None) -> int:
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter("qdsim: %(message)s"))
    log.addHandler(handler)
    log.setLevel(logging.INFO)
    try:
        return _main(argv)
    finally:
        log.removeHandler(handler)


def _main(argv):
    args = build_parser().parse_args(argv)
    try:
        text = ""
        if args.config:
            with open(args.config, encoding="utf-8") as fh:
                text = fh.read()
        overrides = {k: getattr(args, k) for k in KEYS if getattr(args, k) is not None}
        cfg = parse_config(text, overrides, subcommand=args.subcommand)
    except (ConfigError, OSError) as exc:
        log.error("configuration error: %s", exc)
        return 1
    if args.out:
        cfg = dataclasses.replace(cfg, out=args.out)
    return run_command(cfg, workers=args.workers)


if __name__ == "__main__":
    sys.exit(main())
