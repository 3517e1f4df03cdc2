"""Command line entry point: ``mimo-noma {fig1,rho-sweep,montecarlo,verify}``.

Settings come from built-in defaults, then an optional ``--config`` file,
then command-line flags (flags win).  The config file is INI-style with a
single ``[mimo_noma]`` section whose keys are the long flag names, e.g.::

    [mimo_noma]
    rho-range = 0:40:2
    trials = 10000
    seed = 7
    gains = 0.052,0.0052
    oma-alpha2 = 0.5
    format = csv
    out = sweep.csv

Exit status: 0 on success, 1 on a failed verification, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import configparser
import logging
import sys
from typing import Dict, List, Optional

from .channel import SystemConfig
from .experiments import (ExperimentConfig, Table, emit_output, fig1_claims,
                          rho_sweep_claims, run_fig1, run_montecarlo, run_rho_sweep,
                          simulate_gains, table_to_csv, table_to_json, verify)

log = logging.getLogger("mimo_noma")

EXIT_OK, EXIT_VERIFY_FAILED, EXIT_USAGE = 0, 1, 2

# flag name -> (parser, help)
_OPTIONS = {
    "rho-db": (float, "SNR in dB for fig1 (default 30)"),
    "rho-range": (str, "rho sweep START:STOP:STEP in dB (default 0:40:2)"),
    "grid": (int, "number of OMA power grid points for fig1 (default 201)"),
    "trials": (int, "Monte-Carlo trials / verification instances (default 1000)"),
    "seed": (int, "base RNG seed (default 0)"),
    "gains": (str, "fixed effective gains G1,G2 (default 0.052,0.0052)"),
    "oma-alpha2": (float, "OMA weak-user power fraction (default 0.5)"),
    "format": (str, "output format csv|json (default csv)"),
    "out": (str, "output path; also writes <stem>_plot.py"),
    "mode": (str, "rho-sweep channel mode fixed|montecarlo (default fixed)"),
    "workers": (int, "worker threads for Monte-Carlo draws (default 1)"),
    "clusters": (int, "number of clusters M = BS antennas (default 4)"),
    "antennas": (int, "antennas per user N (default M/2+1)"),
    "path-loss-exponent": (float, "path-loss exponent (default 3.8)"),
    "distance-range": (str, "user distance range MIN,MAX in metres (default 1,3)"),
}


class UsageError(Exception):
    pass


def _pair(text: str, sep: str = ",") -> tuple:
    parts = [p.strip() for p in str(text).split(sep)]
    if len(parts) != 2:
        raise UsageError(f"expected two values separated by {sep!r}, got {text!r}")
    return tuple(float(p) for p in parts)


def _rho_range(text: str) -> tuple:
    parts = str(text).split(":")
    if len(parts) != 3:
        raise UsageError(f"--rho-range expects START:STOP:STEP, got {text!r}")
    return tuple(float(p) for p in parts)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mimo-noma",
        description="Individual-rate comparison of two-user MIMO-NOMA and MIMO-OMA clusters.")
    sub = parser.add_subparsers(dest="command", required=True)
    helps = {
        "fig1": "rates vs OMA power split with equal DoF",
        "rho-sweep": "rates vs rho with optimal DoF",
        "montecarlo": "rates vs rho averaged over synthesised channels",
        "verify": "run oracle and invariant suites",
    }
    for name, text in helps.items():
        p = sub.add_parser(name, help=text, description=text)
        p.add_argument("--config", metavar="FILE", help="INI config file ([mimo_noma] section)")
        for flag, (typ, help_text) in _OPTIONS.items():
            p.add_argument(f"--{flag}", type=typ, default=None, help=help_text)
        p.add_argument("--debug-beamforming", action="store_true",
                       help="log worst alignment residual and inter-cluster gain")
        p.add_argument("-v", "--verbose", action="store_true")
    return parser


def _read_config(path: str) -> Dict[str, str]:
    parser = configparser.ConfigParser()
    if not parser.read(path):
        raise UsageError(f"cannot read config file {path!r}")
    if "mimo_noma" not in parser:
        raise UsageError(f"config file {path!r} has no [mimo_noma] section")
    values = {}
    for key, value in parser["mimo_noma"].items():
        flag = key.replace("_", "-")
        if flag not in _OPTIONS:
            raise UsageError(f"unknown config key {key!r}")
        values[flag] = _OPTIONS[flag][0](value)
    return values


def resolve_config(command: str, args: argparse.Namespace) -> ExperimentConfig:
    settings = _read_config(args.config) if args.config else {}
    for flag in _OPTIONS:
        value = getattr(args, flag.replace("-", "_"))
        if value is not None:
            settings[flag] = value

    system_kwargs = {}
    if "clusters" in settings:
        system_kwargs["num_clusters"] = settings["clusters"]
    if "antennas" in settings:
        system_kwargs["user_antennas"] = settings["antennas"]
    if "path-loss-exponent" in settings:
        system_kwargs["path_loss_exponent"] = settings["path-loss-exponent"]
    if "distance-range" in settings:
        system_kwargs["distance_range"] = _pair(settings["distance-range"])

    kwargs = {"experiment": command}
    if command == "rho-sweep" or command == "montecarlo":
        kwargs["mode"] = "montecarlo" if command == "montecarlo" else "fixed"
    simple = {"rho-db": "rho_db", "grid": "grid", "trials": "trials", "seed": "seed",
              "oma-alpha2": "oma_alpha2", "format": "fmt", "out": "out",
              "mode": "mode", "workers": "workers"}
    for flag, attr in simple.items():
        if flag in settings:
            kwargs[attr] = settings[flag]
    if "rho-range" in settings:
        kwargs["rho_range"] = _rho_range(settings["rho-range"])
    if "gains" in settings:
        kwargs["gains"] = _pair(settings["gains"])
    kwargs["system"] = SystemConfig(rng_seed=int(kwargs.get("seed", 0)), **system_kwargs)
    return ExperimentConfig(**kwargs)


def _write(table: Table, cfg: ExperimentConfig):
    if cfg.out:
        data, script = emit_output(table, cfg.fmt, cfg.out)
        log.info("wrote %s and %s", data, script)
    else:
        sys.stdout.write(table_to_csv(table) if cfg.fmt == "csv" else table_to_json(table))


def _report_claims(claims) -> None:
    for claim in claims:
        (log.info if claim.passed else log.warning)("%s", claim.line())


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)  # exits with status 2 on bad usage
    logging.basicConfig(format="%(levelname)s %(message)s", stream=sys.stderr)
    log.setLevel(logging.INFO if args.verbose else logging.WARNING)
    try:
        cfg = resolve_config(args.command, args)
    except (UsageError, ValueError) as exc:
        parser.error(str(exc))

    if args.debug_beamforming:
        samples = simulate_gains(cfg.system, min(cfg.trials, 1000), cfg.seed)
        log.warning("beamforming: max alignment residual %.3e, max inter-cluster gain %.3e, "
                    "resampled draws %d", samples.max_residual, samples.max_cross_gain,
                    samples.resampled)

    try:
        if args.command == "fig1":
            table = run_fig1(cfg)
            _report_claims(fig1_claims(table))
        elif args.command == "rho-sweep":
            table = run_rho_sweep(cfg)
            _report_claims(rho_sweep_claims(table))
        elif args.command == "montecarlo":
            table = run_montecarlo(cfg)
            _report_claims(rho_sweep_claims(table))
        else:
            report = verify(cfg)
            for line in report.lines():
                print(line)
            return EXIT_OK if report.passed else EXIT_VERIFY_FAILED
        _write(table, cfg)
    except OSError as exc:
        print(f"mimo-noma: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
