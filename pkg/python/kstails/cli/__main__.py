"""CLI: ``kstails {run,sweep,analyze,verify}`` (also ``python -m kstails.cli``)."""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional, Sequence

from kstails import __version__
from kstails.errors import ConfigError, KstailsError
from kstails.experiments.analysis import analyze_run
from kstails.experiments.config import ExperimentConfig, defaults_table, load_config
from kstails.experiments.runner import run_experiment
from kstails.experiments.sweep import analyze_sweep, is_sweep_directory, sweep_scaling
from kstails.util.env import LOG_LEVEL_ENV, log_level_from_env
from kstails.verify import SUITE_ORDER, VerifyOptions, format_table, run_suites

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_CONFIG = 2
EXIT_DIVERGED = 3


def _install_handler(verbosity: int) -> None:
    """stderr handler on the ``kstails`` logger; ``-v`` lowers the env level to INFO, ``-vv`` to DEBUG."""
    log = logging.getLogger("kstails")
    level = log_level_from_env()
    if verbosity >= 2:
        level = min(level, logging.DEBUG)
    elif verbosity == 1:
        level = min(level, logging.INFO)
    if not log.handlers:
        handler = logging.StreamHandler(sys.stderr)
        handler.setFormatter(logging.Formatter("%(levelname)s %(name)s: %(message)s"))
        log.addHandler(handler)
        log.propagate = False
    log.setLevel(level)


def _add_config_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", metavar="PATH", help="YAML config (nested or dotted keys)")
    p.add_argument(
        "--set",
        dest="overrides",
        metavar="KEY=VALUE",
        action="append",
        default=[],
        help="override one config key; repeatable",
    )
    p.add_argument("--out", metavar="DIR", help="output directory (same as --set output=DIR)")
    p.add_argument("--seed", type=int, help="same as --set initial_data.seed=N")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kstails",
        description="Kuramoto-Sivashinsky runs, sweeps and tail diagnostics",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="config keys and defaults:\n" + defaults_table()
        + f"\n\nenvironment:\n  {LOG_LEVEL_ENV}  log level of the stderr handler (default WARNING)",
    )
    parser.add_argument("--version", action="version", version=f"kstails {__version__}")
    parser.add_argument("-v", "--verbose", action="count", default=0, help="more logging (-vv for debug)")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")

    run = sub.add_parser("run", help="integrate one config and write its run directory")
    _add_config_flags(run)

    sweep = sub.add_parser("sweep", help="run the config at every sweep.L_values and fit the slope")
    _add_config_flags(sweep)
    sweep.add_argument("--observable", help="sup_L2, sup_Hs(s) or sup_Lp(p); default sweep.observable")

    analyze = sub.add_parser("analyze", help="recompute fits.json (or scaling.json) from a directory")
    analyze.add_argument("directory", help="run or sweep directory")
    analyze.add_argument("--noise-floor", type=float, help="override the Gevrey-fit noise floor")
    analyze.add_argument("--observable", help="sweep directories only")

    verify = sub.add_parser("verify", help="run acceptance suites and print measured vs required")
    verify.add_argument(
        "--suite",
        action="append",
        choices=SUITE_ORDER,
        help="suite to run; repeatable; default all",
    )
    verify.add_argument("--seed", type=int, default=0, help="seed for random fields and initial data")
    verify.add_argument("--out", metavar="DIR", help="keep suite artifacts under DIR")
    return parser


def _load(args: argparse.Namespace) -> ExperimentConfig:
    overrides: List[str] = list(args.overrides)
    if args.seed is not None:
        overrides.append(f"initial_data.seed={args.seed}")
    if args.out is not None:
        overrides.append(f"output={args.out}")
    return load_config(args.config, overrides)


def _cmd_run(args: argparse.Namespace) -> int:
    cfg = _load(args)
    record = run_experiment(cfg)
    print(f"{cfg.output}: {record.verdict.kind.value}, H={record.H:.6g}, t={record.t_final:g}")
    if record.diverged:
        print(f"diverged at t*={record.verdict.t_star:g}", file=sys.stderr)
        return EXIT_DIVERGED
    return EXIT_OK


def _cmd_sweep(args: argparse.Namespace) -> int:
    cfg = _load(args)
    fit = sweep_scaling(cfg, observable=args.observable)
    print(f"{fit.observable}: slope {fit.slope:.4f} (rms residual {fit.residual:.3g})")
    return EXIT_OK


def _cmd_analyze(args: argparse.Namespace) -> int:
    directory = Path(args.directory)
    if is_sweep_directory(directory):
        fit = analyze_sweep(directory, observable=args.observable)
        print(f"{fit.observable}: slope {fit.slope:.4f}")
        return EXIT_OK
    fits = analyze_run(directory, noise_floor=args.noise_floor)
    print(f"{directory}: H={fits.get('H', float('nan')):.6g}, {len(fits.get('gevrey', []))} Gevrey fits")
    return EXIT_OK


def _cmd_verify(args: argparse.Namespace) -> int:
    options = VerifyOptions(seed=args.seed, workdir=Path(args.out) if args.out else None)
    results = run_suites(args.suite, options)
    print(format_table(results))
    return EXIT_OK if all(r.passed for r in results) else EXIT_FAILURE


COMMANDS = {
    "run": _cmd_run,
    "sweep": _cmd_sweep,
    "analyze": _cmd_analyze,
    "verify": _cmd_verify,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(list(argv) if argv is not None else None)
    _install_handler(args.verbose)
    if args.command is None:
        parser.print_help(sys.stderr)
        return EXIT_CONFIG
    try:
        return COMMANDS[args.command](args)
    except ConfigError as exc:
        # includes RunDirectoryError
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except KstailsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAILURE
    except Exception as exc:
        logger.debug("internal error", exc_info=True)
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAILURE


if __name__ == "__main__":
    raise SystemExit(main())
