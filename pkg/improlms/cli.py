"""improlms/improlms/cli.py.

Command line interface, installed as `improlms`.

  improlms run <config.json|preset> [--runs N] [--seed S] [--out PREFIX]
                                    [--models LIST] [--threads T]
  improlms bounds <config.json|preset>
  improlms presets
  improlms sweep-rho <config.json|preset> [--rho LIST] [--out PREFIX]
  improlms sweep-mu <config.json|preset> --mu LIST [--steps N] [--out PREFIX]

Exit codes: 0 success, 1 configuration error, 2 numerical instability,
3 I/O error, 4 a requested model does not apply to the scenario.
"""
import argparse
import sys

import numpy as np

from improlms import experiment, settings, statistics, theory
from improlms._version import version
from improlms.helpers import raise_if
from improlms.io import config as io_config
from improlms.io import report
from improlms.utils import log

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_INSTABILITY = 2
EXIT_IO = 3
EXIT_INAPPLICABLE = 4


def _float_list(text):
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError as err:
        raise argparse.ArgumentTypeError(
            f"expected comma separated numbers, got `{text}`."
        ) from err


def _name_list(text):
    return [v.strip() for v in text.split(",") if v.strip()]


def build_parser():
    """Argument parser of the `improlms` command.

    Returns
    -------
    parser: argparse.ArgumentParser
    """
    parser = argparse.ArgumentParser(
        prog="improlms",
        description="Complex LMS with improper Gaussian signals: Monte Carlo "
        "learning curves against second order models.",
    )
    parser.add_argument(
        "--version", action="version", version=f"%(prog)s {version}"
    )
    parser.add_argument(
        "--verbose", action="store_true", help="debug level logging."
    )
    parser.add_argument("--logfile", type=str, help="also log to this file.")
    commands = parser.add_subparsers(dest="command", required=True)

    run = commands.add_parser(
        "run", help="Monte Carlo run compared with the models."
    )
    run.add_argument("config", help="config file or preset name.")
    run.add_argument("--runs", type=int, help="ensemble size.")
    run.add_argument("--seed", type=int, help="base seed.")
    run.add_argument("--out", type=str, help="output path prefix.")
    run.add_argument(
        "--models",
        type=_name_list,
        help=f"comma separated subset of {','.join(io_config.MODEL_NAMES)}.",
    )
    run.add_argument(
        "--threads", type=int, help="Monte Carlo worker threads."
    )

    bounds = commands.add_parser(
        "bounds", help="step size bounds of a configured scenario."
    )
    bounds.add_argument("config", help="config file or preset name.")

    commands.add_parser("presets", help="lists shipped presets.")

    sweep_rho = commands.add_parser(
        "sweep-rho", help="k^H k over the impropriety of the input."
    )
    sweep_rho.add_argument("config", help="config file or preset name.")
    sweep_rho.add_argument(
        "--rho",
        type=_float_list,
        default=list(np.linspace(0.0, 1.0, 11)),
        help="comma separated rho_uv values. Default 0, 0.1, ..., 1.",
    )
    sweep_rho.add_argument("--out", type=str, help="output path prefix.")

    sweep_mu = commands.add_parser(
        "sweep-mu", help="model steady states over step sizes."
    )
    sweep_mu.add_argument("config", help="config file or preset name.")
    sweep_mu.add_argument(
        "--mu",
        type=_float_list,
        required=True,
        help="comma separated step sizes.",
    )
    sweep_mu.add_argument(
        "--steps", type=int, default=1000, help="model recursion length."
    )
    sweep_mu.add_argument("--out", type=str, help="output path prefix.")

    return parser


def _overrides(args):
    changes = dict()
    if args.runs is not None:
        changes["runs"] = args.runs
    if args.seed is not None:
        changes["base_seed"] = args.seed
    if args.out is not None:
        changes["outputs"] = args.out
    if args.models is not None:
        changes["models"] = args.models
    return changes


def _run(args):
    config = io_config.load_config(args.config)
    config = config.replace(**_overrides(args))
    threads = settings.NTHREADS
    if args.threads is not None:
        if args.threads < 1:
            raise raise_if.ConfigError(
                f"has to be >= 1. Given {args.threads}.", path="--threads"
            )
        settings.NTHREADS = args.threads

    try:
        result = experiment.run_experiment(config)
    finally:
        settings.NTHREADS = threads
    print(result.report)
    for fname in result.files:
        print(fname)

    inapplicable = result.report.inapplicable
    if inapplicable:
        log.warning(
            "cli -", f"requested model(s) do not apply: {inapplicable}"
        )
        return EXIT_INAPPLICABLE
    return EXIT_OK


def _bounds(args):
    config = io_config.load_config(args.config)
    stats = statistics.stats_of(config.scenario)
    bounds = theory.step_bounds(stats, config.mu)

    print(f"lambda_max: {bounds.lambda_max:.6g}")
    print(f"trace_r: {bounds.trace_r:.6g}")
    print(f"mean_bound (1/tr[R]): {bounds.mean_bound:.6g}")
    print(f"mse_bound (2/tr[R]): {bounds.mse_bound:.6g}")
    if bounds.case is not None:
        print(f"{bounds.case}_bound: {bounds.case_bound:.6g}")
    taus = ", ".join(f"{t:.6g}" for t in bounds.time_constants)
    print(f"time_constants (mu={bounds.mu:g}): {taus}")

    return EXIT_OK


def _presets(args):
    for name in io_config.list_presets():
        config = io_config.load_config(io_config.preset_path(name))
        print(f"{name}: {config.description}")

    return EXIT_OK


def _sweep_rho(args):
    config = io_config.load_config(args.config)
    sweep = experiment.k_norm_sweep(config.scenario, args.rho)
    rows = [
        dict(rho_abs=r, k_norm2=k)
        for r, k in zip(sweep.rho_abs, sweep.k_norm2)
    ]
    prefix = args.out or config.outputs
    fname = report.write_table(
        f"{prefix}_sweep_rho.csv", experiment.SWEEP_RHO_COLUMNS, rows
    )
    print(fname)

    return EXIT_OK


def _sweep_mu(args):
    config = io_config.load_config(args.config)
    rows = experiment.mu_sweep(
        config.scenario, args.mu, steps=args.steps, w0=config.w0
    )
    prefix = args.out or config.outputs
    fname = report.write_table(
        f"{prefix}_sweep_mu.csv", experiment.SWEEP_MU_COLUMNS, rows
    )
    print(fname)

    return EXIT_OK


_COMMANDS = {
    "run": _run,
    "bounds": _bounds,
    "presets": _presets,
    "sweep-rho": _sweep_rho,
    "sweep-mu": _sweep_mu,
}


def main(argv=None):
    """Entry point of the `improlms` console script.

    Parameters
    ----------
    argv: list
      (Optional) arguments without the program name. Default sys.argv.

    Returns
    -------
    exit_code: int
    """
    args = build_parser().parse_args(argv)
    log.configure(debug=args.verbose, logfile=args.logfile)

    try:
        return _COMMANDS[args.command](args)
    except raise_if.ConfigError as err:
        log.warning("configuration error -", err)
        return EXIT_CONFIG
    except (raise_if.InstabilityError, raise_if.NumericalError) as err:
        log.warning("numerical error -", err)
        return EXIT_INSTABILITY
    except (
        raise_if.StructureError,
        raise_if.DegenerateSignalError,
    ) as err:
        log.warning("configuration error -", err)
        return EXIT_CONFIG
    except OSError as err:
        log.warning("I/O error -", err)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
