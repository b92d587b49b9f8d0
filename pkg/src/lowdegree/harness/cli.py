"""
Command-line front end: generate, run, sweep, report and verify.

Exit codes: 0 success, 1 unexpected error, 2 configuration error, 3 query budget or cap exceeded,
4 invariant violation or an invalid object reaching a learner.
"""
import argparse
import logging
import os
import sys
from dataclasses import replace
from typing import Any, Dict, List, Optional

import yaml

from .. import VERSION_STRING
from ..bh.sweeps import SWEEPS, write_sweep_csv
from ..config import config
from ..core.exceptions import (BudgetExceededError, CapExceededError, ConfigError, InvalidInputError,
                               InvariantViolationError)
from ..visualization.figures import save_report_figures
from .experiment import ExperimentConfig, run_experiment
from .instances import FAMILIES, generate, save_instance
from .records import load_records, write_metadata
from .reporting import build_report, write_report
from .verify import run_battery, write_battery_csv

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_UNEXPECTED = 1
EXIT_CONFIG = 2
EXIT_BUDGET = 3
EXIT_INVARIANT = 4

VERIFY_CSV = "verify.csv"


def setup_logging(level: Optional[str] = None) -> None:
    """One stream handler on the package logger."""
    package_logger = logging.getLogger("lowdegree")
    for handler in list(package_logger.handlers):
        package_logger.removeHandler(handler)
    handler = logging.StreamHandler()
    handler.setFormatter(logging.Formatter(config.logging.format))
    package_logger.addHandler(handler)
    package_logger.setLevel((level or config.logging.level).upper())
    package_logger.propagate = False


def _parse_assignment(text: str) -> Dict[str, Any]:
    if "=" not in text:
        raise ConfigError(f"Expected key=value, got {text!r}")
    key, value = text.split("=", 1)
    return {key.strip(): yaml.safe_load(value)}


def _out_dir(args, fallback: str) -> str:
    return args.out or os.path.join(config.output.directory, fallback)


def _load_experiment(args) -> ExperimentConfig:
    if not args.config:
        raise ConfigError(f"'{args.command}' needs --config <experiment.yaml>")
    experiment = ExperimentConfig.load(args.config)
    out = args.out or experiment.out or os.path.join(config.output.directory, experiment.name)
    return experiment.with_overrides(seed=args.seed, out=out, shot_multiplier=args.shot_multiplier)


# ----------------------------------------------------------------------------
# Verbs
# ----------------------------------------------------------------------------
def cmd_generate(args) -> int:
    params: Dict[str, Any] = {"family": args.family}
    for assignment in args.set or []:
        params.update(_parse_assignment(assignment))
    if args.seed is not None:
        params["seed"] = args.seed
    instance = generate(params)
    path = args.out or config.output.directory
    if not path.endswith((".yaml", ".yml")):
        os.makedirs(path, exist_ok=True)
        path = os.path.join(path, f"{args.family}_{params['seed']}.yaml")
    else:
        os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
    save_instance(instance, path)
    logger.info(f"Wrote {args.family} instance of degree {instance.degree} to {path}")
    return EXIT_OK


def cmd_run(args) -> int:
    experiment = _load_experiment(args)
    run_experiment(experiment, threads=args.threads)
    return EXIT_OK


def _sweep_experiments(args, experiment: ExperimentConfig) -> List[ExperimentConfig]:
    if args.shots:
        if experiment.task != "learn-pauli-channel":
            raise ConfigError("--shots sweeps apply to learn-pauli-channel; use --multipliers otherwise")
        key = "shots" if experiment.options.get("variant") == "entangled" else "probes"
        experiments = []
        for shots in args.shots:
            options = dict(experiment.options, **{key: int(shots)})
            experiments.append(replace(experiment, options=options,
                                       out=os.path.join(experiment.out, f"{key}_{int(shots)}")))
        return experiments
    return [experiment.with_overrides(out=os.path.join(experiment.out, f"x{m:g}"), shot_multiplier=m)
            for m in args.multipliers]


def cmd_sweep(args) -> int:
    if args.bh:
        if args.bh not in SWEEPS:
            raise ConfigError(f"Unknown sweep {args.bh!r}; expected one of {tuple(SWEEPS)}")
        out = _out_dir(args, f"sweep_{args.bh}")
        os.makedirs(out, exist_ok=True)
        result = SWEEPS[args.bh](count=args.count, seed=args.seed or 0, threads=args.threads)
        write_sweep_csv(result, os.path.join(out, f"{args.bh}.csv"))
        with open(os.path.join(out, f"{args.bh}_summary.yaml"), "w") as f:
            yaml.safe_dump(result.summary(), f, sort_keys=False)
        write_metadata(out, {"sweep": args.bh, "count": args.count, "seed": args.seed or 0})
        if not result.all_hold and args.bh != "unitary_l1":
            raise InvariantViolationError(f"Sweep {args.bh}: inequality violated")
        return EXIT_OK

    experiment = _load_experiment(args)
    records = []
    for sub in _sweep_experiments(args, experiment):
        records.extend(run_experiment(sub, threads=args.threads))
    report = build_report(records)
    write_report(report, experiment.out)
    if args.plot:
        save_report_figures(report, experiment.out)
    return EXIT_OK


def cmd_report(args) -> int:
    report = build_report(load_records(args.records))
    out = _out_dir(args, "report")
    write_report(report, out)
    if args.plot:
        save_report_figures(report, out)
    return EXIT_OK


def cmd_verify(args) -> int:
    outcomes = run_battery(seed=args.seed or 0)
    if args.out:
        os.makedirs(args.out, exist_ok=True)
        write_battery_csv(outcomes, os.path.join(args.out, VERIFY_CSV))
    failed = [o for o in outcomes if not o.passed]
    if failed:
        raise InvariantViolationError(f"{len(failed)} of {len(outcomes)} verify checks failed")
    return EXIT_OK


# ----------------------------------------------------------------------------
# Parser and entry point
# ----------------------------------------------------------------------------
def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=None, help="Master seed (overrides the experiment's)")
    common.add_argument("--config", default=None, help="Experiment config (YAML)")
    common.add_argument("--settings", default=None, help="Replacement for the packaged config.yaml")
    common.add_argument("--out", default=None, help="Output directory (or instance file for generate)")
    common.add_argument("--threads", type=int, default=None, help="Worker threads for repetitions")
    common.add_argument("--shot-multiplier", type=float, default=None, dest="shot_multiplier",
                        help="Scale every theory-shaped shot count")
    common.add_argument("--log-level", default=None, dest="log_level", help="DEBUG, INFO, WARNING ...")

    parser = argparse.ArgumentParser(prog="lowdegree", description=VERSION_STRING)
    sub = parser.add_subparsers(dest="command", required=True)

    p_generate = sub.add_parser("generate", parents=[common], help="Generate a seeded ground-truth instance")
    p_generate.add_argument("family", choices=FAMILIES)
    p_generate.add_argument("--set", action="append", metavar="KEY=VALUE", help="Family parameter")
    p_generate.set_defaults(handler=cmd_generate)

    p_run = sub.add_parser("run", parents=[common], help="Run an experiment config")
    p_run.set_defaults(handler=cmd_run)

    p_sweep = sub.add_parser("sweep", parents=[common], help="Error-vs-shots or inequality sweep")
    p_sweep.add_argument("--multipliers", type=float, nargs="+", default=[0.25, 1.0, 4.0])
    p_sweep.add_argument("--shots", type=int, nargs="+", default=None, help="Absolute shot or probe counts")
    p_sweep.add_argument("--bh", default=None, help=f"Inequality sweep: one of {', '.join(SWEEPS)}")
    p_sweep.add_argument("--count", type=int, default=100, help="Instances in an inequality sweep")
    p_sweep.add_argument("--plot", action="store_true", help="Also write PNG plots")
    p_sweep.set_defaults(handler=cmd_sweep)

    p_report = sub.add_parser("report", parents=[common], help="Aggregate experiment records")
    p_report.add_argument("records", nargs="+", help="Record files or directories")
    p_report.add_argument("--plot", action="store_true", help="Also write PNG plots")
    p_report.set_defaults(handler=cmd_report)

    p_verify = sub.add_parser("verify", parents=[common], help="Witness and circuit cross-check battery")
    p_verify.set_defaults(handler=cmd_verify)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    setup_logging(args.log_level)
    try:
        if args.settings:
            try:
                config.load(args.settings)
            except (OSError, ValueError, yaml.YAMLError) as e:
                raise ConfigError(f"Cannot load settings {args.settings}: {e}") from e
        setup_logging(args.log_level)
        return args.handler(args)
    except ConfigError as e:
        logger.error(f"Configuration error: {e}")
        return EXIT_CONFIG
    except (BudgetExceededError, CapExceededError) as e:
        logger.error(f"Budget exceeded: {e}")
        return EXIT_BUDGET
    except (InvariantViolationError, InvalidInputError) as e:
        logger.error(f"Invariant violated: {e}")
        return EXIT_INVARIANT
    except Exception as e:
        logger.exception(f"Unexpected error: {e}")
        return EXIT_UNEXPECTED


if __name__ == "__main__":
    sys.exit(main())
