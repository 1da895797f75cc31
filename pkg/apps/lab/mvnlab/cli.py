"""
Command-line entry point: ``mvnlab COMMAND [options]``.

The command may also come from the ``command`` key of a ``--config`` file. Values
are merged as bundled defaults < config file < flags; ``MVNLAB_*`` environment
settings fill anything left unset.
"""

from __future__ import annotations

import argparse
from collections.abc import Sequence

import yaml
from pydantic import ValidationError

from mvnlab.config.settings import get_settings
from mvnlab.models.experiment import Command
from mvnlab.orchestrators.experiment_runner import EXIT_INPUT, run_experiment
from mvnlab.utils.config_loader import ExperimentConfigLoader
from mvnlab.utils.observability import Observability

logger = Observability.get_logger("cli")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mvnlab",
        description="Experiments on affiliated operators of finite block von Neumann algebras",
    )
    parser.add_argument(
        "command",
        nargs="?",
        choices=[c.value for c in Command],
        help="experiment to run (may instead be given in --config)",
    )
    parser.add_argument("--config", metavar="PATH", help="YAML experiment file")
    parser.add_argument("--out", metavar="PATH", help="CSV output path ('-' for stdout)")
    parser.add_argument("--seed", type=int, help="seed for every random draw")
    parser.add_argument("--tol", type=float, help="pass/fail tolerance")
    parser.add_argument("--n-schedule", metavar="A,B,C", help="indices n for product formulas and sequences")
    parser.add_argument("--t-values", metavar="X,Y", help="time parameters t")
    parser.add_argument(
        "--input", action="append", metavar="PATH", dest="inputs", help="operator file (repeatable)"
    )
    parser.add_argument("--family", help="bundled operator family for topology-compare")
    parser.add_argument("--spec", help="subgroup kind for lie-closure, or 'all'")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    """Parse arguments, build the experiment request and run it; returns the exit code."""
    args = build_parser().parse_args(argv)
    settings = get_settings()
    overrides = {
        "out": args.out,
        "seed": args.seed,
        "tol": args.tol,
        "n_schedule": args.n_schedule,
        "t_values": args.t_values,
        "inputs": args.inputs,
        "family": args.family,
        "spec": args.spec,
    }
    try:
        config = ExperimentConfigLoader.build(
            command=args.command,
            config_path=args.config,
            overrides=overrides,
            fallbacks={"seed": settings.default_seed, "tol": settings.default_tol},
        )
    except (FileNotFoundError, ValidationError, yaml.YAMLError, ValueError) as e:
        logger.error("Invalid experiment request: %s", e)
        return EXIT_INPUT
    return run_experiment(config, settings)


__all__ = ["build_parser", "main"]
