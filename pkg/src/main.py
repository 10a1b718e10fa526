"""
Command-line entry point.

    ou-impact value      --config config/examples/value.json
    ou-impact montecarlo --config config/examples/montecarlo.json --out report.json --trace path0.csv
    ou-impact oracles    --config config/examples/oracles.json
    ou-impact limits     --config config/examples/limits.json --seed 7

Exit codes: 0 pass, 1 validation failure, 2 numerical-acceptance failure,
3 internal error.
"""

import argparse
import json
import sys
from pathlib import Path
from typing import List, Optional

import structlog

from .commands import COMMANDS
from .utils.errors import ConfigValidationError, DomainError
from .utils.logging_setup import configure_logging
from .utils.run_config import load_run_config

logger = structlog.get_logger(__name__)

EXIT_PASS = 0
EXIT_VALIDATION = 1
EXIT_ACCEPTANCE = 2
EXIT_INTERNAL = 3


def _seed(value: str) -> int:
    try:
        seed = int(value, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"seed must be an integer, got {value!r}")
    if not 0 <= seed < 2 ** 64:
        raise argparse.ArgumentTypeError("seed must fit in an unsigned 64-bit integer")
    return seed


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ou-impact",
        description="Closed-form verification for optimal trading with temporary impact in an OU market",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)
    helps = {
        "value": "Value, certainty equivalent and duality gap",
        "montecarlo": "Monte Carlo value of a policy (optionally with perturbations)",
        "oracles": "Closed forms against discrete oracles",
        "limits": "Frictionless limit and long-horizon asymptotics",
    }
    for name, help_text in helps.items():
        sub = subparsers.add_parser(name, help=help_text)
        sub.add_argument("--config", required=True, type=Path, help="JSON run document")
        sub.add_argument("--out", type=Path, help="Write the JSON report here as well as to stdout")
        sub.add_argument("--trace", help="Single-path CSV trace (montecarlo only)")
        sub.add_argument("--seed", type=_seed, help="Override the run document's seed")
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    configure_logging()

    try:
        rc = load_run_config(args.config, args.seed)
        if rc.command != args.command:
            raise ConfigValidationError("command", f"document is for {rc.command!r}, not {args.command!r}")
        report, artifacts = COMMANDS[args.command](rc, args.trace)
        text = json.dumps(report, sort_keys=True, indent=2) + "\n"
    except (ConfigValidationError, DomainError) as e:
        logger.error("validation_failed", error=str(e))
        print(f"❌ {e}", file=sys.stderr)
        return EXIT_VALIDATION
    except Exception as e:
        logger.exception("command_failed", command=args.command)
        print(f"❌ Internal error: {e}", file=sys.stderr)
        return EXIT_INTERNAL
    try:
        if args.out:
            args.out.write_text(text, encoding="utf-8")
        for artifact in artifacts:
            artifact.write()
    except OSError as e:
        logger.error("write_failed", error=str(e))
        print(f"❌ Cannot write output: {e}", file=sys.stderr)
        return EXIT_INTERNAL
    sys.stdout.write(text)

    if not report["pass"]:
        logger.warning("acceptance_failed", command=args.command)
        return EXIT_ACCEPTANCE
    logger.info("command_passed", command=args.command)
    return EXIT_PASS


if __name__ == "__main__":
    sys.exit(main())
