import argparse
import logging
import sys
from typing import Any
from typing import Sequence

from sombor.bounds import BoundError
from sombor.bounds import VerificationFailure
from sombor.cli.commands import COMMANDS
from sombor.cli.commands import UsageError
from sombor.cli.config import ConfigError
from sombor.cli.config import build_config
from sombor.cli.config import load_config_file
from sombor.enumeration import EnumerationError
from sombor.graph import GraphError
from sombor.graph6 import FormatError
from sombor.indices import ClosedFormRangeError
from sombor.indices import DegreeError
from sombor.lemmas import LemmaDomainError
from sombor.logger import get_logger
from sombor.logger import set_console_level
from sombor.report import WRITERS
from sombor.report import ReportError

logger = get_logger()

EXIT_OK = 0
EXIT_VERIFICATION = 1
EXIT_USAGE = 2

INPUT_ERRORS = (
    ConfigError,
    UsageError,
    GraphError,
    FormatError,
    EnumerationError,
    ReportError,
    BoundError,
    ClosedFormRangeError,
    DegreeError,
    LemmaDomainError,
    OSError,
)


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", "-c", help="Path to JSON configuration file")
    parser.add_argument(
        "--input", "-i", help="graph6 or edge-list file, '-' for standard input"
    )
    parser.add_argument(
        "--family", choices=["path", "cycle", "star", "complete"], help="Graph family"
    )
    parser.add_argument("--n", "--order", dest="n", type=int, help="Graph order")
    parser.add_argument("--ell", type=int, help="Cyclomatic number of the class")
    parser.add_argument(
        "--index",
        action="append",
        type=str.lower,
        choices=["so", "dso", "hso", "cdso", "m1"],
        help="Index to evaluate, repeatable (default: all)",
    )
    parser.add_argument(
        "--format", "-f", choices=["json", "csv", "human"], help="Output format"
    )
    parser.add_argument("--workers", "-w", type=int, help="Worker processes")
    parser.add_argument("--tol", type=float, help="Equality tolerance (default: 1e-9)")
    parser.add_argument("--smax", type=int, help="Largest s in the lemma sweeps")
    parser.add_argument(
        "--dedup", action="store_true", help="One graph per isomorphism class"
    )
    parser.add_argument(
        "--exhaustive",
        action="store_true",
        help="Run over every connected graph of order --n",
    )
    parser.add_argument(
        "--class",
        dest="constraint",
        choices=["connected", "tree", "cyclomatic"],
        help="Graph class for extremal searches",
    )
    parser.add_argument("--direction", choices=["min", "max"], help="Search direction")
    parser.add_argument(
        "--debug", "-v", action="store_true", help="Enable verbose logging"
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sombor", description="Sombor-type index laboratory"
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    descriptions = {
        "compute": "Index values of the input graphs",
        "bounds": "Check every proven bound on the input graphs",
        "monotonicity": "Classify every non-adjacent pair of the input graphs",
        "extremal": "Minimisers and maximisers of an index over a graph class",
        "conjectures": "Witness properties for the open extremal conjectures",
        "sweeps": "Sign sweeps of the auxiliary functions used in the proofs",
        "roundtrip": "graph6 and edge-list self test",
    }

    for name, description in descriptions.items():
        sub = subparsers.add_parser(
            name, help=description, argument_default=argparse.SUPPRESS
        )
        _add_common(sub)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    flags: dict[str, Any] = dict(vars(args))
    command = flags.pop("command")
    config_path = flags.pop("config", None)

    try:
        file_values = load_config_file(config_path) if config_path else {}
        if config_path:
            logger.info(f"Loaded configuration from {config_path}")
        config = build_config(command, file_values, flags)
    except ConfigError as e:
        logger.error(str(e))
        return EXIT_USAGE

    if config["debug"]:
        set_console_level(logging.INFO)

    try:
        reports = COMMANDS[command](config)
        WRITERS[config["format"]](reports, sys.stdout)
    except VerificationFailure as e:
        logger.error(f"Verification failed: {e}")
        return EXIT_VERIFICATION
    except INPUT_ERRORS as e:
        logger.error(f"{type(e).__name__}: {e}")
        return EXIT_USAGE

    return EXIT_OK
