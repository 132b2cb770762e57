import argparse
import logging
import sys
from typing import List, Optional

from commands import COMMANDS
from commands.context import RunContext
from config import Config
from datalayer.model.lcp_models import OutputFormat
from logger import setup_logger
from utils.exceptions import LexComplexityException, ConfigError


logger = logging.getLogger(__name__)

PROG = "lexcomplexity"


def _global_options() -> argparse.ArgumentParser:
    """
    Options accepted before or after the subcommand name.

    Defaults are suppressed so a subcommand never overwrites a value given
    at the top level; RunContext falls back to the configuration.
    """
    parent = argparse.ArgumentParser(add_help=False, argument_default=argparse.SUPPRESS)
    options = parent.add_argument_group("global options")
    options.add_argument("--config", metavar="PATH", help="Run configuration file (KEY=value lines)")
    options.add_argument("--format", choices=[f.value for f in OutputFormat], help="Output format (default tsv)")
    options.add_argument("--out", metavar="PATH", help="Write output to PATH instead of stdout")
    options.add_argument("--seed", type=int, help="Seed for Monte-Carlo permutation tests")
    options.add_argument("--strict-grid", action="store_true", help="Require ratings on the 0.25 grid")
    options.add_argument("--threshold", type=float, help="CWI complexity threshold")
    options.add_argument("--log-level", choices=["DEBUG", "INFO", "WARNING", "ERROR"], help="Logging level")
    options.add_argument("--instances", metavar="PATH", help="Instances TSV")
    options.add_argument("--ratings", metavar="PATH", help="Ratings TSV of the main annotator group")
    options.add_argument("--profiles", metavar="PATH", help="Annotator profiles TSV")
    options.add_argument("--group", action="append", metavar="NAME=PATH", help="Annotator group ratings")
    options.add_argument("--resource", action="append", metavar="NAME=KIND:KEY:PATH", help="Lexical resource")
    return parent


def build_parser() -> argparse.ArgumentParser:
    parent = _global_options()
    parser = argparse.ArgumentParser(
        prog=PROG,
        parents=[parent],
        description="Lexical complexity prediction and complex word identification toolkit",
    )
    subparsers = parser.add_subparsers(dest="command", metavar="COMMAND", required=True)
    for command in COMMANDS:
        command.register(subparsers, parent)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """
    Run one command.

    Returns:
        0 on success, 2 on usage or configuration errors, 1 on any other error
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2

    config = Config()
    setup_logger(getattr(args, "log_level", None) or config.log_level, config.log_file or None)
    if not config.validate_config():
        print("error: invalid LCP_* environment configuration", file=sys.stderr)
        return 2

    try:
        context = RunContext.from_args(args)
        args.handler(args, context)
    except ConfigError as exc:
        print(f"error: {exc.message}", file=sys.stderr)
        return exc.exit_code
    except LexComplexityException as exc:
        logger.debug(f"{type(exc).__name__}: {exc.details}")
        print(f"error: {exc.message}", file=sys.stderr)
        return exc.exit_code
    except Exception as exc:
        logger.error(f"Unexpected error in {args.command}: {exc}")
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
