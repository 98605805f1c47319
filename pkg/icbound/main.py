"""
Command-line Entry Point
Parser construction, logging setup and exit-code mapping for the sub-commands
"""

import argparse
import logging
import sys
from typing import List, Optional

from icbound import __version__
from icbound.commands import bounds, design, minrank, simulate
from icbound.commands.render import render
from icbound.config import settings
from icbound.core.exceptions import IcboundException, InstanceFormatError
from icbound.core.logging import setup_logging

logger = logging.getLogger(__name__)

COMMANDS = (minrank, bounds, design, simulate)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog=settings.APP_NAME,
        description="Bounds and linear schemes for index coding with (coded) side information",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    subparsers = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")
    for module in COMMANDS:
        module.register(subparsers)
    return parser


def _level(verbose: int) -> Optional[str]:
    if verbose >= 2:
        return "DEBUG"
    if verbose == 1:
        return "INFO"
    return None


def main(argv: Optional[List[str]] = None) -> int:
    """
    Run one sub-command and print its report

    Returns:
        0 on success, 1 on a computational error, 2 on a usage or input error
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE

    setup_logging(_level(args.verbose))
    logger.debug(f"Running {args.command}")

    try:
        report = args.handler(args)
    except (InstanceFormatError, FileNotFoundError) as exc:
        print(f"{parser.prog} {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except IcboundException as exc:
        print(f"{parser.prog} {args.command}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAILURE

    print(render(report, args.format))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
