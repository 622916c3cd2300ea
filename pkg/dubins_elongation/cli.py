"""
Command-line entry point: ``dubins-elongation shortest|feasible|elongate|fleet``.

Exit codes: 0 ok, 1 unexpected error, 2 bad problem file or arguments,
3 start equals goal, 4 length not achievable, 5 tolerance not met.
"""

import argparse
import sys
from typing import Optional, Sequence

from .core.errors import DegenerateInput, DubinsPathError, InfeasibleLength, ProblemFileError, ToleranceNotMet
from .operators.commands import COMMANDS, add_common_arguments
from .utils.logging import logger, set_debug_mode

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_PARSE = 2
EXIT_DEGENERATE = 3
EXIT_INFEASIBLE = 4
EXIT_TOLERANCE = 5

_EXIT_CODES = (
    (ProblemFileError, EXIT_PARSE),
    (DegenerateInput, EXIT_DEGENERATE),
    (InfeasibleLength, EXIT_INFEASIBLE),
    (ToleranceNotMet, EXIT_TOLERANCE),
)


def exit_code_for(exc: BaseException) -> int:
    for kind, code in _EXIT_CODES:
        if isinstance(exc, kind):
            return code
    return EXIT_ERROR


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    add_common_arguments(common)

    parser = argparse.ArgumentParser(
        prog='dubins-elongation',
        description='Curvature-bounded paths of prescribed length between oriented points.',
    )
    sub = parser.add_subparsers(dest='command', metavar='COMMAND', required=True)
    for command in COMMANDS:
        command_parser = sub.add_parser(command.name, parents=[common], help=command.help)
        command.add_arguments(command_parser)
        command_parser.set_defaults(handler=command)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    set_debug_mode(args.debug)

    try:
        output = args.handler.execute(args)
    except DubinsPathError as exc:
        logger.error("%s", exc)
        return exit_code_for(exc)
    except (OSError, ValueError) as exc:
        logger.error("%s", exc)
        logger.debug("Unhandled failure in '%s'", args.command, exc_info=True)
        return EXIT_ERROR

    sys.stdout.write(output)
    sys.stdout.flush()
    return EXIT_OK


def run():
    sys.exit(main())
