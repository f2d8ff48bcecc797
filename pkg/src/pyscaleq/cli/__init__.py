import logging
import sys
from typing import Optional, Sequence

from pydantic import ValidationError

from pyscaleq.errors import PyScaleQError

from .arguments import parse_args
from .commands import COMMANDS, EXIT_INVALID


def setup_logging(verbose: int):
    level = logging.WARNING
    if verbose == 1:
        level = logging.INFO
    elif verbose >= 2:
        level = logging.DEBUG
    logging.basicConfig(
        level=level, stream=sys.stderr,
        format='[%(asctime)s] [%(name)-18s] %(levelname)-8s | %(message)s'
    )


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        args = parse_args(argv)
    except PyScaleQError as e:
        print(f'error: {e}', file=sys.stderr)
        return EXIT_INVALID

    setup_logging(args.verbose)
    try:
        return COMMANDS[args.command](args)
    except (PyScaleQError, ValidationError) as e:
        print(f'error: {e}', file=sys.stderr)
        return EXIT_INVALID
