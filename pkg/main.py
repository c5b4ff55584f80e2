"""Command-line entry point of the time-reordering entanglement toolkit."""

import time
from typing import Optional, Sequence
from loguru import logger

from cli.commands import COMMAND_HANDLERS, EXIT_INPUT, CommandContext
from cli.parser import build_parser
from utils.exceptions import ConfigError, EigensolverError, ReorderError
from utils.log_setup import configure_logging


def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    Parse arguments, run one command and map failures to exit codes.

    Args:
        argv: Arguments without the program name (default: sys.argv[1:])

    Returns:
        0 on success, 1 on configuration or input errors, 2 when a result did
        not reach its tolerance, 3 when the validation suite fails
    """
    configure_logging()
    start_time = time.time()
    try:
        args = build_parser().parse_args(argv)
        if args.log_level:
            configure_logging(args.log_level)
        logger.info(f"Starting {args.command}")
        code = COMMAND_HANDLERS[args.command](CommandContext(args))
        logger.info(f"{args.command} finished in {time.time() - start_time:.2f}s with exit code {code}")
        return code
    except ConfigError as e:
        where = f" [section {e.section}]" if e.section else ""
        logger.error(f"Configuration error{where}: {e}")
        return EXIT_INPUT
    except EigensolverError as e:
        logger.error(f"Internal error: {e}")
        return EXIT_INPUT
    except (ReorderError, ValueError, OSError) as e:
        logger.error(f"Invalid input: {e}")
        return EXIT_INPUT


if __name__ == "__main__":
    raise SystemExit(main())
