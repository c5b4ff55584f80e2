"""validate: run the oracle suite and report PASS/FAIL per check."""

import sys

from cli.commands.context import EXIT_OK, EXIT_VALIDATION, CommandContext
from services.validation_service import validation_service


def run_validate(ctx: CommandContext) -> int:
    results = validation_service.run_suite(samples=ctx.args.samples, seed=ctx.args.seed, quad=ctx.quad())
    for result in results:
        sys.stdout.write(result.line() + "\n")
    return EXIT_OK if all(result.passed for result in results) else EXIT_VALIDATION
