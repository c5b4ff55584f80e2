"""Command handlers of the command-line front end."""

from typing import Callable, Dict

from cli.commands.context import (
    EXIT_INPUT,
    EXIT_OK,
    EXIT_UNCONVERGED,
    EXIT_VALIDATION,
    CommandContext,
)
from cli.commands.gamma import run_gamma
from cli.commands.optimize import run_optimize
from cli.commands.profile import run_profile
from cli.commands.sweeps import sweep_command
from cli.commands.validate import run_validate

COMMAND_HANDLERS: Dict[str, Callable[[CommandContext], int]] = {
    "gamma": run_gamma,
    "sweep-g": sweep_command("g"),
    "sweep-beta": sweep_command("beta"),
    "sweep-delta": sweep_command("delta"),
    "wopt-profile": run_profile,
    "optimize-delays": run_optimize,
    "validate": run_validate,
}

__all__ = [
    "COMMAND_HANDLERS",
    "CommandContext",
    "EXIT_OK",
    "EXIT_INPUT",
    "EXIT_UNCONVERGED",
    "EXIT_VALIDATION"
]
