"""wopt-profile: phase of the optimal gate along kappa2."""

from cli.commands.context import CommandContext, exit_code
from services.sweep_service import sweep_service
from utils.exceptions import ConfigError


def run_profile(ctx: CommandContext) -> int:
    lo, hi = ctx.choose("range", ctx.config.sweep.range, (-5.0, 5.0))
    points = ctx.choose("points", ctx.config.sweep.points, 101)
    if not lo < hi:
        raise ConfigError(f"range must satisfy lo < hi, got [{lo}, {hi}]")
    if points < 2:
        raise ConfigError(f"points must be >= 2, got {points}")
    table = sweep_service.fig2a_table(points, lo, hi)
    ctx.emit(table)
    return exit_code(table.converged)
