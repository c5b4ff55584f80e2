"""sweep-g, sweep-beta, sweep-delta: gamma along one cascade parameter."""

from typing import Callable, Dict, Tuple
from pydantic import ValidationError

from cli.commands.context import CommandContext, exit_code
from config.settings import settings
from schemas.levels import CascadeParams
from schemas.sweeps import SweepSpec
from services.sweep_service import sweep_service
from utils.exceptions import ConfigError

# axis -> (default range, default points, default gate, drop y2 by default)
AXIS_DEFAULTS: Dict[str, Tuple[Tuple[float, float], int, str, bool]] = {
    "g": ((0.1, 4.0), 40, "optimal", True),
    "beta": ((-6.0, 6.0), 49, "optimal", True),
    "delta": ((0.0, 10.0), 41, "identity", False),
}
AXIS_FIXED: Dict[str, CascadeParams] = {
    "g": CascadeParams(delta=10.0, beta=0.0, g=2.0),
    "beta": CascadeParams(delta=10.0, beta=0.0, g=2.0),
    "delta": CascadeParams(delta=0.0, beta=0.0, g=2.0),
}


def run_sweep(ctx: CommandContext, axis: str) -> int:
    """Build the sweep of one axis from flags and configuration, run it and emit the table."""
    default_range, default_points, default_gate, default_drop = AXIS_DEFAULTS[axis]
    section = ctx.config.sweep
    lo, hi = ctx.choose("range", section.range, default_range)
    try:
        spec = SweepSpec(
            axis=axis,
            lo=lo,
            hi=hi,
            points=ctx.choose("points", section.points, default_points),
            fixed=ctx.dimensionless_point(AXIS_FIXED[axis]),
            gate=ctx.gate(default_gate),
            quad=ctx.quad(),
            log_spacing=ctx.choose("log_spacing", section.log_spacing if axis == "g" else None, False),
            drop_y2=ctx.choose("drop_y2", section.drop_y2, default_drop),
            symmetrize=ctx.choose("symmetrize", section.symmetrize, False),
            workers=ctx.choose("workers", section.workers, settings.sweep_workers),
        )
    except ValidationError as e:
        raise ConfigError(f"invalid sweep: {e}", section="sweep")

    table = sweep_service.sweep(spec)
    ctx.emit(table)
    return exit_code(table.converged)


def sweep_command(axis: str) -> Callable[[CommandContext], int]:
    return lambda ctx: run_sweep(ctx, axis)
