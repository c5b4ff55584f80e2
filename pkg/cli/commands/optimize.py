"""optimize-delays: maximize gamma over delay or linear-phase parameters."""

from typing import Dict, List, Tuple
from loguru import logger
from pydantic import ValidationError

from cli.commands.context import CommandContext, exit_code
from config.settings import settings
from schemas.levels import CascadeParams
from schemas.sweeps import OptimizeResult, OptimizeSpec, ResultTable
from services.optimizer_service import PARAMETER_ORDER, optimizer_service
from utils.exceptions import ConfigError

DEFAULT_BOUNDS = {"tau1": (0.0, 3.0), "tau2": (0.0, 3.0), "slope1": (-3.0, 3.0), "slope2": (-3.0, 3.0)}
DEFAULT_FIXED = CascadeParams(delta=10.0, beta=0.0, g=2.0)


def trace_table(result: OptimizeResult, names: List[str]) -> ResultTable:
    """Evaluation trace, one row per objective evaluation in logical order."""
    rows = []
    for entry in result.trace:
        rows.append(
            [float(entry.index), entry.stage]
            + [entry.parameters[name] for name in names]
            + [entry.gamma, entry.error, 1.0 if entry.converged else 0.0]
        )
    notes: Dict[str, object] = {f"best_{name}": value for name, value in result.best_parameters.items()}
    notes["best_gamma"] = result.best_gamma
    notes["message"] = result.message
    return ResultTable(
        columns=["index", "stage"] + names + ["gamma", "err", "converged"],
        rows=rows,
        converged=result.converged,
        notes=notes,
        label="optimize-delays",
    )


def run_optimize(ctx: CommandContext) -> int:
    section = ctx.config.optimize
    free = ctx.choose("free", section.free or None, ["tau1", "tau2"])
    names = [name for name in PARAMETER_ORDER if name in free]
    bounds: Dict[str, Tuple[float, float]] = {}
    for name in names:
        bounds[name] = tuple(ctx.args.range) if ctx.args.range else section.bounds.get(name, DEFAULT_BOUNDS[name])

    try:
        spec = OptimizeSpec(
            bounds=bounds,
            fixed=ctx.dimensionless_point(DEFAULT_FIXED),
            base=ctx.gate("delay"),
            grid_points=ctx.choose("grid_points", section.grid_points, settings.optimizer_grid_points),
            rel_tol=section.rel_tol or settings.optimizer_rel_tol,
            max_evaluations=ctx.choose("max_evaluations", section.max_evaluations,
                                       settings.optimizer_max_evaluations),
            quad=ctx.quad(),
            drop_y2=ctx.choose("drop_y2", section.drop_y2, True),
            workers=ctx.choose("workers", section.workers, settings.sweep_workers),
        )
    except ValidationError as e:
        raise ConfigError(f"invalid optimization: {e}", section="optimize")

    result = optimizer_service.optimize_delays(spec)
    best = ", ".join(f"{name}={value:.6g}" for name, value in result.best_parameters.items())
    logger.info(f"best gamma = {result.best_gamma:.12g} at {best} ({result.message})")
    ctx.emit(trace_table(result, names))
    return exit_code(result.converged)
