"""gamma: negativity at one parameter point."""

from loguru import logger

from cli.commands.context import CommandContext, exit_code
from schemas.sweeps import ResultTable
from services.gate_service import gate_service
from services.level_service import level_service
from services.negativity_service import negativity_service
from services.overlap_service import overlap_service
from utils.exceptions import ConfigError

GAMMA_COLUMNS = ["gamma", "err", "re_y1", "im_y1", "re_y2", "im_y2", "norm_x", "norm_y", "peres"]


def run_gamma(ctx: CommandContext) -> int:
    """Evaluate gamma, cross-check it against the Peres negativity and emit a one-row table."""
    params, diagram, convention = ctx.point()
    spec = ctx.gate("identity")
    quad = ctx.quad()

    if ctx.args.full:
        if diagram is None:
            raise ConfigError("--full needs a [levels] section", section="levels")
        w = gate_service.build_physical_gate(spec, diagram)
        result = overlap_service.gamma_full(diagram, w, quad)
    else:
        w = gate_service.build_gate(spec, level_service.frame(params, convention))
        result = overlap_service.gamma_leading(
            params,
            w,
            quad,
            symmetrize=ctx.choose("symmetrize", ctx.config.sweep.symmetrize, False),
            drop_y2=ctx.choose("drop_y2", ctx.config.sweep.drop_y2, False),
            convention=convention,
        )

    peres = negativity_service.peres_negativity(negativity_service.rho_from_overlap(result))
    for warning in result.warnings:
        logger.warning(warning)
    logger.info(f"gamma = {result.gamma:.12g} +/- {result.error_estimate:.3g} ({result.mode}, gate={spec.kind})")

    table = ResultTable(
        columns=list(GAMMA_COLUMNS),
        rows=[[
            result.gamma,
            result.error_estimate,
            result.y1.real,
            result.y1.imag,
            result.y2.real,
            result.y2.imag,
            result.norm_x,
            result.norm_y,
            peres,
        ]],
        converged=result.converged,
        notes={"mode": result.mode, "gate": spec.kind, "y2": "dropped" if result.y2_dropped else "included"},
        label="gamma",
    )
    ctx.emit(table, echo=True)
    return exit_code(result.converged)
