"""Resolution of command-line flags against the run configuration; flags win."""

import argparse
import sys
from pathlib import Path
from typing import Optional, Tuple
from loguru import logger
from pydantic import ValidationError

from cli.config_loader import load_config
from cli.parser import parse_assignments
from config.settings import settings
from schemas.config import RunConfig
from schemas.gates import GateSpec
from schemas.levels import CascadeParams, LevelDiagram
from schemas.overlap import QuadratureSpec
from schemas.sweeps import ResultTable
from services.level_service import BetaConvention, level_service
from utils.exceptions import ConfigError
from utils.tables import render_table, write_table

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_UNCONVERGED = 2
EXIT_VALIDATION = 3

ResolvedPoint = Tuple[CascadeParams, Optional[LevelDiagram], Optional[BetaConvention]]

GATE_FIELDS = ("tau1", "tau2", "slope1", "slope2", "phase0")


def _flag(args: argparse.Namespace, name: str):
    return getattr(args, name, None)


class CommandContext:
    """Configuration of one CLI invocation."""

    def __init__(self, args: argparse.Namespace):
        self.args = args
        self.config = load_config(args.config) if _flag(args, "config") else RunConfig()

    def quad(self) -> QuadratureSpec:
        tol = _flag(self.args, "tol")
        quad = self.config.quadrature
        if tol is not None:
            if not tol > 0:
                raise ConfigError(f"--tol must be positive, got {tol}")
            quad = quad.with_tol(tol)
        return quad

    def point(self, default: Optional[CascadeParams] = None) -> ResolvedPoint:
        """
        Cascade parameters of the run.

        Args:
            default: Parameters used when neither the configuration nor the
                flags give a complete point

        Returns:
            (params, diagram, convention): diagram is set when the point comes
            from a [levels] section, in which case beta follows the level
            convention

        Raises:
            ConfigError: If no complete point can be assembled
        """
        diagram = self.config.levels
        convention: Optional[BetaConvention] = None
        values = {}
        if diagram is not None:
            diagram = level_service.validate(diagram)
            values = level_service.to_params(diagram).model_dump()
            convention = "level"
        elif self.config.params is not None:
            values = self.config.params.model_dump()
        elif default is not None:
            values = default.model_dump()

        overrides = parse_assignments(_flag(self.args, "params"))
        unknown = set(overrides) - {"delta", "beta", "g"}
        if unknown:
            raise ConfigError(f"unknown --params keys: {', '.join(sorted(unknown))}", unknown_keys=unknown,
                              section="params")
        values.update(overrides)
        for name in ("delta", "beta", "g"):
            if _flag(self.args, name) is not None:
                values[name] = _flag(self.args, name)
        if diagram is not None and values != level_service.to_params(diagram).model_dump():
            logger.warning("Flags override the [levels] point; continuing in dimensionless parameters")
            diagram, convention = None, None

        missing = [name for name in ("delta", "beta", "g") if name not in values]
        if missing:
            raise ConfigError(f"no cascade point: give a [params] or [levels] section or --params "
                              f"(missing {', '.join(missing)})", section="params")
        try:
            return CascadeParams(**values), diagram, convention
        except ValidationError as e:
            raise ConfigError(f"invalid cascade parameters: {e}", section="params")

    def dimensionless_point(self, default: CascadeParams) -> CascadeParams:
        """Point for the services, with beta read under the configured convention."""
        params, _, convention = self.point(default)
        if convention is not None and convention != settings.beta_convention:
            params = params.model_copy(update={"beta": level_service.sum_detuning(params, convention)})
        return params

    def gate(self, default_kind: str = "identity") -> GateSpec:
        base = self.config.gate or GateSpec(kind=default_kind)
        updates = {name: _flag(self.args, name) for name in GATE_FIELDS if _flag(self.args, name) is not None}
        if _flag(self.args, "gate"):
            updates["kind"] = self.args.gate
        try:
            return GateSpec(**{**base.model_dump(), **updates})
        except ValidationError as e:
            raise ConfigError(f"invalid gate: {e}", section="gate")

    def choose(self, flag: str, configured, fallback):
        """Flag value, else configured value, else fallback."""
        value = _flag(self.args, flag)
        if value is not None:
            return value
        return configured if configured is not None else fallback

    def emit(self, table: ResultTable, echo: bool = False) -> None:
        """Write the table to --out / [output] path, or to stdout; echo=True prints it in both cases."""
        fmt = _flag(self.args, "format") or self.config.output.format
        path = _flag(self.args, "out") or self.config.output.path
        if path:
            written = write_table(table, Path(path), fmt)
            logger.info(f"Wrote {len(table.rows)} rows to {written}")
        if echo or not path:
            sys.stdout.write(render_table(table, fmt))
        for key, value in table.notes.items():
            logger.info(f"{key}: {value}")


def exit_code(converged: bool) -> int:
    return EXIT_OK if converged else EXIT_UNCONVERGED
