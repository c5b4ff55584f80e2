"""Pydantic schemas for the INI run configuration of the command-line front end."""

from typing import Dict, List, Literal, Optional, Tuple
from pydantic import BaseModel, ConfigDict, Field, model_validator

from schemas.gates import GateSpec
from schemas.levels import CascadeParams, LevelDiagram
from schemas.overlap import QuadratureSpec
from schemas.sweeps import FreeParameter


class OutputConfig(BaseModel):
    """Where and how tables are written."""
    model_config = ConfigDict(frozen=True, extra="forbid")

    format: Literal["csv", "json"] = Field(default="csv")
    path: Optional[str] = Field(default=None, description="Output file; stdout when unset")


class SweepConfig(BaseModel):
    """Optional [sweep] section."""
    model_config = ConfigDict(frozen=True, extra="forbid")

    range: Optional[Tuple[float, float]] = None
    points: Optional[int] = Field(default=None, ge=2)
    log_spacing: bool = False
    drop_y2: Optional[bool] = None
    symmetrize: bool = False
    workers: Optional[int] = Field(default=None, ge=1)


class OptimizeConfig(BaseModel):
    """Optional [optimize] section."""
    model_config = ConfigDict(frozen=True, extra="forbid")

    free: List[FreeParameter] = Field(default_factory=list)
    bounds: Dict[FreeParameter, Tuple[float, float]] = Field(default_factory=dict)
    grid_points: Optional[int] = Field(default=None, ge=1)
    max_evaluations: Optional[int] = Field(default=None, ge=1)
    rel_tol: Optional[float] = Field(default=None, gt=0)
    drop_y2: bool = True
    workers: Optional[int] = Field(default=None, ge=1)


class RunConfig(BaseModel):
    """Complete run configuration: a physical diagram or dimensionless parameters plus settings."""
    model_config = ConfigDict(frozen=True, extra="forbid")

    levels: Optional[LevelDiagram] = None
    params: Optional[CascadeParams] = None
    gate: Optional[GateSpec] = None
    quadrature: QuadratureSpec = Field(default_factory=QuadratureSpec)
    sweep: SweepConfig = Field(default_factory=SweepConfig)
    optimize: OptimizeConfig = Field(default_factory=OptimizeConfig)
    output: OutputConfig = Field(default_factory=OutputConfig)

    @model_validator(mode="after")
    def _one_point_source(self) -> "RunConfig":
        if self.levels is not None and self.params is not None:
            raise ValueError("give either a [levels] or a [params] section, not both")
        return self
