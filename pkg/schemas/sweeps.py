"""Pydantic schemas for parameter sweeps, the delay optimizer and result tables."""

from typing import Dict, List, Literal, Optional, Tuple, Union
from pydantic import BaseModel, ConfigDict, Field, model_validator

from config.settings import settings
from schemas.gates import GateSpec
from schemas.levels import CascadeParams
from schemas.overlap import QuadratureSpec

SweepAxis = Literal["g", "beta", "delta", "kappa2"]
FreeParameter = Literal["tau1", "tau2", "slope1", "slope2"]

SWEEP_COLUMNS = ["axis", "gamma", "re_y1", "im_y1", "re_y2", "im_y2", "err"]
PROFILE_COLUMNS = ["kappa2", "arg_wopt", "linear", "difference"]


class SweepSpec(BaseModel):
    """One-dimensional sweep over a cascade parameter or the profile variable kappa2."""
    model_config = ConfigDict(frozen=True, extra="forbid")

    axis: SweepAxis
    lo: float = Field(..., allow_inf_nan=False)
    hi: float = Field(..., allow_inf_nan=False)
    points: int = Field(..., ge=2)
    fixed: CascadeParams = Field(
        default_factory=lambda: CascadeParams(delta=0.0, beta=0.0, g=2.0),
        description="Values of the parameters not swept",
    )
    gate: GateSpec = Field(default_factory=GateSpec)
    quad: QuadratureSpec = Field(default_factory=QuadratureSpec)
    log_spacing: bool = Field(default=False, description="Geometric grid (g axis only)")
    drop_y2: bool = Field(default=False, description="Large-|delta| regime: y2 replaced by its bound")
    symmetrize: bool = Field(default=False, description="Symmetrize W over photon exchange")
    workers: int = Field(default_factory=lambda: settings.sweep_workers, ge=1)

    @model_validator(mode="after")
    def _check_range(self) -> "SweepSpec":
        if not self.lo < self.hi:
            raise ValueError(f"sweep range must satisfy lo < hi, got [{self.lo}, {self.hi}]")
        if self.axis == "g" and self.lo <= 0:
            raise ValueError(f"g sweeps require lo > 0, got {self.lo}")
        if self.log_spacing and self.axis != "g":
            raise ValueError("log spacing is available on the g axis only")
        return self


class OptimizeSpec(BaseModel):
    """Derivative-free maximization of gamma over delay or linear-phase gates."""
    model_config = ConfigDict(frozen=True, extra="forbid")

    bounds: Dict[FreeParameter, Tuple[float, float]] = Field(
        ..., description="Free parameters with inclusive finite bounds"
    )
    fixed: CascadeParams = Field(default_factory=lambda: CascadeParams(delta=10.0, beta=0.0, g=2.0))
    base: GateSpec = Field(
        default_factory=lambda: GateSpec(kind="delay"),
        description="Values of the gate parameters not searched",
    )
    grid_points: int = Field(default_factory=lambda: settings.optimizer_grid_points, ge=1)
    rel_tol: float = Field(default_factory=lambda: settings.optimizer_rel_tol, gt=0)
    max_evaluations: int = Field(default_factory=lambda: settings.optimizer_max_evaluations, ge=1)
    quad: QuadratureSpec = Field(default_factory=QuadratureSpec)
    drop_y2: bool = Field(default=True)
    workers: int = Field(default_factory=lambda: settings.sweep_workers, ge=1)

    @model_validator(mode="after")
    def _check_bounds(self) -> "OptimizeSpec":
        if not self.bounds:
            raise ValueError("at least one free parameter is required")
        for name, (lo, hi) in self.bounds.items():
            if not (abs(lo) < float("inf") and abs(hi) < float("inf")):
                raise ValueError(f"bounds of {name} must be finite")
            if lo > hi:
                raise ValueError(f"bounds of {name} must satisfy lo <= hi")
        delays = {"tau1", "tau2"} & set(self.bounds)
        slopes = {"slope1", "slope2"} & set(self.bounds)
        if delays and slopes:
            raise ValueError("free parameters must all be delays or all be slopes")
        return self

    @property
    def family(self) -> Literal["delay", "linear"]:
        return "linear" if {"slope1", "slope2"} & set(self.bounds) else "delay"


class TraceEntry(BaseModel):
    """One objective evaluation of the optimizer, in logical order."""
    model_config = ConfigDict(frozen=True)

    index: int
    stage: Literal["grid", "local"]
    parameters: Dict[str, float]
    gamma: float
    error: float
    converged: bool


class OptimizeResult(BaseModel):
    """Best point, best value and the full evaluation trace."""
    model_config = ConfigDict(frozen=True)

    best_parameters: Dict[str, float]
    best_gamma: float
    converged: bool
    trace: List[TraceEntry]
    message: str = ""


class ResultTable(BaseModel):
    """Named columns and rows ready for CSV or JSON output."""
    model_config = ConfigDict(frozen=True)

    columns: List[str]
    rows: List[List[Union[float, str]]]
    converged: bool = True
    notes: Dict[str, Union[float, str]] = Field(default_factory=dict)
    row_warnings: List[List[str]] = Field(default_factory=list)
    label: Optional[str] = None
