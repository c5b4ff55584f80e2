"""Pydantic schemas for quadrature settings and overlap results."""

from typing import List, Literal, Optional, Union
from pydantic import BaseModel, ConfigDict, Field

from config.settings import settings


class QuadratureSpec(BaseModel):
    """Adaptive quadrature settings shared by every integral."""
    model_config = ConfigDict(frozen=True, extra="forbid")

    abs_tol: float = Field(
        default_factory=lambda: settings.quad_abs_tol, gt=0, description="Absolute tolerance"
    )
    max_subdivisions: int = Field(
        default_factory=lambda: settings.quad_max_subdivisions, gt=0, description="Cap on rectangle splits"
    )
    truncation_halfwidth: Optional[float] = Field(
        default=None, gt=0, description="Half-width K of truncated axes; automatic when unset"
    )
    truncation_factor: float = Field(
        default_factory=lambda: settings.quad_truncation_factor, gt=0,
        description="Automatic K = factor * max(1, g, |S0|, |delta|)"
    )
    richardson_check: bool = Field(
        default_factory=lambda: settings.quad_richardson_check,
        description="Re-run truncated integrals at 2K and compare"
    )

    def with_tol(self, abs_tol: float) -> "QuadratureSpec":
        return self.model_copy(update={"abs_tol": abs_tol})

    def halfwidth(self, *scales: float) -> float:
        """Truncation half-width for the given parameter scales."""
        if self.truncation_halfwidth is not None:
            return self.truncation_halfwidth
        return self.truncation_factor * max([1.0] + [abs(x) for x in scales])


class IntegralValue(BaseModel):
    """One complex integral with its error estimate."""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    value: complex
    error: float = Field(..., ge=0)
    converged: bool = True
    warnings: List[str] = Field(default_factory=list)


class NormResult(BaseModel):
    """Numerical <alpha_j|alpha_j> split into direct and cross terms."""
    model_config = ConfigDict(frozen=True)

    value: float = Field(..., description="Direct plus cross term")
    direct: float = Field(..., description="Sum of the two squared summands")
    cross: float = Field(..., description="Interference of the two summands")
    error: float = Field(..., ge=0)
    converged: bool = True
    warnings: List[str] = Field(default_factory=list)


class OverlapResult(BaseModel):
    """Numerator integrals, norms and the resulting negativity gamma."""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    y1: complex = Field(..., description="Cross-generation overlap")
    y2: complex = Field(..., description="Same-generation overlap")
    norm_x: float = Field(default=2.0, description="<alpha_x|alpha_x>")
    norm_y: float = Field(default=2.0, description="<alpha_y|alpha_y>")
    norm_denominator: float = Field(..., gt=0)
    gamma: float = Field(..., ge=0)
    error_estimate: float = Field(..., ge=0)
    mode: Literal["leading", "full"]
    converged: bool = True
    y2_dropped: bool = False
    warnings: List[str] = Field(default_factory=list)

    @property
    def numerator(self) -> complex:
        return self.y1 + self.y2


class ClosedFormResult(BaseModel):
    """Closed-form value with a statement of its regime of validity."""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    value: Union[float, complex]
    validity: str
