"""Pydantic schemas for level diagrams and dimensionless cascade parameters."""

from pydantic import BaseModel, ConfigDict, Field


class ComplexEnergy(BaseModel):
    """Complex level energy Z = E - i*half_width."""
    model_config = ConfigDict(frozen=True)

    real_part: float = Field(..., allow_inf_nan=False, description="Level energy E")
    half_width: float = Field(..., ge=0, allow_inf_nan=False, description="Radiative half-width of the level")

    @property
    def value(self) -> complex:
        return complex(self.real_part, -self.half_width)

    def conjugate(self) -> complex:
        """Z* = E + i*half_width."""
        return complex(self.real_part, self.half_width)

    @classmethod
    def from_complex(cls, z: complex) -> "ComplexEnergy":
        return cls(real_part=z.real, half_width=-z.imag)


class LevelDiagram(BaseModel):
    """Biexciton cascade level diagram in caller-chosen physical units."""
    model_config = ConfigDict(frozen=True)

    e_u: float = Field(..., allow_inf_nan=False, description="Top (biexciton) level energy")
    e_x: float = Field(..., allow_inf_nan=False, description="Intermediate x-exciton energy")
    e_y: float = Field(..., allow_inf_nan=False, description="Intermediate y-exciton energy")
    e_0: float = Field(default=0.0, allow_inf_nan=False, description="Ground level energy")
    gamma: float = Field(..., allow_inf_nan=False, description="Half-width of both intermediate levels")
    gamma_u: float = Field(..., allow_inf_nan=False, description="Half-width of the top level")

    def scaled(self, factor: float) -> "LevelDiagram":
        """All energies and widths multiplied by factor."""
        return LevelDiagram(**{name: value * factor for name, value in self.model_dump().items()})

    def shifted(self, offset: float) -> "LevelDiagram":
        """All four level energies shifted by offset."""
        return self.model_copy(update={
            "e_u": self.e_u + offset,
            "e_x": self.e_x + offset,
            "e_y": self.e_y + offset,
            "e_0": self.e_0 + offset,
        })


class CascadeParams(BaseModel):
    """Dimensionless (delta, beta, g) triple."""
    model_config = ConfigDict(frozen=True)

    delta: float = Field(..., allow_inf_nan=False, description="Exciton detuning in units of 2*gamma")
    beta: float = Field(..., allow_inf_nan=False, description="Cross-generation color mismatch in units of 2*gamma")
    g: float = Field(..., gt=0, allow_inf_nan=False, description="Width ratio gamma_u / gamma")


class DimensionlessFrame(BaseModel):
    """Canonical frame (gamma = 1, e_x + e_y = 0) used by the leading-order integrals."""
    model_config = ConfigDict(frozen=True)

    e_x: float = Field(..., description="Shifted x-photon color, -delta")
    e_y: float = Field(..., description="Shifted y-photon color, +delta")
    s0: float = Field(..., description="Sum-detuning at the center of the pair kernel")
    g: float = Field(..., gt=0, description="Pair kernel half-width")

    @property
    def z_x(self) -> complex:
        return complex(self.e_x, -1.0)

    @property
    def z_y(self) -> complex:
        return complex(self.e_y, -1.0)

    @property
    def z_u(self) -> complex:
        return complex(self.s0, -self.g)

    @property
    def delta(self) -> float:
        return 0.5 * (self.e_y - self.e_x)
