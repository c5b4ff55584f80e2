"""Pydantic schemas for spectral phase gates and their per-photon factors."""

from typing import Annotated, Literal, Tuple, Union
from pydantic import BaseModel, ConfigDict, Field, model_validator

from schemas.levels import ComplexEnergy


class SlotPhase(BaseModel):
    """Phase applied to one photon slot: offset + slope*k + interp(k; knots, values)."""
    model_config = ConfigDict(frozen=True)

    slope: float = Field(default=0.0, allow_inf_nan=False, description="Linear phase rate (a delay)")
    offset: float = Field(default=0.0, allow_inf_nan=False, description="Constant phase in radians")
    knots: Tuple[float, ...] = Field(default=(), description="Sample energies, strictly increasing")
    values: Tuple[float, ...] = Field(default=(), description="Phase samples in radians")

    @model_validator(mode="after")
    def _check_table(self) -> "SlotPhase":
        if len(self.knots) != len(self.values):
            raise ValueError("knots and values must have the same length")
        if any(b <= a for a, b in zip(self.knots, self.knots[1:])):
            raise ValueError("knots must be strictly increasing")
        return self

    @property
    def tabulated(self) -> bool:
        return len(self.knots) > 0


class ChannelUnitary(BaseModel):
    """Per-photon factorized unitary U_j(k1, k2) = exp(i(phi1(k1) + phi2(k2)))."""
    model_config = ConfigDict(frozen=True)

    slot1: SlotPhase = Field(default_factory=SlotPhase)
    slot2: SlotPhase = Field(default_factory=SlotPhase)


class IdentityGate(BaseModel):
    """W = 1."""
    model_config = ConfigDict(frozen=True)
    kind: Literal["identity"] = "identity"


class OptimalGate(BaseModel):
    """W_opt aligning the phase of the cross-generation integrand."""
    model_config = ConfigDict(frozen=True)
    kind: Literal["optimal"] = "optimal"
    z_x: ComplexEnergy
    z_y: ComplexEnergy
    phase0: float = Field(default=0.0, allow_inf_nan=False, description="Constant phase in radians")


class DelayGate(BaseModel):
    """W = exp(i phase0) exp(i k1 tau1) exp(-i k2 tau2)."""
    model_config = ConfigDict(frozen=True)
    kind: Literal["delay"] = "delay"
    tau1: float = Field(..., allow_inf_nan=False, description="Delay on the photon-1 factor")
    tau2: float = Field(..., allow_inf_nan=False, description="Delay on the photon-2 factor")
    phase0: float = Field(default=0.0, allow_inf_nan=False, description="Constant phase in radians")
    ell: float = Field(default=0.0, ge=0, description="Common path length; metadata only")


class LinearPhaseGate(BaseModel):
    """W = exp(i (phase0 + slope1 k1 + slope2 k2))."""
    model_config = ConfigDict(frozen=True)
    kind: Literal["linear"] = "linear"
    slope1: float = Field(default=0.0, allow_inf_nan=False)
    slope2: float = Field(default=0.0, allow_inf_nan=False)
    phase0: float = Field(default=0.0, allow_inf_nan=False)


class CustomProfileGate(BaseModel):
    """W = exp(i (phi1(k1) + phi2(k2))) from per-photon phase tables."""
    model_config = ConfigDict(frozen=True)
    kind: Literal["custom"] = "custom"
    slot1: SlotPhase = Field(default_factory=SlotPhase)
    slot2: SlotPhase = Field(default_factory=SlotPhase)


PhaseGate = Annotated[
    Union[IdentityGate, OptimalGate, DelayGate, LinearPhaseGate, CustomProfileGate],
    Field(discriminator="kind"),
]


class DelayGeometry(BaseModel):
    """Path geometry of the delay gate: common length ell and the 1/gamma delay."""
    model_config = ConfigDict(frozen=True)

    ell: float = Field(default=0.0, ge=0, allow_inf_nan=False, description="Arbitrary common path length")
    gamma: float = Field(..., gt=0, allow_inf_nan=False, description="Half-width setting the 1/gamma delay")


class GateSpec(BaseModel):
    """Gate named in a run configuration; numeric parameters in units of 1/gamma."""
    model_config = ConfigDict(frozen=True, extra="forbid")

    kind: Literal["identity", "optimal", "delay", "linear"] = Field(default="identity")
    tau1: float = Field(default=1.0, allow_inf_nan=False)
    tau2: float = Field(default=1.0, allow_inf_nan=False)
    slope1: float = Field(default=0.0, allow_inf_nan=False)
    slope2: float = Field(default=0.0, allow_inf_nan=False)
    phase0: float = Field(default=0.0, allow_inf_nan=False)
