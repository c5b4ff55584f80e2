"""Pydantic schemas for two-photon wave packets."""

from typing import Literal
from pydantic import BaseModel, ConfigDict, Field

from schemas.levels import LevelDiagram


class WavevectorPair(BaseModel):
    """Photon energies (k1, k2)."""
    model_config = ConfigDict(frozen=True)

    k1: float = Field(..., allow_inf_nan=False)
    k2: float = Field(..., allow_inf_nan=False)


class TwoPhotonAmplitude(BaseModel):
    """Wave packet alpha_j of one decay channel."""
    model_config = ConfigDict(frozen=True)

    channel: Literal["x", "y"] = Field(..., description="Polarization of the decay path")
    diagram: LevelDiagram
    mode: Literal["literal", "analytic"] = Field(
        default="analytic", description="literal keeps |k|; analytic drops the absolute values"
    )
