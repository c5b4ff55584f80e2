"""Schemas package for level diagrams, gates, overlaps and result tables."""

from .levels import (
    ComplexEnergy,
    LevelDiagram,
    CascadeParams,
    DimensionlessFrame
)
from .amplitude import WavevectorPair, TwoPhotonAmplitude
from .gates import (
    SlotPhase,
    ChannelUnitary,
    IdentityGate,
    OptimalGate,
    DelayGate,
    LinearPhaseGate,
    CustomProfileGate,
    PhaseGate,
    DelayGeometry,
    GateSpec
)
from .overlap import (
    QuadratureSpec,
    IntegralValue,
    NormResult,
    OverlapResult,
    ClosedFormResult
)
from .negativity import BASIS, TraceNormalizedMatrix, PolarizationDensityMatrix, PartialTransposeMatrix
from .sweeps import (
    SWEEP_COLUMNS,
    PROFILE_COLUMNS,
    SweepSpec,
    OptimizeSpec,
    TraceEntry,
    OptimizeResult,
    ResultTable
)
from .config import OutputConfig, SweepConfig, OptimizeConfig, RunConfig
from .validation import CheckResult

__all__ = [
    "ComplexEnergy",
    "LevelDiagram",
    "CascadeParams",
    "DimensionlessFrame",
    "WavevectorPair",
    "TwoPhotonAmplitude",
    "SlotPhase",
    "ChannelUnitary",
    "IdentityGate",
    "OptimalGate",
    "DelayGate",
    "LinearPhaseGate",
    "CustomProfileGate",
    "PhaseGate",
    "DelayGeometry",
    "GateSpec",
    "QuadratureSpec",
    "IntegralValue",
    "NormResult",
    "OverlapResult",
    "ClosedFormResult",
    "BASIS",
    "TraceNormalizedMatrix",
    "PolarizationDensityMatrix",
    "PartialTransposeMatrix",
    "SWEEP_COLUMNS",
    "PROFILE_COLUMNS",
    "SweepSpec",
    "OptimizeSpec",
    "TraceEntry",
    "OptimizeResult",
    "ResultTable",
    "OutputConfig",
    "SweepConfig",
    "OptimizeConfig",
    "RunConfig",
    "CheckResult"
]
