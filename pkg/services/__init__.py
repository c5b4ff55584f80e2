"""Services package for the cascade amplitudes, phase gates, overlaps and negativity."""

from .level_service import LevelService, level_service
from .amplitude_service import AmplitudeService, amplitude_service
from .gate_service import GateService, gate_service
from .overlap_service import OverlapService, overlap_service
from .analytic_service import AnalyticService, analytic_service
from .negativity_service import NegativityService, negativity_service
from .sweep_service import SweepService, sweep_service
from .optimizer_service import OptimizerService, optimizer_service
from .validation_service import ValidationService, validation_service

__all__ = [
    "LevelService",
    "level_service",
    "AmplitudeService",
    "amplitude_service",
    "GateService",
    "gate_service",
    "OverlapService",
    "overlap_service",
    "AnalyticService",
    "analytic_service",
    "NegativityService",
    "negativity_service",
    "SweepService",
    "sweep_service",
    "OptimizerService",
    "optimizer_service",
    "ValidationService",
    "validation_service"
]
