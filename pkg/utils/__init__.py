"""Utilities package for the time-reordering entanglement toolkit."""

from .cubature import AdaptiveCubature, CubatureResult, RectSet
from .exceptions import ConfigError, EigensolverError, InvalidDiagramError, InvalidOverlapError, ReorderError
from .log_setup import configure_logging
from .spectral_chart import LinearPanels, OuterAxis, SpectralChart, TanPieces
from .tables import render_table, write_table

__all__ = [
    "AdaptiveCubature",
    "CubatureResult",
    "RectSet",
    "ConfigError",
    "EigensolverError",
    "InvalidDiagramError",
    "InvalidOverlapError",
    "ReorderError",
    "configure_logging",
    "LinearPanels",
    "OuterAxis",
    "SpectralChart",
    "TanPieces",
    "render_table",
    "write_table"
]
