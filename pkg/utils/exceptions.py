"""Exception types raised by the toolkit."""

from typing import Iterable, Optional


class ReorderError(Exception):
    """Base class for toolkit errors."""


class InvalidDiagramError(ReorderError, ValueError):
    """Level diagram violates its invariants."""


class InvalidOverlapError(ReorderError, ValueError):
    """Overlap inconsistent with the norms (Cauchy-Schwarz violated)."""


class ConfigError(ReorderError, ValueError):
    """Run configuration is malformed, incomplete or has unknown keys."""

    def __init__(
        self,
        message: str,
        unknown_keys: Optional[Iterable[str]] = None,
        section: Optional[str] = None,
    ):
        super().__init__(message)
        self.unknown_keys = sorted(unknown_keys) if unknown_keys else []
        self.section = section


class EigensolverError(ReorderError, RuntimeError):
    """Hermitian eigensolver failed on a small matrix (internal fault)."""
