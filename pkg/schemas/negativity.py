"""Pydantic schemas for the two-photon polarization density matrix and its partial transpose."""

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator

BASIS = ("xx", "xy", "yx", "yy")
PSD_TOLERANCE = 1e-10


class TraceNormalizedMatrix(BaseModel):
    """4x4 Hermitian, trace-normalized matrix over the ordered basis (xx, xy, yx, yy)."""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    matrix: np.ndarray = Field(..., description="Complex 4x4 array")

    @field_validator("matrix")
    @classmethod
    def _check_matrix(cls, value: np.ndarray) -> np.ndarray:
        value = np.array(value, dtype=complex)
        if value.shape != (4, 4):
            raise ValueError(f"density matrix must be 4x4, got {value.shape}")
        if not np.allclose(value, value.conj().T, atol=1e-12, rtol=0):
            raise ValueError("density matrix must be Hermitian")
        if abs(np.trace(value) - 1.0) > 1e-12:
            raise ValueError("density matrix must have unit trace")
        value.setflags(write=False)
        return value

    def element(self, row: str, column: str) -> complex:
        """Matrix element <row|rho|column> by basis label."""
        return complex(self.matrix[BASIS.index(row), BASIS.index(column)])


class PolarizationDensityMatrix(TraceNormalizedMatrix):
    """Physical polarization state: additionally positive semidefinite."""

    @field_validator("matrix")
    @classmethod
    def _check_positive(cls, value: np.ndarray) -> np.ndarray:
        value = np.asarray(value, dtype=complex)
        if value.shape != (4, 4):
            raise ValueError(f"density matrix must be 4x4, got {value.shape}")
        lowest = float(np.linalg.eigvalsh(value)[0])
        if lowest < -PSD_TOLERANCE:
            raise ValueError(f"density matrix must be positive semidefinite, lowest eigenvalue {lowest:.3g}")
        return value


class PartialTransposeMatrix(TraceNormalizedMatrix):
    """Partial transpose on the second photon; negative eigenvalues signal entanglement."""
