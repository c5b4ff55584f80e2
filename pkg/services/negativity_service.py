"""Service building the polarization density matrix and evaluating the Peres negativity."""

import math
import numpy as np
from loguru import logger
from scipy import linalg

from schemas.negativity import PartialTransposeMatrix, PolarizationDensityMatrix, TraceNormalizedMatrix
from schemas.overlap import OverlapResult
from utils.exceptions import EigensolverError, InvalidOverlapError

CAUCHY_SCHWARZ_SLACK = 1e-6


class NegativityService:
    """Peres test on the two-photon polarization state."""

    def build_rho(self, n_x: float, n_y: float, c: complex) -> PolarizationDensityMatrix:
        """
        Density matrix of the gated cascade state over (xx, xy, yx, yy).

        Args:
            n_x: <alpha_x|alpha_x>
            n_y: <alpha_y|alpha_y>
            c: <alpha_x|W|alpha_y>

        Returns:
            X-structured, positive semidefinite PolarizationDensityMatrix. A
            coherence above sqrt(n_x n_y) by no more than the rounding slack
            is clipped onto the bound.

        Raises:
            InvalidOverlapError: If a norm is not positive or |c| > sqrt(n_x n_y)
        """
        if not (n_x > 0 and n_y > 0):
            raise InvalidOverlapError(f"norms must be positive, got n_x={n_x}, n_y={n_y}")
        bound = math.sqrt(n_x * n_y)
        if abs(c) > bound * (1.0 + CAUCHY_SCHWARZ_SLACK):
            raise InvalidOverlapError(
                f"|c| = {abs(c):.12g} exceeds sqrt(n_x n_y) = {bound:.12g}; quadrature outputs are inconsistent"
            )
        if abs(c) > bound:
            logger.debug(f"Clipping |c| = {abs(c):.12g} onto the Cauchy-Schwarz bound {bound:.12g}")
            c = c * (bound / abs(c))
        total = n_x + n_y
        matrix = np.zeros((4, 4), dtype=complex)
        matrix[0, 0] = n_x / total
        matrix[3, 3] = n_y / total
        matrix[0, 3] = c / total
        matrix[3, 0] = np.conj(c) / total
        return PolarizationDensityMatrix(matrix=matrix)

    def rho_from_overlap(self, result: OverlapResult) -> PolarizationDensityMatrix:
        """Density matrix of an overlap result (numerator y1 + y2, norms n_x and n_y)."""
        return self.build_rho(result.norm_x, result.norm_y, result.numerator)

    def partial_transpose(self, rho: TraceNormalizedMatrix) -> PartialTransposeMatrix:
        """Transpose on the second photon: <a b|rho|a' b'> -> <a b'|rho|a' b>."""
        blocks = rho.matrix.reshape(2, 2, 2, 2)
        transposed = blocks.transpose(0, 3, 2, 1).reshape(4, 4)
        return PartialTransposeMatrix(matrix=transposed)

    def eigenvalues(self, rho: PolarizationDensityMatrix) -> np.ndarray:
        """Ascending eigenvalues of the partial transpose by the Hermitian eigensolver."""
        try:
            return linalg.eigvalsh(self.partial_transpose(rho).matrix)
        except linalg.LinAlgError as e:
            logger.error(f"Eigensolver failed on a 4x4 Hermitian matrix: {e}")
            raise EigensolverError(str(e)) from e

    def x_state_eigenvalues(self, n_x: float, n_y: float, c: complex) -> np.ndarray:
        """Ascending eigenvalues {n_x, n_y, |c|, -|c|}/(n_x + n_y) of the X-state partial transpose."""
        total = n_x + n_y
        return np.sort(np.array([n_x, n_y, abs(c), -abs(c)]) / total)

    def peres_negativity(self, rho: PolarizationDensityMatrix) -> float:
        """
        Absolute value of the negative eigenvalue of the partial transpose.

        Args:
            rho: Polarization density matrix

        Returns:
            |min eigenvalue| if negative, else 0
        """
        smallest = float(self.eigenvalues(rho)[0])
        return -smallest if smallest < 0 else 0.0


# Global negativity service instance
negativity_service = NegativityService()
