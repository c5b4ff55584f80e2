"""Service evaluating Lorentzian emission amplitudes and two-photon wave packets."""

import math
from typing import Optional, Tuple, Union
import numpy as np
from loguru import logger

from config.settings import settings
from schemas.amplitude import TwoPhotonAmplitude, WavevectorPair
from schemas.levels import ComplexEnergy
from schemas.overlap import NormResult, QuadratureSpec
from services.level_service import level_service
from utils.cubature import AdaptiveCubature
from utils.spectral_chart import OuterAxis, SpectralChart, TanPieces

ArrayLike = Union[float, np.ndarray]


def _pole(z: Union[ComplexEnergy, complex]) -> complex:
    return z.value if isinstance(z, ComplexEnergy) else complex(z)


class AmplitudeService:
    """Evaluates A(k, Z), alpha_j(k1, k2) and the numerical norms <alpha_j|alpha_j>."""

    def lorentzian(self, k: ArrayLike, z: Union[ComplexEnergy, complex]) -> ArrayLike:
        """
        Lorentzian emission amplitude sqrt(half_width/pi) / (k - Z).

        Args:
            k: Photon energy (scalar or array)
            z: Complex level energy; the prefactor uses its own half-width

        Returns:
            Complex amplitude of the same shape as k
        """
        pole = _pole(z)
        half_width = -pole.imag
        if not half_width > 0:
            raise ValueError(f"pole must lie below the real axis, got {pole}")
        return math.sqrt(half_width / math.pi) / (np.asarray(k) - pole)

    def channel_poles(self, a: TwoPhotonAmplitude) -> Tuple[complex, complex]:
        """(Z_u, Z_j) measured from the ground level."""
        z_u, z_x, z_y = level_service.photon_poles(a.diagram)
        return z_u, (z_x if a.channel == "x" else z_y)

    def eval_alpha(
        self,
        a: TwoPhotonAmplitude,
        k1: Union[ArrayLike, WavevectorPair],
        k2: Optional[ArrayLike] = None,
    ) -> ArrayLike:
        """
        Two-photon amplitude A(k1+k2, Z_u) (A(k1, Z_j) + A(k2, Z_j)).

        Args:
            a: Amplitude description
            k1: First photon energy, or a WavevectorPair
            k2: Second photon energy when k1 is not a pair

        Returns:
            Complex amplitude; literal mode uses |k1| and |k2|
        """
        if isinstance(k1, WavevectorPair):
            k1, k2 = k1.k1, k1.k2
        k1 = np.asarray(k1, dtype=float)
        k2 = np.asarray(k2, dtype=float)
        if a.mode == "literal":
            k1, k2 = np.abs(k1), np.abs(k2)
        z_u, z_j = self.channel_poles(a)
        value = self.lorentzian(k1 + k2, z_u) * (self.lorentzian(k1, z_j) + self.lorentzian(k2, z_j))
        return complex(value) if np.ndim(value) == 0 else value

    def norm_squared(self, a: TwoPhotonAmplitude, quad: Optional[QuadratureSpec] = None) -> NormResult:
        """
        Numerical <alpha_j|alpha_j> over the full plane (analytic) or positive quadrant (literal).

        Args:
            a: Amplitude description
            quad: Quadrature settings; defaults to the norm tolerance from settings

        Returns:
            NormResult with direct and cross terms and the error estimate
        """
        quad = quad or QuadratureSpec(abs_tol=settings.norm_abs_tol)
        z_u, z_j = self.channel_poles(a)
        gamma_j = -z_j.imag
        literal = a.mode == "literal"
        e_j = z_j.real

        outer = OuterAxis(center=z_u.real, width=-z_u.imag, s_min=0.0 if literal else None)
        inner = TanPieces(
            peaks=lambda s: np.stack([np.full_like(s, e_j), s - e_j]),
            count=2,
            width=gamma_j,
            lower=(lambda s: np.zeros_like(s)) if literal else None,
            upper=(lambda s: s) if literal else None,
        )
        chart = SpectralChart(outer, inner)
        scale = math.sqrt(gamma_j / math.pi)

        def integrand(u, r, piece):
            k1, k2, weight = chart(u, r, piece)
            if literal:
                k1, k2 = np.abs(k1), np.abs(k2)
            first = scale / (k1 - z_j)
            second = scale / (k2 - z_j)
            direct = np.abs(first) ** 2 + np.abs(second) ** 2
            cross = 2.0 * np.real(np.conj(first) * second)
            # |A_u(s)|^2 ds = du / pi; real part carries the direct term, imaginary the cross term
            return (direct + 1j * cross) * weight / math.pi

        result = AdaptiveCubature(quad.abs_tol, quad.max_subdivisions).integrate(integrand, chart.rects())
        direct, cross = result.value.real, result.value.imag
        warnings = []
        if not result.converged:
            warnings.append(f"norm of alpha_{a.channel} unconverged (error {result.error:.3g})")
            logger.warning(warnings[-1])
        logger.debug(f"Norm of alpha_{a.channel} ({a.mode}): direct={direct:.12g} cross={cross:.3g}")
        return NormResult(
            value=direct + cross,
            direct=direct,
            cross=cross,
            error=result.error,
            converged=result.converged,
            warnings=warnings,
        )


# Global amplitude service instance
amplitude_service = AmplitudeService()
