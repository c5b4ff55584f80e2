"""Service providing closed-form leading-order results used as quadrature oracles."""

import cmath
import math
from typing import Optional
from loguru import logger

from schemas.levels import CascadeParams
from schemas.overlap import ClosedFormResult, QuadratureSpec
from services.overlap_service import overlap_service

LEADING_ORDER = "leading order in gamma"


class AnalyticService:
    """Closed forms for the raw state, the delay family and f(g)."""

    def y1_raw(self, beta: float) -> ClosedFormResult:
        """Cross-generation overlap without a gate: exactly 0 for every beta."""
        return ClosedFormResult(value=0j, validity=LEADING_ORDER)

    def y2_raw(self, delta: float) -> ClosedFormResult:
        """Same-generation overlap without a gate, -2i/(delta - i)."""
        return ClosedFormResult(value=-2j / complex(delta, -1.0), validity=LEADING_ORDER)

    def gamma_raw(self, delta: float) -> ClosedFormResult:
        """Raw negativity 1/(2 sqrt(delta^2 + 1)); independent of beta."""
        return ClosedFormResult(
            value=0.5 / math.sqrt(delta * delta + 1.0),
            validity=f"{LEADING_ORDER}; independent of beta and g",
        )

    def f_of_g(self, g: float, quad: Optional[QuadratureSpec] = None) -> ClosedFormResult:
        """
        f(g) = gamma_opt(g, beta=0) - 1/2, evaluated through the 1D reduction.

        Args:
            g: Width ratio gamma_u/gamma, g >= 0
            quad: Quadrature settings

        Returns:
            ClosedFormResult with f(g) <= 0 and f(0) = 0
        """
        if g < 0:
            raise ValueError(f"g must be >= 0, got {g}")
        if g == 0:
            return ClosedFormResult(value=0.0, validity="exact limit g -> 0")
        params = CascadeParams(delta=0.0, beta=0.0, g=g)
        y1 = overlap_service.y1_reduced(params, quad, convention="kernel")
        value = abs(y1.value) / 4.0 - 0.5
        logger.debug(f"f({g}) = {value:.12g}")
        return ClosedFormResult(
            value=value,
            validity=f"{LEADING_ORDER}, optimal gate, beta = 0, y2 dropped (|delta| >> 1)",
        )

    def y1_delay(self, tau1: float, tau2: float, s0: float, g: float) -> ClosedFormResult:
        """
        Cross-generation overlap of the delay gate exp(i tau1 k1) exp(-i tau2 k2).

        Energies are measured from the exciton resonances, so the gate is
        taken without the constant phase exp(i(tau1 e_x - tau2 e_y)).

        Args:
            tau1: Delay on the photon-1 factor (units of 1/gamma)
            tau2: Delay on the photon-2 factor (units of 1/gamma)
            s0: Center of the pair kernel (units of gamma)
            g: Pair kernel half-width

        Returns:
            ClosedFormResult with
            4 exp(-tau1 - tau2) * int_{-tau2}^{tau1} exp(i w s0 - g |w|) dw
            for tau1 + tau2 > 0 and 0 otherwise
        """
        if g <= 0:
            raise ValueError(f"g must be > 0, got {g}")
        validity = f"{LEADING_ORDER}; delay gate relative to the exciton resonances"
        if tau1 + tau2 <= 0:
            return ClosedFormResult(value=0j, validity=validity)

        def segment(a: float, b: float, rate: complex) -> complex:
            """int_a^b exp(rate * w) dw."""
            if rate == 0:
                return complex(b - a)
            return (cmath.exp(rate * b) - cmath.exp(rate * a)) / rate

        value = 0j
        positive = complex(-g, s0)
        negative = complex(g, s0)
        if tau1 > 0:
            value += segment(max(0.0, -tau2), tau1, positive)
        if tau2 > 0:
            value += segment(-tau2, min(0.0, tau1), negative)
        value *= 4.0 * math.exp(-tau1 - tau2)
        return ClosedFormResult(value=value, validity=validity)

    def optimal_symmetric_delay(self, g: float) -> ClosedFormResult:
        """
        Symmetric delay tau1 = tau2 maximizing |y1_delay| at s0 = 0.

        Args:
            g: Width ratio, g >= 0

        Returns:
            ClosedFormResult with ln(1 + g/2)/g (1/2 in the limit g -> 0)
        """
        if g < 0:
            raise ValueError(f"g must be >= 0, got {g}")
        value = 0.5 if g == 0 else math.log1p(0.5 * g) / g
        return ClosedFormResult(value=value, validity=f"{LEADING_ORDER}; beta = 0, y2 dropped")


# Global analytic service instance
analytic_service = AnalyticService()
