"""Service computing the overlap integrals y1, y2, the norms and the negativity gamma."""

import math
import threading
from typing import Callable, List, Literal, Optional, Sequence, Tuple
import numpy as np
from loguru import logger
from scipy import integrate
from scipy.interpolate import CubicSpline

from config.settings import settings
from schemas.amplitude import TwoPhotonAmplitude
from schemas.gates import PhaseGate
from schemas.levels import CascadeParams, DimensionlessFrame, LevelDiagram
from schemas.overlap import IntegralValue, OverlapResult, QuadratureSpec
from services.amplitude_service import amplitude_service
from services.gate_service import gate_service
from services.level_service import BetaConvention, level_service
from utils.cubature import AdaptiveCubature, Integrand
from utils.spectral_chart import LinearPanels, OuterAxis, SpectralChart, TanPieces

PREFACTOR = 2.0 / math.pi ** 2
LEADING_DENOMINATOR = 4.0
RICHARDSON_FACTOR = 10.0

AmplitudeMode = Literal["literal", "analytic"]
GateOrdering = Literal["color", "symmetrized"]
ChartBuilder = Callable[[float], Tuple[SpectralChart, Integrand]]


def _widen(halfwidth: float, rate: float) -> float:
    """Truncation half-width for a phase rate: at least 32/rate, at most 8x the base."""
    return min(max(halfwidth, 32.0 / rate), 8.0 * halfwidth)


def _bound(parts: Sequence[Callable[[np.ndarray], np.ndarray]], pick) -> Optional[Callable]:
    parts = [part for part in parts if part is not None]
    if not parts:
        return None
    if len(parts) == 1:
        return parts[0]
    return lambda s: pick(np.stack([part(s) for part in parts]), axis=0)


class OverlapService:
    """Quadrature engine for the numerator integrals and the negativity gamma."""

    def __init__(self):
        """Initialize overlap service; the F(s) table is built on first use."""
        self._f_lock = threading.Lock()
        self._f_spline: Optional[CubicSpline] = None

    # ------------------------------------------------------------------
    # Reduced form F(s)
    # ------------------------------------------------------------------

    @staticmethod
    def f_direct(s: float) -> float:
        """
        F(s) = integral of dk / (sqrt(k^2 + 1) sqrt((s - k)^2 + 1)) by 1D quadrature.

        The integrand is symmetric about k = s/2, so the half-line from the
        midpoint is integrated and doubled.
        """
        half = 0.5 * abs(s)

        def integrand(x: float) -> float:
            return 1.0 / math.sqrt(((half + x) ** 2 + 1.0) * ((half - x) ** 2 + 1.0))

        near, _ = integrate.quad(integrand, 0.0, half + 1.0, epsabs=1e-13, epsrel=1e-11, limit=200)
        tail, _ = integrate.quad(integrand, half + 1.0, np.inf, epsabs=1e-13, epsrel=1e-11, limit=200)
        return 2.0 * (near + tail)

    def warm_up(self) -> None:
        """Build the F(s) table; call before sharing the service across threads."""
        if self._f_spline is not None:
            return
        with self._f_lock:
            if self._f_spline is not None:
                return
            points = settings.f_table_points
            t = np.linspace(0.0, 0.5 * math.pi, points)
            values = np.array([self.f_direct(math.tan(x)) for x in t[:-1]] + [0.0])
            # F is even in s, so the slope in t = atan(s) vanishes at the origin
            self._f_spline = CubicSpline(t, values, bc_type=((1, 0.0), "not-a-knot"))
            logger.info(f"F(s) table built on {points} points, F(0)={values[0]:.12g}")

    def f_table(self, s):
        """F(s) interpolated from the cached table (vectorized)."""
        self.warm_up()
        t = np.arctan(np.abs(np.asarray(s, dtype=float)))
        value = self._f_spline(t)
        return float(value) if np.ndim(value) == 0 else value

    def y2_bound(self, delta: float) -> float:
        """Gate-independent bound |y2| <= (2/pi) F(2 delta); equals 2/sqrt(delta^2+1) for W = 1 at delta = 0."""
        return 2.0 / math.pi * self.f_table(2.0 * delta)

    # ------------------------------------------------------------------
    # Shared machinery
    # ------------------------------------------------------------------

    @staticmethod
    def _chart(
        center: float,
        width: float,
        scale: float,
        peaks: Callable[[np.ndarray], np.ndarray],
        centers: Sequence[float],
        rates: Tuple[float, float],
        halfwidth: float,
        s_min: Optional[float] = None,
        lower: Optional[Callable] = None,
        upper: Optional[Callable] = None,
    ) -> SpectralChart:
        """
        Chart of the (s, k1) plane for a given gate's phase rates.

        Args:
            center: Center of the Lorentzian sum kernel
            width: Half-width of the sum kernel
            scale: Half-width of the single-photon poles
            peaks: Pole positions in k1 as a function of s
            centers: Pole positions at s = center, for static panels
            rates: (outer, inner) asymptotic phase rates
            halfwidth: Base truncation half-width
            s_min: Lower limit on s
            lower: Lower k1 bound as a function of s
            upper: Upper k1 bound as a function of s

        Returns:
            SpectralChart, compactified where the gate does not oscillate
        """
        outer_rate, inner_rate = rates
        if outer_rate > 0:
            outer = OuterAxis(center, width, s_min=s_min, halfwidth=_widen(halfwidth, outer_rate), rate=outer_rate)
        else:
            outer = OuterAxis(center, width, s_min=s_min)

        if inner_rate > 0:
            spread = 0.5 * (max(centers) - min(centers))
            reach = max(_widen(halfwidth, inner_rate), outer.halfwidth or 0.0) + spread
            inner = LinearPanels(
                center=0.5 * (max(centers) + min(centers)),
                halfwidth=reach,
                centers=centers,
                scale=scale,
                rate=inner_rate,
                lower=lower,
                upper=upper,
            )
        else:
            count = int(np.asarray(peaks(np.array([center]))).shape[0])
            inner = TanPieces(peaks, count, scale, lower=lower, upper=upper)
        return SpectralChart(outer, inner)

    def _gate_rates(self, w: PhaseGate, symmetrize: bool) -> Tuple[float, float]:
        r1, r2 = gate_service.phase_rates(w)
        if symmetrize:
            r1 = r2 = max(r1, r2)
        return r2, r1 + r2

    def _gate_values(self, w: PhaseGate, symmetrize: bool):
        if symmetrize:
            return lambda k1, k2: gate_service.eval_symmetrized(w, k1, k2)
        return lambda k1, k2: gate_service.eval_gate(w, k1, k2)

    def _run(self, label: str, build: ChartBuilder, quad: QuadratureSpec) -> IntegralValue:
        """Integrate a chart/integrand pair, with the optional Richardson re-run at twice the truncation."""
        chart, f = build(1.0)
        cubature = AdaptiveCubature(quad.abs_tol, quad.max_subdivisions)
        result = cubature.integrate(f, chart.rects())
        error = result.error
        warnings: List[str] = []
        if not result.converged:
            warnings.append(f"{label}: quadrature unconverged, error estimate {result.error:.3g}")
            logger.warning(warnings[-1])

        if quad.richardson_check and chart.truncated:
            wide_chart, wide_f = build(2.0)
            wide = cubature.integrate(wide_f, wide_chart.rects())
            mismatch = abs(wide.value - result.value)
            if mismatch > RICHARDSON_FACTOR * quad.abs_tol:
                warnings.append(f"{label}: truncation mismatch {mismatch:.3g} between K and 2K")
                logger.warning(warnings[-1])
                error += mismatch

        logger.debug(f"{label} = {result.value:.12g} (error {error:.3g}, rects {result.rects})")
        return IntegralValue(
            value=result.value,
            error=error,
            converged=result.converged,
            warnings=warnings,
        )

    # ------------------------------------------------------------------
    # Leading-order integrals in the canonical frame
    # ------------------------------------------------------------------

    def _leading_integral(
        self,
        frame: DimensionlessFrame,
        w: PhaseGate,
        quad: QuadratureSpec,
        cross_generation: bool,
        symmetrize: bool,
    ) -> IntegralValue:
        z_x_conj = frame.z_x.conjugate()
        z_y = frame.z_y
        gate = self._gate_values(w, symmetrize)
        rates = self._gate_rates(w, symmetrize)

        if cross_generation:
            label = "y1"
            halfwidth = quad.halfwidth(frame.g, frame.s0)
            centers = [frame.e_x, frame.s0 - frame.e_y]

            def peaks(s):
                return np.stack([np.full_like(s, frame.e_x), s - frame.e_y])

            def poles(k1, k2):
                return 1.0 / ((k1 - z_x_conj) * (k2 - z_y))
        else:
            label = "y2"
            halfwidth = quad.halfwidth(frame.g, frame.s0, frame.delta)
            centers = [frame.e_x, frame.e_y]

            def peaks(s):
                return np.stack([np.full_like(s, frame.e_x), np.full_like(s, frame.e_y)])

            def poles(k1, k2):
                return 1.0 / ((k1 - z_x_conj) * (k1 - z_y))

        def build(stretch: float):
            chart = self._chart(frame.s0, frame.g, 1.0, peaks, centers, rates, stretch * halfwidth)

            def integrand(u, r, piece):
                k1, k2, weight = chart(u, r, piece)
                return PREFACTOR * gate(k1, k2) * poles(k1, k2) * weight

            return chart, integrand

        return self._run(label, build, quad)

    def y1_integral(
        self,
        params: CascadeParams,
        w: PhaseGate,
        quad: Optional[QuadratureSpec] = None,
        symmetrize: bool = False,
        convention: Optional[BetaConvention] = None,
    ) -> IntegralValue:
        """
        Cross-generation overlap y1 by 2D quadrature.

        Args:
            params: Cascade parameters
            w: Gate in canonical units (energies in units of gamma)
            quad: Quadrature settings
            symmetrize: Replace W by (W(k1, k2) + W(k2, k1))/2
            convention: Reading of beta as the kernel center

        Returns:
            IntegralValue with the complex y1 and its error estimate
        """
        frame = level_service.frame(params, convention)
        return self._leading_integral(frame, w, quad or QuadratureSpec(), True, symmetrize)

    def y2_integral(
        self,
        params: CascadeParams,
        w: PhaseGate,
        quad: Optional[QuadratureSpec] = None,
        symmetrize: bool = False,
        convention: Optional[BetaConvention] = None,
    ) -> IntegralValue:
        """Same-generation overlap y2 by 2D quadrature; arguments as y1_integral."""
        frame = level_service.frame(params, convention)
        return self._leading_integral(frame, w, quad or QuadratureSpec(), False, symmetrize)

    def y1_reduced(
        self,
        params: CascadeParams,
        quad: Optional[QuadratureSpec] = None,
        convention: Optional[BetaConvention] = None,
    ) -> IntegralValue:
        """
        y1 for the optimal gate from the 1D reduction (2/pi^2) * int L(s) F(s) ds.

        The value is the magnitude of the optimal-gate overlap: with
        W_opt = -1 at resonance, y1_integral returns its negative.

        Args:
            params: Cascade parameters
            quad: Quadrature settings (abs_tol is used)
            convention: Reading of beta as the kernel center

        Returns:
            IntegralValue with a real, positive value
        """
        quad = quad or QuadratureSpec()
        s0 = level_service.sum_detuning(params, convention)
        g = params.g
        self.warm_up()

        def integrand(phi: float) -> float:
            return float(self._f_spline(math.atan(abs(s0 + g * math.tan(phi)))))

        value, error = integrate.quad(
            integrand,
            -0.5 * math.pi,
            0.5 * math.pi,
            points=[math.atan(-s0 / g)],
            epsabs=quad.abs_tol / PREFACTOR,
            epsrel=0.0,
            limit=min(quad.max_subdivisions, 1000),
        )
        value *= PREFACTOR
        error *= PREFACTOR
        converged = error <= quad.abs_tol
        warnings = [] if converged else [f"y1_reduced: error estimate {error:.3g} above tolerance"]
        return IntegralValue(value=complex(value, 0.0), error=error, converged=converged, warnings=warnings)

    def gamma_leading(
        self,
        params: CascadeParams,
        w: PhaseGate,
        quad: Optional[QuadratureSpec] = None,
        symmetrize: bool = False,
        drop_y2: bool = False,
        convention: Optional[BetaConvention] = None,
    ) -> OverlapResult:
        """
        Negativity gamma = |y1 + y2| / 4 with the leading-order norms.

        Args:
            params: Cascade parameters
            w: Gate in canonical units
            quad: Quadrature settings
            symmetrize: Symmetrize W over photon exchange
            drop_y2: Skip y2 (large-detuning regime); its bound is added to the error
            convention: Reading of beta as the kernel center

        Returns:
            OverlapResult in leading mode
        """
        quad = quad or QuadratureSpec()
        y1 = self.y1_integral(params, w, quad, symmetrize, convention)
        warnings = list(y1.warnings)
        converged = y1.converged
        error = y1.error

        if drop_y2:
            y2_value = 0j
            error += self.y2_bound(params.delta)
        else:
            y2 = self.y2_integral(params, w, quad, symmetrize, convention)
            y2_value = y2.value
            warnings.extend(y2.warnings)
            converged = converged and y2.converged
            error += y2.error

        gamma = abs(y1.value + y2_value) / LEADING_DENOMINATOR
        return OverlapResult(
            y1=y1.value,
            y2=y2_value,
            norm_denominator=LEADING_DENOMINATOR,
            gamma=gamma,
            error_estimate=error / LEADING_DENOMINATOR,
            mode="leading",
            converged=converged,
            y2_dropped=drop_y2,
            warnings=warnings,
        )

    # ------------------------------------------------------------------
    # Full-diagram pipeline in physical energies
    # ------------------------------------------------------------------

    def _physical_halfwidth(self, diagram: LevelDiagram, quad: QuadratureSpec) -> float:
        params = level_service.to_params(diagram)
        s0 = 2.0 * params.beta
        return diagram.gamma * quad.halfwidth(params.g, s0, params.delta)

    def physical_y1(
        self,
        diagram: LevelDiagram,
        w: PhaseGate,
        quad: Optional[QuadratureSpec] = None,
    ) -> IntegralValue:
        """
        Cross-generation overlap with the physical prefactor 2*gamma*gamma_u/pi^2.

        Args:
            diagram: Level diagram
            w: Gate acting on photon energies measured from e_0

        Returns:
            IntegralValue; equals y1_integral of the converted parameters under
            the level convention, up to the gate's constant phase
        """
        quad = quad or QuadratureSpec()
        z_u, z_x, z_y = level_service.photon_poles(diagram)
        gamma = diagram.gamma
        gate = self._gate_values(w, False)
        rates = self._gate_rates(w, False)
        halfwidth = self._physical_halfwidth(diagram, quad)
        centers = [z_x.real, z_u.real - z_y.real]
        z_x_conj = z_x.conjugate()

        def peaks(s):
            return np.stack([np.full_like(s, z_x.real), s - z_y.real])

        def build(stretch: float):
            chart = self._chart(z_u.real, -z_u.imag, gamma, peaks, centers, rates, stretch * halfwidth)

            def integrand(u, r, piece):
                k1, k2, weight = chart(u, r, piece)
                return PREFACTOR * gamma * gate(k1, k2) / ((k1 - z_x_conj) * (k2 - z_y)) * weight

            return chart, integrand

        return self._run("physical y1", build, quad)

    def _full_numerator(
        self,
        diagram: LevelDiagram,
        w: PhaseGate,
        quad: QuadratureSpec,
        mode: AmplitudeMode,
        ordering: GateOrdering,
    ) -> Tuple[IntegralValue, IntegralValue]:
        """Cross-generation and same-generation parts of <alpha_x|W|alpha_y>."""
        z_u, z_x, z_y = level_service.photon_poles(diagram)
        gamma = diagram.gamma
        literal = mode == "literal"
        symmetrize = ordering == "symmetrized"
        gate = self._gate_values(w, symmetrize)
        rates = self._gate_rates(w, symmetrize)
        halfwidth = self._physical_halfwidth(diagram, quad)
        scale = math.sqrt(gamma / math.pi)
        e_x, e_y, e_u = z_x.real, z_y.real, z_u.real
        centers = [e_x, e_y, e_u - e_x, e_u - e_y]

        def peaks(s):
            return np.stack([np.full_like(s, e_x), np.full_like(s, e_y), s - e_x, s - e_y])

        # Color ordering: slot 1 holds the photon on E_x's side of the diagonal
        half_plane = 1.0 if symmetrize else 2.0
        lowers: List[Optional[Callable]] = [(lambda s: np.zeros_like(s)) if literal else None]
        uppers: List[Optional[Callable]] = [(lambda s: s) if literal else None]
        if not symmetrize:
            if e_x <= e_y:
                uppers.append(lambda s: 0.5 * s)
            else:
                lowers.append(lambda s: 0.5 * s)
        lower = _bound(lowers, np.max)
        upper = _bound(uppers, np.min)

        def amplitudes(k1, k2):
            if literal:
                k1, k2 = np.abs(k1), np.abs(k2)
            return (
                np.conj(scale / (k1 - z_x)),
                np.conj(scale / (k2 - z_x)),
                scale / (k1 - z_y),
                scale / (k2 - z_y),
            )

        def integral(label: str, cross_generation: bool) -> IntegralValue:
            def build(stretch: float):
                chart = self._chart(
                    e_u, -z_u.imag, gamma, peaks, centers, rates, stretch * halfwidth,
                    s_min=0.0 if literal else None, lower=lower, upper=upper,
                )

                def integrand(u, r, piece):
                    k1, k2, weight = chart(u, r, piece)
                    ax1, ax2, ay1, ay2 = amplitudes(k1, k2)
                    if cross_generation:
                        pair = ax1 * ay2 + ax2 * ay1
                    else:
                        pair = ax1 * ay1 + ax2 * ay2
                    # |A(s, Z_u)|^2 ds = L(s) ds / pi, absorbed by the chart weight
                    return half_plane / math.pi * pair * gate(k1, k2) * weight

                return chart, integrand

            return self._run(label, build, quad)

        return integral("full cross-generation", True), integral("full same-generation", False)

    def gamma_full(
        self,
        diagram: LevelDiagram,
        w: PhaseGate,
        quad: Optional[QuadratureSpec] = None,
        mode: AmplitudeMode = "analytic",
        ordering: Optional[GateOrdering] = None,
        norm_quad: Optional[QuadratureSpec] = None,
    ) -> OverlapResult:
        """
        Negativity of a physical diagram with numerical numerator and norms.

        Args:
            diagram: Level diagram
            w: Gate acting on photon energies measured from e_0
            quad: Quadrature settings for the numerator
            mode: Amplitude evaluation mode
            ordering: "color" assigns photon slots by color; "symmetrized"
                averages W over photon exchange
            norm_quad: Quadrature settings for the norms

        Returns:
            OverlapResult in full mode; y1 and y2 hold the cross- and
            same-generation parts of the numerator
        """
        quad = quad or QuadratureSpec()
        ordering = ordering or settings.gate_ordering
        level_service.validate(diagram)
        logger.info(f"Full-diagram gamma ({mode}, {ordering} ordering) for {diagram}")

        cross, same = self._full_numerator(diagram, w, quad, mode, ordering)
        norm_x = amplitude_service.norm_squared(TwoPhotonAmplitude(channel="x", diagram=diagram, mode=mode), norm_quad)
        norm_y = amplitude_service.norm_squared(TwoPhotonAmplitude(channel="y", diagram=diagram, mode=mode), norm_quad)

        warnings: List[str] = cross.warnings + same.warnings + norm_x.warnings + norm_y.warnings
        for channel, norm in (("x", norm_x), ("y", norm_y)):
            if abs(norm.value - 2.0) > settings.norm_deviation_threshold * 2.0:
                warnings.append(f"norm of alpha_{channel} is {norm.value:.6g}, deviating from 2 by more than "
                                f"{settings.norm_deviation_threshold:.0%}")
                logger.warning(warnings[-1])
            separation = level_service.color_separation(diagram, channel)
            if separation < settings.min_color_separation:
                warnings.append(f"colors of channel {channel} differ by {separation:.3g} gamma; "
                                f"leading-order norms do not apply")
                logger.warning(warnings[-1])

        denominator = norm_x.value + norm_y.value
        numerator = cross.value + same.value
        gamma = abs(numerator) / denominator
        error = (cross.error + same.error) / denominator + gamma * (norm_x.error + norm_y.error) / denominator
        converged = all(item.converged for item in (cross, same, norm_x, norm_y))
        return OverlapResult(
            y1=cross.value,
            y2=same.value,
            norm_x=norm_x.value,
            norm_y=norm_y.value,
            norm_denominator=denominator,
            gamma=gamma,
            error_estimate=error,
            mode="full",
            converged=converged,
            warnings=warnings,
        )


# Global overlap service instance
overlap_service = OverlapService()
