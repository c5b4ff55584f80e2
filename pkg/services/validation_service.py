"""Service running the oracle suite: quadrature results against closed forms and identities."""

import itertools
import math
import time
from typing import Callable, Iterable, List, Optional, Tuple
import numpy as np
from loguru import logger

from config.settings import settings
from schemas.gates import DelayGate, GateSpec, IdentityGate
from schemas.levels import CascadeParams
from schemas.overlap import QuadratureSpec
from schemas.validation import CheckResult
from services.analytic_service import analytic_service
from services.gate_service import gate_service
from services.level_service import level_service
from services.negativity_service import negativity_service
from services.overlap_service import overlap_service

HEADLINE_GAMMA = 0.371227
SMALL_G_GAMMA = 0.4990059

RAW_DELTAS = (0.0, 0.5, 1.0, 2.0, 5.0, 10.0)
RAW_BETAS = (0.0, 1.0, 5.0)
RAW_GS = (1.0, 2.0)
REDUCED_BETAS = np.linspace(0.0, 4.0, 5)
REDUCED_GS = np.linspace(0.5, 4.0, 5)


class ValidationService:
    """Checks the numerical engine against independent references."""

    @staticmethod
    def _check(name: str, deviations: Iterable[float], tolerance: float) -> CheckResult:
        deviations = list(deviations)
        worst = max(deviations) if deviations else 0.0
        passed = bool(deviations) and all(math.isfinite(d) and d <= tolerance for d in deviations)
        check = CheckResult(name=name, passed=passed, worst=worst, tolerance=tolerance, cases=len(deviations))
        log = logger.info if passed else logger.error
        log(check.line())
        return check

    def check_raw_state(self, quad: QuadratureSpec) -> List[CheckResult]:
        """Ungated y1 vanishes and gamma matches 1/(2 sqrt(delta^2 + 1)) independently of beta and g."""
        y1_dev, gamma_dev, spread = [], [], []
        for delta in RAW_DELTAS:
            gammas = []
            for beta, g in itertools.product(RAW_BETAS, RAW_GS):
                params = CascadeParams(delta=delta, beta=beta, g=g)
                result = overlap_service.gamma_leading(params, IdentityGate(), quad)
                y1_dev.append(abs(result.y1))
                gamma_dev.append(abs(result.gamma - analytic_service.gamma_raw(delta).value))
                gammas.append(result.gamma)
            spread.append(max(gammas) - min(gammas))
        return [
            self._check("ungated cross-generation overlap vanishes", y1_dev, 1e-5),
            self._check("ungated gamma matches closed form", gamma_dev, 1e-3),
            self._check("ungated gamma independent of beta and g", spread, 1e-3),
        ]

    def check_reduced_form(self, quad: QuadratureSpec) -> CheckResult:
        """2D optimal-gate overlap equals minus the 1D reduction on a 5x5 (beta, g) grid."""
        deviations = []
        for beta, g in itertools.product(REDUCED_BETAS, REDUCED_GS):
            params = CascadeParams(delta=0.0, beta=float(beta), g=float(g))
            w = gate_service.build_gate(GateSpec(kind="optimal"), level_service.frame(params))
            two_d = overlap_service.y1_integral(params, w, quad)
            one_d = overlap_service.y1_reduced(params, quad)
            deviations.append(abs(two_d.value + one_d.value))
        return self._check("optimal-gate overlap matches 1D reduction", deviations, 1e-4)

    def check_delay_closed_form(self, quad: QuadratureSpec) -> CheckResult:
        """Oscillatory quadrature of the delay gate against its closed form."""
        cases: List[Tuple[float, float, float, float]] = [
            (1.0, 1.0, 0.0, 2.0),
            (0.5, 0.2, 1.0, 1.0),
            (math.log(2.0) / 2.0, math.log(2.0) / 2.0, 0.0, 2.0),
        ]
        deviations = []
        for tau1, tau2, s0, g in cases:
            params = CascadeParams(delta=0.0, beta=s0, g=g)
            numeric = overlap_service.y1_integral(params, DelayGate(tau1=tau1, tau2=tau2), quad, convention="kernel")
            exact = analytic_service.y1_delay(tau1, tau2, s0, g).value
            deviations.append(abs(numeric.value - exact))
        return self._check("delay-gate overlap matches closed form", deviations, 1e-3)

    def check_optimal_delay(self) -> CheckResult:
        """ln(1 + g/2)/g maximizes the symmetric delay overlap; gamma = 1/4 at g = 2."""
        deviations = []
        for g in (0.5, 2.0, 4.0):
            tau = analytic_service.optimal_symmetric_delay(g).value
            best = abs(analytic_service.y1_delay(tau, tau, 0.0, g).value)
            for step in (-0.01, 0.01):
                neighbor = abs(analytic_service.y1_delay(tau + step, tau + step, 0.0, g).value)
                deviations.append(max(0.0, neighbor - best))
        tau = analytic_service.optimal_symmetric_delay(2.0).value
        deviations.append(abs(abs(analytic_service.y1_delay(tau, tau, 0.0, 2.0).value) / 4.0 - 0.25))
        return self._check("symmetric delay optimum", deviations, 1e-9)

    def check_optimal_limits(self, quad: QuadratureSpec) -> CheckResult:
        """Optimal-gate gamma at g = 2 and its approach to 1/2 as g -> 0."""
        deviations = [
            abs(abs(overlap_service.y1_reduced(CascadeParams(delta=0.0, beta=0.0, g=2.0), quad).value) / 4.0
                - HEADLINE_GAMMA),
            abs(abs(overlap_service.y1_reduced(CascadeParams(delta=0.0, beta=0.0, g=0.01), quad).value) / 4.0
                - SMALL_G_GAMMA),
            abs(analytic_service.f_of_g(0.0).value),
        ]
        return self._check("optimal-gate reference values", deviations, 1e-5)

    def _random_gate(self, rng: np.random.Generator) -> GateSpec:
        kind = str(rng.choice(["identity", "optimal", "delay", "linear"]))
        if kind == "delay":
            return GateSpec(kind=kind, tau1=float(rng.uniform(0.0, 1.5)), tau2=float(rng.uniform(0.0, 1.5)))
        if kind == "linear":
            return GateSpec(kind=kind, slope1=float(rng.uniform(-1.0, 1.0)), slope2=float(rng.uniform(-1.0, 1.0)),
                            phase0=float(rng.uniform(0.0, 2.0 * math.pi)))
        return GateSpec(kind=kind)

    def check_negativity_equivalence(self, quad: QuadratureSpec, samples: int, seed: int) -> CheckResult:
        """Peres negativity of the assembled density matrix equals gamma on random points."""
        rng = np.random.default_rng(seed)
        deviations = []
        for _ in range(samples):
            params = CascadeParams(
                delta=float(rng.uniform(-3.0, 3.0)),
                beta=float(rng.uniform(-3.0, 3.0)),
                g=float(rng.uniform(0.2, 3.0)),
            )
            w = gate_service.build_gate(self._random_gate(rng), level_service.frame(params))
            result = overlap_service.gamma_leading(params, w, quad)
            rho = negativity_service.rho_from_overlap(result)
            deviations.append(abs(negativity_service.peres_negativity(rho) - result.gamma))
        return self._check("Peres negativity equals gamma", deviations, 1e-8)

    def run_suite(
        self,
        samples: Optional[int] = None,
        seed: Optional[int] = None,
        quad: Optional[QuadratureSpec] = None,
    ) -> List[CheckResult]:
        """
        Run every oracle check.

        Args:
            samples: Random points of the negativity check (default from settings)
            seed: Seed of the random points (default from settings)
            quad: Quadrature settings

        Returns:
            One CheckResult per oracle, in a fixed order
        """
        start_time = time.time()
        quad = quad or QuadratureSpec()
        samples = samples or settings.validate_samples
        seed = settings.validate_seed if seed is None else seed
        logger.info(f"Starting validation suite ({samples} random samples, seed {seed})")

        checks: List[Callable[[], List[CheckResult]]] = [
            lambda: self.check_raw_state(quad),
            lambda: [self.check_reduced_form(quad)],
            lambda: [self.check_delay_closed_form(quad.model_copy(update={"richardson_check": True}))],
            lambda: [self.check_optimal_delay()],
            lambda: [self.check_optimal_limits(quad)],
            lambda: [self.check_negativity_equivalence(quad, samples, seed)],
        ]
        results: List[CheckResult] = []
        for check in checks:
            results.extend(check())

        failed = sum(not result.passed for result in results)
        logger.info(f"Validation suite finished in {time.time() - start_time:.2f}s: "
                    f"{len(results) - failed} passed, {failed} failed")
        return results


# Global validation service instance
validation_service = ValidationService()
