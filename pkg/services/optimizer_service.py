"""Service maximizing gamma over the delay and linear-phase gate families."""

import itertools
import math
import time
from typing import Dict, List, Tuple
import numpy as np
from loguru import logger
from scipy import optimize

from schemas.overlap import OverlapResult
from schemas.sweeps import OptimizeResult, OptimizeSpec, TraceEntry
from services.gate_service import gate_service
from services.level_service import level_service
from services.overlap_service import overlap_service
from workers.pool import map_ordered

PARAMETER_ORDER = ("tau1", "tau2", "slope1", "slope2")


class _BudgetExhausted(Exception):
    """Raised inside the local stage when the evaluation budget is spent."""


class OptimizerService:
    """Two-stage derivative-free search: coarse grid scan, then bounded Nelder-Mead."""

    def _evaluate(self, spec: OptimizeSpec, parameters: Dict[str, float]) -> OverlapResult:
        gate_spec = spec.base.model_copy(update={"kind": spec.family, **parameters})
        frame = level_service.frame(spec.fixed)
        w = gate_service.build_gate(gate_spec, frame)
        return overlap_service.gamma_leading(spec.fixed, w, spec.quad, drop_y2=spec.drop_y2)

    @staticmethod
    def _axis(lo: float, hi: float, points: int) -> np.ndarray:
        if lo == hi:
            return np.array([lo])
        if points == 1:
            return np.array([0.5 * (lo + hi)])
        return np.linspace(lo, hi, points)

    @staticmethod
    def _entry(index: int, stage: str, parameters: Dict[str, float], result: OverlapResult) -> TraceEntry:
        return TraceEntry(
            index=index,
            stage=stage,
            parameters=parameters,
            gamma=result.gamma,
            error=result.error_estimate,
            converged=result.converged,
        )

    def optimize_delays(self, spec: OptimizeSpec) -> OptimizeResult:
        """
        Maximize gamma over the free gate parameters.

        Args:
            spec: Free parameters with bounds, fixed cascade parameters and budget

        Returns:
            OptimizeResult with the best point, its gamma and the evaluation
            trace in logical order; unconverged when the budget runs out
        """
        start_time = time.time()
        names = [name for name in PARAMETER_ORDER if name in spec.bounds]
        bounds = [spec.bounds[name] for name in names]
        logger.info(f"Starting {spec.family} optimization over {names} at {spec.fixed} "
                    f"(budget {spec.max_evaluations})")

        # Stage 1: grid scan
        axes = [self._axis(lo, hi, spec.grid_points) for lo, hi in bounds]
        grid = [dict(zip(names, map(float, point))) for point in itertools.product(*axes)]
        budget_hit = len(grid) > spec.max_evaluations
        grid = grid[:spec.max_evaluations]
        results = map_ordered(
            lambda point: self._evaluate(spec, point), grid, spec.workers, prepare=overlap_service.warm_up
        )
        trace: List[TraceEntry] = [
            self._entry(i, "grid", point, result) for i, (point, result) in enumerate(zip(grid, results))
        ]
        best = max(trace, key=lambda entry: entry.gamma)

        # Stage 2: local refinement on the axes with room to move
        free = [i for i, (lo, hi) in enumerate(bounds) if hi > lo]
        message = "grid scan only"
        local_converged = True
        if budget_hit:
            message = "evaluation budget exhausted during the grid scan"
            local_converged = False
        elif free:
            local_converged, message = self._refine(spec, names, bounds, free, best, trace)

        best = max(trace, key=lambda entry: entry.gamma)
        converged = local_converged and best.converged
        if not local_converged:
            logger.warning(f"Optimizer stopped early: {message}")
        logger.info(f"Optimization finished in {time.time() - start_time:.2f}s: "
                    f"best gamma={best.gamma:.12g} at {best.parameters} after {len(trace)} evaluations")
        return OptimizeResult(
            best_parameters=dict(best.parameters),
            best_gamma=best.gamma,
            converged=converged,
            trace=trace,
            message=message,
        )

    def _refine(
        self,
        spec: OptimizeSpec,
        names: List[str],
        bounds: List[Tuple[float, float]],
        free: List[int],
        start: TraceEntry,
        trace: List[TraceEntry],
    ) -> Tuple[bool, str]:
        """Bounded Nelder-Mead from the best grid point; appends to trace in evaluation order."""
        fixed_point = dict(start.parameters)
        x0 = np.array([fixed_point[names[i]] for i in free])
        lower = np.array([bounds[i][0] for i in free])
        upper = np.array([bounds[i][1] for i in free])
        span = upper - lower

        steps = span / (spec.grid_points - 1) if spec.grid_points > 1 else 0.25 * span
        simplex = [x0]
        for axis, step in enumerate(steps):
            vertex = x0.copy()
            vertex[axis] = x0[axis] + step if x0[axis] + step <= upper[axis] else x0[axis] - step
            simplex.append(vertex)

        def objective(x: np.ndarray) -> float:
            if len(trace) >= spec.max_evaluations:
                raise _BudgetExhausted()
            point = dict(fixed_point)
            for value, i in zip(np.clip(x, lower, upper), free):
                point[names[i]] = float(value)
            result = self._evaluate(spec, point)
            trace.append(self._entry(len(trace), "local", point, result))
            return -result.gamma

        options = {
            "initial_simplex": np.array(simplex),
            "xatol": math.sqrt(spec.rel_tol) * float(span.max()),
            "fatol": spec.rel_tol * max(start.gamma, 1e-12),
            "maxfev": spec.max_evaluations,
        }
        try:
            result = optimize.minimize(
                objective,
                x0,
                method="Nelder-Mead",
                bounds=optimize.Bounds(lower, upper),
                options=options,
            )
        except _BudgetExhausted:
            return False, f"evaluation budget of {spec.max_evaluations} exhausted during local refinement"
        if not result.success:
            return False, f"local refinement did not converge: {result.message}"
        return True, "converged"


# Global optimizer service instance
optimizer_service = OptimizerService()
