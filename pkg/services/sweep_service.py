"""Service running one-dimensional parameter sweeps and the W_opt profile table."""

import math
import time
from typing import List, Optional, Tuple
import numpy as np
from loguru import logger

from config.settings import settings
from schemas.levels import CascadeParams, ComplexEnergy
from schemas.sweeps import PROFILE_COLUMNS, SWEEP_COLUMNS, ResultTable, SweepSpec
from services.gate_service import gate_service
from services.level_service import level_service
from services.overlap_service import overlap_service
from utils.exceptions import ReorderError
from workers.pool import map_ordered

RowOutcome = Tuple[List[float], List[str], bool]


class SweepService:
    """Evaluates gamma on a grid of one cascade parameter."""

    def grid(self, spec: SweepSpec) -> np.ndarray:
        """Inclusive grid of the sweep axis, linear or geometric."""
        if spec.log_spacing:
            return np.geomspace(spec.lo, spec.hi, spec.points)
        return np.linspace(spec.lo, spec.hi, spec.points)

    def _row(self, spec: SweepSpec, value: float) -> RowOutcome:
        """Evaluate one grid point; failures are recorded in the row, never raised."""
        try:
            params = CascadeParams(**{**spec.fixed.model_dump(), spec.axis: float(value)})
            frame = level_service.frame(params)
            w = gate_service.build_gate(spec.gate, frame)
            result = overlap_service.gamma_leading(
                params, w, spec.quad, symmetrize=spec.symmetrize, drop_y2=spec.drop_y2
            )
            row = [
                float(value),
                result.gamma,
                result.y1.real,
                result.y1.imag,
                result.y2.real,
                result.y2.imag,
                result.error_estimate,
            ]
            return row, list(result.warnings), result.converged
        except (ReorderError, ValueError) as e:
            logger.error(f"Sweep point {spec.axis}={value} failed: {e}")
            return [float(value)] + [math.nan] * (len(SWEEP_COLUMNS) - 1), [str(e)], False

    def sweep(self, spec: SweepSpec) -> ResultTable:
        """
        Evaluate gamma, y1, y2 and the error estimate at every grid point.

        Args:
            spec: Sweep specification

        Returns:
            ResultTable with one row per grid point, in grid order
        """
        if spec.axis == "kappa2":
            return self.fig2a_table(spec.points, spec.lo, spec.hi)

        start_time = time.time()
        values = self.grid(spec)
        logger.info(f"Starting {spec.axis} sweep over [{spec.lo}, {spec.hi}] with {spec.points} points, "
                    f"gate={spec.gate.kind}")
        outcomes = map_ordered(
            lambda value: self._row(spec, value), list(values), spec.workers, prepare=overlap_service.warm_up
        )

        rows = [row for row, _, _ in outcomes]
        row_warnings = [warnings for _, warnings, _ in outcomes]
        converged = all(ok for _, _, ok in outcomes)
        notes = {
            "axis": spec.axis,
            "gate": spec.gate.kind,
            "beta_convention": settings.beta_convention,
            "y2": "dropped" if spec.drop_y2 else "included",
        }
        if spec.drop_y2 and spec.axis != "delta":
            notes["y2_bound"] = overlap_service.y2_bound(spec.fixed.delta)
        if spec.axis == "beta":
            width = self.half_max_width(values, np.array([row[1] for row in rows]))
            if width is not None:
                notes["half_max_width"] = width
                # Level-diagram beta is half the kernel center
                notes["half_max_width_level"] = 0.5 * width if settings.beta_convention == "kernel" else width

        logger.info(f"{spec.axis} sweep completed in {time.time() - start_time:.2f}s (converged={converged})")
        return ResultTable(
            columns=list(SWEEP_COLUMNS),
            rows=rows,
            converged=converged,
            notes=notes,
            row_warnings=row_warnings,
            label=f"sweep-{spec.axis}",
        )

    def half_max_width(self, axis: np.ndarray, gamma: np.ndarray) -> Optional[float]:
        """
        Half-width at half maximum of a peaked curve, by linear interpolation.

        Args:
            axis: Grid values
            gamma: Curve values

        Returns:
            Mean distance from the peak to the half-maximum crossings found on
            the grid, or None when the curve never drops to half its maximum
        """
        finite = np.isfinite(gamma)
        axis, gamma = axis[finite], gamma[finite]
        if gamma.size < 2:
            return None
        peak = int(np.argmax(gamma))
        half = 0.5 * gamma[peak]
        distances = []
        for step in (1, -1):
            i = peak
            while 0 <= i + step < gamma.size and gamma[i + step] > half:
                i += step
            j = i + step
            if 0 <= j < gamma.size:
                x = np.interp(half, [gamma[j], gamma[i]], [axis[j], axis[i]])
                distances.append(abs(x - axis[peak]))
        return float(np.mean(distances)) if distances else None

    def fig2a_table(self, points: int, lo: float = -5.0, hi: float = 5.0) -> ResultTable:
        """
        arg W_opt along kappa2 at k1 = E_x, next to the linear delay phase pi - kappa2.

        Args:
            points: Grid size, at least 2
            lo: First kappa2
            hi: Last kappa2

        Returns:
            ResultTable with columns kappa2, arg_wopt, linear, difference
        """
        if points < 2:
            raise ValueError(f"points must be >= 2, got {points}")
        z_x = ComplexEnergy(real_part=0.0, half_width=1.0)
        z_y = ComplexEnergy(real_part=0.0, half_width=1.0)
        profile = gate_service.arg_wopt_profile(z_x, z_y, z_x.real_part, np.linspace(lo, hi, points))
        rows = []
        for kappa2, phase in profile:
            linear = math.pi - kappa2
            rows.append([kappa2, phase, linear, linear - phase])
        return ResultTable(columns=list(PROFILE_COLUMNS), rows=rows, label="wopt-profile")


# Global sweep service instance
sweep_service = SweepService()
