"""Coordinate charts mapping the photon-energy plane onto cubature rectangles.

Integrals run in (s, k1) with s = k1 + k2. The outer axis carries the
Lorentzian sum kernel L(s) = w / ((s - c)^2 + w^2): in tan mode it is absorbed
by s = c + w tan(u), in panel mode it is an explicit weight on a truncated
linear axis. The inner axis is either split into tan-mapped pieces around the
integrand's pole positions or panelized on a truncated linear range.
"""

import math
from typing import Callable, Optional, Sequence, Tuple
import numpy as np

from utils.cubature import RectSet


PeakFunction = Callable[[np.ndarray], np.ndarray]
BoundFunction = Callable[[np.ndarray], np.ndarray]

NEAR_SUPPORT = 8.0


def panel_edges(
    lo: float,
    hi: float,
    centers: Sequence[float],
    scale: float,
    rate: float,
) -> np.ndarray:
    """
    Panel edges on [lo, hi] resolving a phase of the given asymptotic rate.

    Panels are at most pi/(4 rate) wide within NEAR_SUPPORT scales of each
    center, and at most one oscillation period elsewhere.

    Args:
        lo: Lower end of the truncated axis
        hi: Upper end of the truncated axis
        centers: Static feature positions
        scale: Feature width (pole half-width or kernel width)
        rate: Largest phase rate along the axis

    Returns:
        Sorted edge array including lo and hi
    """
    near_step = 2.0 * scale
    far_step = 16.0 * scale
    if rate > 0:
        near_step = min(near_step, math.pi / (4.0 * rate))
        far_step = min(far_step, 2.0 * math.pi / rate)

    pieces = [np.linspace(lo, hi, int(math.ceil((hi - lo) / far_step)) + 1)]
    for center in centers:
        a = max(lo, center - NEAR_SUPPORT * scale)
        b = min(hi, center + NEAR_SUPPORT * scale)
        if b > a:
            pieces.append(np.linspace(a, b, int(math.ceil((b - a) / near_step)) + 1))

    edges = np.unique(np.concatenate(pieces))
    keep = np.concatenate([[True], np.diff(edges) > 1e-9 * scale])
    edges = edges[keep]
    edges[-1] = hi
    return edges


class OuterAxis:
    """Map of the pair-sum variable s carrying the Lorentzian sum kernel."""

    TAN_CELLS = 8

    def __init__(
        self,
        center: float,
        width: float,
        s_min: Optional[float] = None,
        halfwidth: Optional[float] = None,
        rate: float = 0.0,
    ):
        """
        Build the outer axis.

        Args:
            center: Kernel center
            width: Kernel half-width
            s_min: Lower limit on s (literal mode keeps s > 0)
            halfwidth: Truncation half-width; enables panel mode
            rate: Asymptotic phase rate along s (panel mode only)
        """
        self.center = center
        self.width = width
        self.s_min = s_min
        self.halfwidth = halfwidth
        self.rate = rate

    @property
    def truncated(self) -> bool:
        return self.halfwidth is not None

    def edges(self) -> np.ndarray:
        if self.truncated:
            lo = self.center - self.halfwidth
            if self.s_min is not None:
                lo = max(lo, self.s_min)
            return panel_edges(lo, self.center + self.halfwidth, [self.center], self.width, self.rate)
        u_lo = -0.5 * math.pi
        if self.s_min is not None:
            u_lo = math.atan((self.s_min - self.center) / self.width)
        return np.linspace(u_lo, 0.5 * math.pi, self.TAN_CELLS + 1)

    def map(self, u: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        """Return s and the weight replacing L(s) ds by weight du."""
        if self.truncated:
            return u, self.width / ((u - self.center) ** 2 + self.width ** 2)
        return self.center + self.width * np.tan(u), np.ones_like(u)


class TanPieces:
    """Inner axis split at pole midpoints, each piece tan-mapped onto [0, 1]."""

    CELLS_PER_PIECE = 4

    def __init__(
        self,
        peaks: PeakFunction,
        count: int,
        width: float,
        lower: Optional[BoundFunction] = None,
        upper: Optional[BoundFunction] = None,
    ):
        """
        Build the inner axis.

        Args:
            peaks: Maps s (shape M) to pole positions (shape count x M)
            count: Number of pole positions
            width: Pole half-width
            lower: Lower domain bound as a function of s (default -inf)
            upper: Upper domain bound as a function of s (default +inf)
        """
        self.peaks = peaks
        self.count = count
        self.width = width
        self.lower = lower
        self.upper = upper

    @property
    def pieces(self) -> int:
        return self.count

    def edges(self) -> np.ndarray:
        return np.linspace(0.0, 1.0, self.CELLS_PER_PIECE + 1)

    def map(self, s: np.ndarray, r: np.ndarray, piece: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        shape = s.shape
        s = s.ravel()
        r = r.ravel()
        piece = np.asarray(piece).ravel()
        columns = np.arange(s.size)

        peaks = np.sort(np.asarray(self.peaks(s), dtype=float), axis=0)
        lo = np.broadcast_to(self.lower(s) if self.lower else -np.inf, s.shape)
        hi = np.broadcast_to(self.upper(s) if self.upper else np.inf, s.shape)
        bounds = np.vstack([lo[None, :], 0.5 * (peaks[1:] + peaks[:-1]), hi[None, :]])
        bounds = np.clip(bounds, lo, hi)

        a = bounds[piece, columns]
        b = bounds[piece + 1, columns]
        c = peaks[piece, columns]
        v_a = np.arctan((a - c) / self.width)
        v_b = np.arctan((b - c) / self.width)
        v = v_a + (v_b - v_a) * r
        k1 = c + self.width * np.tan(v)
        jac = (v_b - v_a) * self.width / np.cos(v) ** 2
        return k1.reshape(shape), jac.reshape(shape)


class LinearPanels:
    """Truncated linear inner axis with static panels and optional s-dependent bounds."""

    def __init__(
        self,
        center: float,
        halfwidth: float,
        centers: Sequence[float],
        scale: float,
        rate: float,
        lower: Optional[BoundFunction] = None,
        upper: Optional[BoundFunction] = None,
    ):
        self.center = center
        self.halfwidth = halfwidth
        self.centers = list(centers)
        self.scale = scale
        self.rate = rate
        self.lower = lower
        self.upper = upper

    @property
    def pieces(self) -> int:
        return 1

    def edges(self) -> np.ndarray:
        return panel_edges(
            self.center - self.halfwidth,
            self.center + self.halfwidth,
            self.centers,
            self.scale,
            self.rate,
        )

    def map(self, s: np.ndarray, r: np.ndarray, piece: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        jac = np.ones_like(r)
        if self.lower is not None:
            jac = np.where(r >= self.lower(s), jac, 0.0)
        if self.upper is not None:
            jac = np.where(r <= self.upper(s), jac, 0.0)
        return r, jac


class SpectralChart:
    """Pairs an outer and an inner axis into a cubature domain."""

    def __init__(self, outer: OuterAxis, inner):
        self.outer = outer
        self.inner = inner

    @property
    def truncated(self) -> bool:
        return self.outer.truncated or isinstance(self.inner, LinearPanels)

    def rects(self) -> RectSet:
        return RectSet.tensor(self.outer.edges(), self.inner.edges(), self.inner.pieces)

    def __call__(
        self, u: np.ndarray, r: np.ndarray, piece: np.ndarray
    ) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Return (k1, k2, weight) at cubature nodes."""
        s, outer_weight = self.outer.map(u)
        k1, inner_weight = self.inner.map(s, r, piece)
        return k1, s - k1, outer_weight * inner_weight
