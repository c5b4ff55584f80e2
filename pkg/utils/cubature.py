"""Adaptive tensor Gauss-Kronrod cubature over rectangles of a mapped plane."""

from typing import Callable, NamedTuple, Optional
import numpy as np
from loguru import logger

from config.settings import settings


# Kronrod 15-point abscissae on [0, 1] (descending) and weights
_XGK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
])
_WGK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
# Gauss 7-point weights at _XGK[1], _XGK[3], _XGK[5], _XGK[7]
_WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])

NODES = np.concatenate([-_XGK[:-1], _XGK[::-1]])
KRONROD_WEIGHTS = np.concatenate([_WGK[:-1], _WGK[::-1]])
_WG_FULL = np.zeros(8)
_WG_FULL[1::2] = _WG
GAUSS_WEIGHTS = np.concatenate([_WG_FULL[:-1], _WG_FULL[::-1]])

POINTS_PER_RECT = NODES.size ** 2
CHUNK_RECTS = 2048

# f(u, r, piece) -> complex array of the broadcast shape
Integrand = Callable[[np.ndarray, np.ndarray, np.ndarray], np.ndarray]


class RectSet(NamedTuple):
    """Axis-aligned rectangles in (u, r) with the chart piece they belong to."""
    u_lo: np.ndarray
    u_hi: np.ndarray
    r_lo: np.ndarray
    r_hi: np.ndarray
    piece: np.ndarray

    @classmethod
    def tensor(cls, u_edges: np.ndarray, r_edges: np.ndarray, pieces: int = 1) -> "RectSet":
        """Tensor grid of cells for every piece."""
        u_edges = np.asarray(u_edges, dtype=float)
        r_edges = np.asarray(r_edges, dtype=float)
        nu, nr = u_edges.size - 1, r_edges.size - 1
        iu, ir, ip = np.meshgrid(np.arange(nu), np.arange(nr), np.arange(pieces), indexing="ij")
        iu, ir, ip = iu.ravel(), ir.ravel(), ip.ravel()
        return cls(u_edges[iu], u_edges[iu + 1], r_edges[ir], r_edges[ir + 1], ip)

    @classmethod
    def concat(cls, *sets: "RectSet") -> "RectSet":
        return cls(*(np.concatenate(parts) for parts in zip(*sets)))

    def take(self, index: np.ndarray) -> "RectSet":
        return RectSet(*(field[index] for field in self))

    def __len__(self) -> int:
        return int(self.u_lo.size)


class CubatureResult(NamedTuple):
    """Outcome of one adaptive integration."""
    value: complex
    error: float
    converged: bool
    rects: int
    evaluations: int
    nonfinite: bool


class AdaptiveCubature:
    """Globally adaptive 2D integration with a tensor G7/K15 embedded rule.

    Every round refines, in one vectorized batch, the largest-error rectangles
    whose combined error covers the surplus over the tolerance. Each chosen
    rectangle is halved along the axis whose one-dimensional Gauss replacement
    moves the estimate most.
    """

    def __init__(
        self,
        abs_tol: Optional[float] = None,
        max_subdivisions: Optional[int] = None,
        batch_size: Optional[int] = None,
    ):
        """Initialize the integrator from explicit limits or settings."""
        self.abs_tol = abs_tol if abs_tol is not None else settings.quad_abs_tol
        self.max_subdivisions = (
            max_subdivisions if max_subdivisions is not None else settings.quad_max_subdivisions
        )
        self.batch_size = batch_size if batch_size is not None else settings.quad_batch_size

    def integrate(self, f: Integrand, rects: RectSet) -> CubatureResult:
        """
        Integrate f over the union of the given rectangles.

        Args:
            f: Vectorized integrand of (u, r, piece)
            rects: Initial partition of the domain

        Returns:
            CubatureResult with value, error estimate and convergence flag
        """
        values, errors, err_u, err_r, bad = self._evaluate(f, rects)
        nonfinite = bool(bad)
        evaluations = len(rects) * POINTS_PER_RECT
        splits = 0

        while True:
            total_error = float(errors.sum())
            if total_error <= self.abs_tol:
                converged = True
                break
            if splits >= self.max_subdivisions:
                converged = False
                break

            order = np.argsort(-errors, kind="stable")
            surplus = total_error - 0.5 * self.abs_tol
            count = int(np.searchsorted(np.cumsum(errors[order]), surplus)) + 1
            count = max(1, min(count, self.batch_size, self.max_subdivisions - splits, order.size))
            chosen = order[:count]

            parent = rects.take(chosen)
            along_u = err_u[chosen] >= err_r[chosen]
            children = self._split(parent, along_u)

            keep = np.ones(len(rects), dtype=bool)
            keep[chosen] = False
            c_values, c_errors, c_err_u, c_err_r, c_bad = self._evaluate(f, children)
            nonfinite = nonfinite or bool(c_bad)

            rects = RectSet.concat(rects.take(keep), children)
            values = np.concatenate([values[keep], c_values])
            errors = np.concatenate([errors[keep], c_errors])
            err_u = np.concatenate([err_u[keep], c_err_u])
            err_r = np.concatenate([err_r[keep], c_err_r])

            splits += count
            evaluations += len(children) * POINTS_PER_RECT

        value = complex(values.sum())
        error = float(errors.sum())
        if nonfinite:
            logger.warning("Integrand produced non-finite values; they were dropped from the sum")
            converged = False
        logger.debug(
            f"Cubature finished: value={value:.12g} error={error:.3g} "
            f"rects={len(rects)} evaluations={evaluations} converged={converged}"
        )
        return CubatureResult(value, error, converged, len(rects), evaluations, nonfinite)

    @staticmethod
    def _split(parent: RectSet, along_u: np.ndarray) -> RectSet:
        """Halve each rectangle along u where along_u is set, else along r."""
        u_mid = 0.5 * (parent.u_lo + parent.u_hi)
        r_mid = 0.5 * (parent.r_lo + parent.r_hi)
        first = RectSet(
            parent.u_lo,
            np.where(along_u, u_mid, parent.u_hi),
            parent.r_lo,
            np.where(along_u, parent.r_hi, r_mid),
            parent.piece,
        )
        second = RectSet(
            np.where(along_u, u_mid, parent.u_lo),
            parent.u_hi,
            np.where(along_u, parent.r_lo, r_mid),
            parent.r_hi,
            parent.piece,
        )
        return RectSet.concat(first, second)

    @classmethod
    def _evaluate(cls, f: Integrand, rects: RectSet):
        """Apply the tensor rules to every rectangle, CHUNK_RECTS rectangles per vectorized call."""
        if len(rects) > CHUNK_RECTS:
            parts = [
                cls._evaluate(f, rects.take(slice(start, start + CHUNK_RECTS)))
                for start in range(0, len(rects), CHUNK_RECTS)
            ]
            arrays = [np.concatenate([part[i] for part in parts]) for i in range(4)]
            return (*arrays, sum(part[4] for part in parts))

        hu = 0.5 * (rects.u_hi - rects.u_lo)
        hr = 0.5 * (rects.r_hi - rects.r_lo)
        cu = 0.5 * (rects.u_hi + rects.u_lo)
        cr = 0.5 * (rects.r_hi + rects.r_lo)

        u = cu[:, None, None] + hu[:, None, None] * NODES[None, :, None]
        r = cr[:, None, None] + hr[:, None, None] * NODES[None, None, :]
        u, r = np.broadcast_arrays(u, r)
        piece = np.broadcast_to(rects.piece[:, None, None], u.shape)

        samples = np.asarray(f(u, r, piece), dtype=complex)
        finite = np.isfinite(samples)
        bad = int((~finite).sum())
        if bad:
            samples = np.where(finite, samples, 0.0)

        area = hu * hr
        q_kk = area * np.einsum("nij,i,j->n", samples, KRONROD_WEIGHTS, KRONROD_WEIGHTS)
        q_gg = area * np.einsum("nij,i,j->n", samples, GAUSS_WEIGHTS, GAUSS_WEIGHTS)
        q_gk = area * np.einsum("nij,i,j->n", samples, GAUSS_WEIGHTS, KRONROD_WEIGHTS)
        q_kg = area * np.einsum("nij,i,j->n", samples, KRONROD_WEIGHTS, GAUSS_WEIGHTS)

        errors = np.abs(q_kk - q_gg)
        err_u = np.abs(q_kk - q_gk)
        err_r = np.abs(q_kk - q_kg)
        return q_kk, errors, err_u, err_r, bad
