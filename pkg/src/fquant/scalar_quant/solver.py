"""
Optimal quadratic quantization of the standard normal distribution.

The normal density being log-concave, there is exactly one stationary
N-level quantizer for every N, hence the optimal one. It is computed by a
damped Newton iteration on the centroid condition with a Lloyd step as
fallback. All cell integrals are closed-form in Phi and phi.
"""

import logging
import math
from collections.abc import Sequence
from functools import lru_cache

import numpy as np
from scipy import integrate, linalg
from scipy.special import ndtr, ndtri

from ..config import settings
from ..errors import QuantDomainError, SolverError
from .models import ScalarQuantizer

logger = logging.getLogger(__name__)

_MAX_BACKTRACK = 40
_INV_SQRT_2PI = 1.0 / math.sqrt(2.0 * math.pi)


def _pdf(x):
    return _INV_SQRT_2PI * np.exp(-0.5 * np.square(x))


def _xphi(x: np.ndarray) -> np.ndarray:
    """x * phi(x), with 0 at +-inf."""
    out = np.zeros_like(x)
    finite = np.isfinite(x)
    out[finite] = x[finite] * _pdf(x[finite])
    return out


def _bounds(levels: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    mid = 0.5 * (levels[:-1] + levels[1:])
    lo = np.concatenate(([-np.inf], mid))
    hi = np.concatenate((mid, [np.inf]))
    return lo, hi


def cell_moments(lo: np.ndarray, hi: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Mass, first and second moment of N(0,1) on the cells (lo, hi].

    Masses of right-hand cells are taken from survival-function differences
    so that far tail cells keep their relative accuracy.
    """
    right = lo >= 0
    mass = np.where(right, ndtr(-lo) - ndtr(-hi), ndtr(hi) - ndtr(lo))
    first = _pdf(lo) - _pdf(hi)
    second = mass + _xphi(lo) - _xphi(hi)
    return mass, first, second


def _distortion(levels: np.ndarray) -> float:
    lo, hi = _bounds(levels)
    mass, first, second = cell_moments(lo, hi)
    per_cell = second - 2.0 * levels * first + levels**2 * mass
    return math.fsum(per_cell.tolist())


def _residual(levels: np.ndarray) -> tuple[float, np.ndarray, np.ndarray, np.ndarray]:
    lo, hi = _bounds(levels)
    mass, first, _ = cell_moments(lo, hi)
    # empty far-tail cells give a NaN residual, so backtracking rejects the candidate
    with np.errstate(invalid="ignore", divide="ignore"):
        centroids = first / mass
    return float(np.max(np.abs(levels - centroids))), centroids, mass, first


def _newton_step(levels: np.ndarray, mass: np.ndarray, first: np.ndarray) -> np.ndarray:
    """Solve H s = grad for the tridiagonal Hessian of the distortion."""
    grad = 2.0 * (levels * mass - first)
    gaps = np.diff(levels)
    mid = 0.5 * (levels[:-1] + levels[1:])
    e = 0.5 * _pdf(mid) * gaps
    diag = 2.0 * mass
    diag[:-1] -= e
    diag[1:] -= e
    banded = np.zeros((3, levels.size))
    banded[0, 1:] = -e
    banded[1] = diag
    banded[2, :-1] = -e
    return linalg.solve_banded((1, 1), banded, grad)


def _symmetrize(levels: np.ndarray) -> np.ndarray:
    return 0.5 * (levels - levels[::-1])


def optimal_scalar_quantizer(
    n: int, tol: float | None = None, max_iter: int | None = None
) -> ScalarQuantizer:
    """
    Unique stationary n-level quadratic quantizer of N(0, 1).

    Args:
        n: Number of levels (>= 1).
        tol: Centroid residual tolerance in (0, 1e-6].
        max_iter: Iteration cap before a SolverError is raised.

    Returns:
        ScalarQuantizer with exact (closed-form) weights and distortion.
    """
    tol = settings.scalar_tol if tol is None else tol
    max_iter = settings.scalar_max_iter if max_iter is None else max_iter
    if n < 1:
        raise QuantDomainError(f"quantizer size must be >= 1, got {n}")
    if not 0.0 < tol <= 1e-6:
        raise QuantDomainError(f"tol must lie in (0, 1e-6], got {tol}")

    if n == 1:
        return ScalarQuantizer(levels=[0.0], weights=[1.0], distortion=1.0, residual=0.0)

    # companding start: optimal point density is proportional to phi^(1/3), i.e. N(0, 3)
    levels = math.sqrt(3.0) * ndtri((np.arange(n) + 0.5) / n)
    residual = math.inf
    for iteration in range(max_iter):
        levels = _symmetrize(levels)
        residual, centroids, mass, first = _residual(levels)
        if residual < tol:
            break
        step = _newton_step(levels, mass, first)
        accepted = False
        t = 1.0
        for _ in range(_MAX_BACKTRACK):
            candidate = levels - t * step
            if np.all(np.diff(candidate) > 0) and _residual(candidate)[0] < residual:
                accepted = True
                break
            t *= 0.5
        levels = candidate if accepted else centroids
        logger.debug("n=%d iter=%d residual=%.3e newton=%s", n, iteration, residual, accepted)
    else:
        raise SolverError(f"scalar quantizer of size {n} did not converge", residual, max_iter)

    lo, hi = _bounds(levels)
    mass, _, _ = cell_moments(lo, hi)
    weights = mass / math.fsum(mass.tolist())
    return ScalarQuantizer(
        levels=levels.tolist(),
        weights=weights.tolist(),
        distortion=_distortion(levels),
        residual=residual,
    )


@lru_cache(maxsize=None)
def cached_quantizer(n: int) -> ScalarQuantizer:
    """optimal_scalar_quantizer(n) at the default tolerance, memoized."""
    return optimal_scalar_quantizer(n)


def scalar_distortion(n: int) -> float:
    """Exact distortion of the optimal n-level normal quantizer."""
    return cached_quantizer(n).distortion


def quantize_scalar(x: float | np.ndarray, q: ScalarQuantizer) -> int | np.ndarray:
    """Index (0-based) of the nearest level; ties at a midpoint go to the lower index."""
    idx = np.searchsorted(q.midpoints, x, side="left")
    if np.ndim(idx) == 0:
        return int(idx)
    return idx


def lp_error(q: ScalarQuantizer, p: float) -> float:
    """
    ||Z - Zhat||_p for Z ~ N(0, 1) and its nearest-level projection on q.

    Each cell integral is split at its level (the integrand has a kink there)
    and evaluated by adaptive QUADPACK quadrature; tail cells use the
    infinite-range transformation of quad.
    """
    if not 0.0 < p <= 16.0:
        raise QuantDomainError(f"p must lie in (0, 16], got {p}")
    lo, hi = _bounds(q.level_array)
    pieces: list[float] = []
    for a, beta, b in zip(lo, q.level_array, hi):
        for left, right in ((a, beta), (beta, b)):
            value, _ = integrate.quad(
                lambda z, c=beta: abs(z - c) ** p * _pdf(z),
                left,
                right,
                epsabs=0.0,
                epsrel=1e-11,
                limit=200,
            )
            pieces.append(value)
    return math.fsum(pieces) ** (1.0 / p)


def mismatch_table(sizes: Sequence[int], p: float) -> list[tuple[int, float]]:
    """Rows (N, N * lp_error(q_N, p)) for the optimal quantizers of the given sizes."""
    return [(n, n * lp_error(cached_quantizer(n), p)) for n in sizes]
