"""
Level-2 lifts of quantizer paths, Brownian grid paths and polygonal paths.

Every lift computes the area of each grid interval and accumulates the
prefix areas with Chen's relation:

    A_{0,t_{i+1}} = A_{0,t_i} + a_i + (x_{t_i} - x_0) (x) (x_{t_{i+1}} - x_{t_i}).
"""

import numpy as np

from ..codebook.models import QuantizerPath
from ..errors import QuantDomainError
from ..kl.models import GridPath, uniform_grid
from .models import EnhancedPath

GAUSS_ORDER = 8


def _with_time(times: np.ndarray, values: np.ndarray) -> np.ndarray:
    return np.column_stack([times, values])


def accumulate(times: np.ndarray, level1: np.ndarray, local: np.ndarray) -> EnhancedPath:
    """Prefix areas from per-interval areas `local` of shape (n, D, D)."""
    inc = np.diff(level1, axis=0)
    base = level1[:-1] - level1[0]
    steps = local + base[:, :, None] * inc[:, None, :]
    level2 = np.zeros((times.size,) + local.shape[1:])
    np.cumsum(steps, axis=0, out=level2[1:])
    return EnhancedPath(times=times, level1=level1, level2=level2)


def enhance_quantizer(path: QuantizerPath, n: int) -> EnhancedPath:
    """
    Stieltjes lift of a smooth quantizer path on the grid with n steps.

    Interval areas int (x_u - x_{t_i}) (x) dx_u use Gauss-Legendre
    quadrature of order 8 with the analytic derivative.
    """
    if n < 2:
        raise QuantDomainError(f"grid size must be >= 2, got {n}")
    times = uniform_grid(path.horizon, n)
    level1 = _with_time(times, path.evaluate(times))

    nodes, weights = np.polynomial.legendre.leggauss(GAUSS_ORDER)
    h = times[1] - times[0]
    u = times[:-1, None] + 0.5 * h * (nodes + 1.0)[None, :]
    flat = u.ravel()
    x_u = _with_time(flat, path.evaluate(flat)).reshape(n, GAUSS_ORDER, -1)
    dx_u = _with_time(np.ones_like(flat), path.derivative(flat)).reshape(n, GAUSS_ORDER, -1)
    rel = x_u - level1[:-1, None, :]
    local = 0.5 * h * np.einsum("m,nmi,nmj->nij", weights, rel, dx_u)
    return accumulate(times, level1, local)


def enhance_brownian(path: GridPath) -> EnhancedPath:
    """
    Stratonovich lift of a Brownian grid path.

    Spatial cross areas are left-point Riemann sums, diagonal areas are
    1/2 (increment)^2 and the time row and column use the trapezoidal rule.
    """
    level1 = _with_time(path.times, path.values)
    inc = np.diff(level1, axis=0)
    local = 0.5 * inc[:, :, None] * inc[:, None, :]
    spatial = np.arange(1, level1.shape[1])
    cross = spatial[:, None] != spatial[None, :]
    local[:, 1:, 1:][:, cross] = 0.0
    return accumulate(path.times, level1, local)


def enhance_piecewise_linear(path: GridPath) -> EnhancedPath:
    """Exact lift of the polygonal interpolation: interval area 1/2 inc (x) inc."""
    level1 = _with_time(path.times, path.values)
    inc = np.diff(level1, axis=0)
    return accumulate(path.times, level1, 0.5 * inc[:, :, None] * inc[:, None, :])


def zero_path(n: int, d: int, horizon: float) -> EnhancedPath:
    """Lift of the constant path 0 (time component only)."""
    times = uniform_grid(horizon, n)
    return enhance_piecewise_linear(GridPath(times=times, values=np.zeros((n + 1, d))))
