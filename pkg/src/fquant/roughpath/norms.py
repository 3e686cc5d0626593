"""
Hölder and p-variation semi-norms and the rough-path distances rho_q and delta_p.

Vector increments use the Euclidean norm, level-2 increments the Frobenius
norm. Suprema run over pairs of grid points.
"""

import logging
import math
from functools import lru_cache

import numpy as np

from ..config import settings
from ..errors import CompatibilityError, GridSizeError, QuantDomainError
from ..kl.models import GridPath
from .models import EnhancedPath

logger = logging.getLogger(__name__)


@lru_cache(maxsize=None)
def _warn_sparse(n: int) -> None:
    logger.warning("grid of %d steps: Hölder sup restricted to sparse gaps (lower bound)", n)


def holder_gaps(n: int) -> np.ndarray:
    """
    Index gaps scanned by the Hölder sup on a grid with n steps.

    All gaps up to settings.holder_exhaustive_max_grid; beyond, every gap up
    to settings.holder_dense_gap plus the powers of two and n itself, which
    yields a lower bound of the grid sup.
    """
    if n <= settings.holder_exhaustive_max_grid:
        return np.arange(1, n + 1)
    _warn_sparse(n)
    dense = np.arange(1, min(settings.holder_dense_gap, n) + 1)
    powers = 2 ** np.arange(int(math.log2(n)) + 1)
    return np.unique(np.concatenate([dense, powers, [n]]))


def _values(path: GridPath | EnhancedPath) -> tuple[np.ndarray, float]:
    if isinstance(path, EnhancedPath):
        return path.level1, path.horizon
    return path.values, path.horizon


def _holder_level1(values: np.ndarray, horizon: float, q: float) -> float:
    n = values.shape[0] - 1
    h = horizon / n
    best = 0.0
    for g in holder_gaps(n):
        inc = np.linalg.norm(values[g:] - values[:-g], axis=1)
        best = max(best, float(inc.max()) / (g * h) ** (1.0 / q))
    return horizon ** (1.0 / q) * best


def _area_gap(path: EnhancedPath, g: int) -> np.ndarray:
    s = np.arange(path.n + 1 - g)
    return path.areas(s, s + g)


def _holder_level2(x: EnhancedPath, y: EnhancedPath | None, q: float) -> float:
    h = x.horizon / x.n
    best = 0.0
    for g in holder_gaps(x.n):
        diff = _area_gap(x, g)
        if y is not None:
            diff = diff - _area_gap(y, g)
        size = np.sqrt(np.einsum("kij,kij->k", diff, diff))
        best = max(best, float(size.max()) / (g * h) ** (2.0 / q))
    return x.horizon ** (2.0 / q) * best


def holder_seminorm(path: GridPath | EnhancedPath, q: float, order: int = 1) -> float:
    """
    1/q-Hölder semi-norm of level 1 (order=1) or 2/q-Hölder semi-norm of level 2 (order=2).

    Level 1: T^(1/q) max_{s<t} |x_t - x_s| / (t - s)^(1/q).
    Level 2: T^(2/q) max_{s<t} |A_{s,t}| / (t - s)^(2/q).
    """
    if q <= 0:
        raise QuantDomainError(f"q must be > 0, got {q}")
    if order == 1:
        values, horizon = _values(path)
        return _holder_level1(values, horizon, q)
    if order == 2:
        if not isinstance(path, EnhancedPath):
            raise QuantDomainError("level-2 semi-norm needs an enhanced path")
        return _holder_level2(path, None, q)
    raise QuantDomainError(f"order must be 1 or 2, got {order}")


def holder_distance(
    x: GridPath | EnhancedPath, y: GridPath | EnhancedPath, q: float, order: int = 1
) -> float:
    """Hölder semi-norm of the level-1 or level-2 difference of two paths on one grid."""
    if order == 2:
        if not (isinstance(x, EnhancedPath) and isinstance(y, EnhancedPath)):
            raise QuantDomainError("level-2 distance needs enhanced paths")
        x.check_compatible(y)
        return _holder_level2(x, y, q)
    vx, horizon = _values(x)
    vy, _ = _values(y)
    if vx.shape != vy.shape:
        raise CompatibilityError(f"paths of shape {vx.shape} and {vy.shape}")
    return holder_seminorm(GridPath(times=x.times, values=vx - vy), q, order=1)


def sup_norm(path: GridPath | EnhancedPath | np.ndarray) -> float:
    """max_t |x_t - x_0|."""
    values = path if isinstance(path, np.ndarray) else _values(path)[0]
    values = values.reshape(values.shape[0], -1)
    return float(np.linalg.norm(values - values[0], axis=1).max())


def _check_pvar_size(n: int) -> None:
    if n > settings.pvar_max_grid:
        raise GridSizeError(
            f"p-variation on {n} steps exceeds the cap of {settings.pvar_max_grid}"
        )


def p_variation(path: GridPath | EnhancedPath | np.ndarray, p: float) -> float:
    """
    (max over grid partitions of sum |x_{t_{l+1}} - x_{t_l}|^p)^(1/p).

    Exact O(n^2) dynamic program over the grid points.
    """
    if p < 1:
        raise QuantDomainError(f"p must be >= 1, got {p}")
    values = path if isinstance(path, np.ndarray) else _values(path)[0]
    values = values.reshape(values.shape[0], -1)
    n = values.shape[0] - 1
    _check_pvar_size(n)
    best = np.zeros(n + 1)
    for j in range(1, n + 1):
        jumps = np.linalg.norm(values[j] - values[:j], axis=1) ** p
        best[j] = np.max(best[:j] + jumps)
    return float(best[n] ** (1.0 / p))


def _area_variation(x: EnhancedPath, y: EnhancedPath, p: float) -> float:
    """p-variation of the level-2 difference with A_{s,t} as increment functional."""
    _check_pvar_size(x.n)
    best = np.zeros(x.n + 1)
    for j in range(1, x.n + 1):
        s = np.arange(j)
        diff = x.areas(s, j) - y.areas(s, j)
        jumps = np.sqrt(np.einsum("kij,kij->k", diff, diff)) ** p
        best[j] = np.max(best[:j] + jumps)
    return float(best[x.n] ** (1.0 / p))


def rho_q(x: EnhancedPath, y: EnhancedPath, q: float) -> float:
    """|y^1 - x^1|_{q,Hol} + |y^2 - x^2|_{q/2,Hol}."""
    x.check_compatible(y)
    if q <= 2:
        raise QuantDomainError(f"q must be > 2, got {q}")
    level1 = _holder_level1(x.level1 - y.level1, x.horizon, q)
    return level1 + _holder_level2(x, y, q)


def delta_p(x: EnhancedPath, y: EnhancedPath, p: float) -> float:
    """Var_p(level-1 difference) + Var_{p/2}(level-2 difference)."""
    x.check_compatible(y)
    if p < 2:
        raise QuantDomainError(f"p must be >= 2, got {p}")
    return p_variation(x.level1 - y.level1, p) + _area_variation(x, y, p / 2.0)
