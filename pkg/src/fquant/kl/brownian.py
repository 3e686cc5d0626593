"""Brownian path simulation and piecewise-affine conditional interpolation."""

from collections.abc import Sequence

import numpy as np

from ..errors import GridError, QuantDomainError
from ..services.runner import MonteCarloRunner, SeedLike, as_seed_sequence
from .models import GridPath, uniform_grid


def _increments(seed: SeedLike, n: int, d: int, horizon: float) -> np.ndarray:
    rng = np.random.default_rng(as_seed_sequence(seed))
    return rng.standard_normal((n, d)) * np.sqrt(horizon / n)


def simulate_brownian(n: int, d: int, T: float, seed: SeedLike) -> GridPath:
    """
    Standard d-dimensional Brownian motion on the uniform grid of [0, T].

    Increments are exact N(0, T/n) draws; the path starts at 0.
    """
    if n < 1 or d < 1:
        raise QuantDomainError(f"need n >= 1 and d >= 1, got n={n}, d={d}")
    values = np.zeros((n + 1, d))
    np.cumsum(_increments(seed, n, d, T), axis=0, out=values[1:])
    return GridPath(times=uniform_grid(T, n), values=values)


def simulate_brownian_batch(
    n: int, d: int, T: float, seed: SeedLike, paths: int, workers: int | None = None
) -> list[GridPath]:
    """`paths` independent Brownian paths, one child seed each.

    Path i only depends on (seed, i), so batches of different sizes share
    their leading paths.
    """
    runner = MonteCarloRunner(workers)
    return runner.map_seeded(lambda s: simulate_brownian(n, d, T, s), seed, paths)


def conditional_interpolation(path: GridPath, knots: Sequence[float]) -> GridPath:
    """
    E(W | W_{t_0}, ..., W_{t_m}) for grid-aligned knots 0 = t_0 < ... < t_m = T.

    Linear interpolation through the knot values, sampled on the path grid.
    """
    knots = np.asarray(knots, dtype=np.float64)
    if knots.ndim != 1 or knots.size < 2:
        raise GridError("need at least the knots 0 and T")
    if np.any(np.diff(knots) <= 0):
        raise GridError("knots must be strictly increasing")
    idx = np.array([path.grid_index(t) for t in knots])
    if idx[0] != 0 or idx[-1] != path.n:
        raise GridError("knots must include 0 and T")
    knot_times = path.times[idx]
    values = np.column_stack(
        [np.interp(path.times, knot_times, path.values[idx, c]) for c in range(path.dim)]
    )
    values[idx] = path.values[idx]
    return GridPath(times=path.times, values=values)
