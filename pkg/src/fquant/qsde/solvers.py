"""
Fixed-step integrators for quantized ODEs and reference Stratonovich SDEs.

Both kernels integrate a batch of trajectories at once; the leading axis of
every state array is the batch.
"""

import logging
import math
from collections.abc import Callable

import numpy as np

from ..codebook.models import QuantizerPath
from ..errors import BlowUpError, CompatibilityError, QuantDomainError, SpecError
from ..kl.models import GridPath, KLBasis, uniform_grid
from .models import Calculus, SDESpec

logger = logging.getLogger(__name__)


def _require_stratonovich(spec: SDESpec) -> None:
    if spec.calculus is not Calculus.STRATONOVICH:
        raise SpecError(f"spec {spec.name!r} must be in Stratonovich form")


def _check_finite(x: np.ndarray, t: float) -> None:
    bad = ~np.all(np.isfinite(x), axis=-1)
    if np.any(bad):
        raise BlowUpError(t, (int(np.argmax(bad)),))


def rk4(
    field: Callable[[float, np.ndarray], np.ndarray], x0: np.ndarray, times: np.ndarray
) -> np.ndarray:
    """
    Classical RK4 for dx/dt = field(t, x) on a batch of initial states.

    Args:
        field: Vector field broadcasting over the batch axis.
        x0: Initial states, shape (B, m).
        times: Uniform grid.

    Returns:
        Trajectories of shape (B, n+1, m).

    Raises:
        BlowUpError: with the failure time and the batch row as index.
    """
    h = times[1] - times[0]
    out = np.empty((x0.shape[0], times.size, x0.shape[1]))
    x = out[:, 0] = x0
    for i, t in enumerate(times[:-1]):
        k1 = field(t, x)
        k2 = field(t + 0.5 * h, x + 0.5 * h * k1)
        k3 = field(t + 0.5 * h, x + 0.5 * h * k2)
        k4 = field(t + h, x + h * k3)
        x = x + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        _check_finite(x, times[i + 1])
        out[:, i + 1] = x
    return out


def driver_derivative(coefficients: np.ndarray, horizon: float) -> Callable[[float], np.ndarray]:
    """t -> alpha'(t) for a batch of quantizer paths with coefficients (B, L, d)."""
    B, L, d = coefficients.shape
    if L == 0:
        return lambda t: np.zeros((B, d))
    freq = 1.0 / np.sqrt(KLBasis(horizon, L).eigenvalues)
    scaled = math.sqrt(2.0 / horizon) * coefficients * freq[None, :, None]

    def derivative(t: float) -> np.ndarray:
        return np.einsum("bkd,k->bd", scaled, np.cos(freq * t))

    return derivative


def solve_driven_batch(
    spec: SDESpec, coefficients: np.ndarray, horizon: float, n: int
) -> tuple[np.ndarray, np.ndarray]:
    """RK4 on dx/dt = b(t, x) + sigma(t, x) alpha'(t) for a batch of drivers."""
    _require_stratonovich(spec)
    if n < 2:
        raise QuantDomainError(f"grid size must be >= 2, got {n}")
    if coefficients.shape[2] != spec.noise_dim:
        raise CompatibilityError(
            f"driver dimension {coefficients.shape[2]} != noise dimension {spec.noise_dim}"
        )
    times = uniform_grid(horizon, n)
    velocity = driver_derivative(coefficients, horizon)

    def field(t, x):
        return spec.drift(t, x) + np.einsum("bij,bj->bi", spec.diffusion(t, x), velocity(t))

    x0 = np.broadcast_to(spec.x0, (coefficients.shape[0], spec.dim)).copy()
    return times, rk4(field, x0, times)


def solve_elementary_ode(spec: SDESpec, driver: QuantizerPath, n: int) -> GridPath:
    """Solution of the ODE driven by one elementary quantizer path, RK4 with step T/n."""
    times, values = solve_driven_batch(spec, driver.coefficients[None], driver.horizon, n)
    return GridPath(times=times, values=values[0])


def heun_batch(spec: SDESpec, increments: np.ndarray, times: np.ndarray) -> np.ndarray:
    """
    Stratonovich Heun scheme for a batch of Brownian increments.

    Args:
        increments: dW of shape (B, n, d).
        times: Uniform grid, shape (n+1,).

    Returns:
        Trajectories of shape (B, n+1, m).
    """
    _require_stratonovich(spec)
    B, n, d = increments.shape
    if d != spec.noise_dim:
        raise CompatibilityError(f"Brownian dimension {d} != noise dimension {spec.noise_dim}")
    h = times[1] - times[0]
    out = np.empty((B, n + 1, spec.dim))
    x = out[:, 0] = np.broadcast_to(spec.x0, (B, spec.dim))
    for i in range(n):
        t, t_next, dw = times[i], times[i + 1], increments[:, i]
        f = spec.drift(t, x)
        g = spec.diffusion(t, x)
        x_bar = x + f * h + np.einsum("bij,bj->bi", g, dw)
        f_bar = spec.drift(t_next, x_bar)
        g_bar = spec.diffusion(t_next, x_bar)
        x = x + 0.5 * (f + f_bar) * h + 0.5 * np.einsum("bij,bj->bi", g + g_bar, dw)
        _check_finite(x, t_next)
        out[:, i + 1] = x
    return out


def solve_reference_sde(spec: SDESpec, w: GridPath) -> GridPath:
    """Pathwise Heun reference solution along a Brownian grid path."""
    values = heun_batch(spec, np.diff(w.values, axis=0)[None], w.times)
    return GridPath(times=w.times, values=values[0])
