"""Karhunen-Loève eigenvalues, basis functions and coefficient extraction."""

import numpy as np
from scipy.integrate import trapezoid

from ..errors import QuantDomainError, ResolutionError
from .models import GridPath, KLBasis


def eigenvalue(k: int, horizon: float) -> float:
    """lambda_k = (T / (pi (k - 1/2)))^2."""
    if k < 1:
        raise QuantDomainError(f"frequency index must be >= 1, got {k}")
    if horizon <= 0:
        raise QuantDomainError(f"horizon must be > 0, got {horizon}")
    return (horizon / (np.pi * (k - 0.5))) ** 2


def basis_eval(k: int, t, horizon: float):
    """e_k(t) = sqrt(2/T) sin(t / sqrt(lambda_k)); vectorized over t."""
    lam = eigenvalue(k, horizon)
    return np.sqrt(2.0 / horizon) * np.sin(np.asarray(t, dtype=np.float64) / np.sqrt(lam))


def trapezoid_weights(path: GridPath) -> np.ndarray:
    """Trapezoidal quadrature weights of the uniform grid."""
    w = np.full(path.n + 1, path.step)
    w[0] = w[-1] = 0.5 * path.step
    return w


def kl_coefficients(path: GridPath, K: int) -> np.ndarray:
    """
    Normalized K-L coordinates xi_k = (W | e_k) / sqrt(lambda_k), k = 1..K.

    The L^2 inner products are trapezoidal sums on the path grid.

    Returns:
        Array of shape (K, d).
    """
    if K < 1:
        raise QuantDomainError(f"K must be >= 1, got {K}")
    if path.n < 2 * K:
        raise ResolutionError(f"grid of {path.n} steps cannot resolve {K} K-L coefficients")
    basis = KLBasis(path.horizon, K)
    weighted = basis.functions(path.times) * trapezoid_weights(path)
    return (weighted @ path.values) / np.sqrt(basis.eigenvalues)[:, None]


def kl_reconstruct(coefficients: np.ndarray, times: np.ndarray, horizon: float) -> np.ndarray:
    """Truncated synthesis sum_k sqrt(lambda_k) xi_k e_k(t), shape (len(times), d)."""
    coefficients = np.atleast_2d(np.asarray(coefficients, dtype=np.float64))
    if coefficients.shape[0] == 1 and coefficients.shape[1] != 1:
        coefficients = coefficients.T
    basis = KLBasis(horizon, coefficients.shape[0])
    scaled = coefficients * np.sqrt(basis.eigenvalues)[:, None]
    return basis.functions(np.asarray(times, dtype=np.float64)).T @ scaled


def l2_norm(path: GridPath) -> float:
    """|x|_{L^2_T} by the trapezoidal rule on the path grid."""
    return float(np.sqrt(trapezoid(np.sum(path.values**2, axis=1), path.times)))
