"""Karhunen-Loève expansion of Brownian motion and grid paths."""

from .basis import basis_eval, eigenvalue, kl_coefficients, kl_reconstruct, l2_norm
from .brownian import conditional_interpolation, simulate_brownian, simulate_brownian_batch
from .models import GridPath, KLBasis, uniform_grid

__all__ = [
    "KLBasis",
    "GridPath",
    "uniform_grid",
    "eigenvalue",
    "basis_eval",
    "kl_coefficients",
    "kl_reconstruct",
    "l2_norm",
    "simulate_brownian",
    "simulate_brownian_batch",
    "conditional_interpolation",
]
