"""Optimal quantization of the normal distribution and of diagonal Gaussians."""

from .models import GaussianDiagCodebook, ScalarQuantizer
from .solver import (
    cached_quantizer,
    lp_error,
    mismatch_table,
    optimal_scalar_quantizer,
    quantize_scalar,
    scalar_distortion,
)
from .allocation import allocate_levels, allocation_distortion, is_locally_optimal
from .lloyd import lloyd_gaussian_diag, product_codebook_points

__all__ = [
    "ScalarQuantizer",
    "GaussianDiagCodebook",
    "optimal_scalar_quantizer",
    "cached_quantizer",
    "scalar_distortion",
    "quantize_scalar",
    "lp_error",
    "mismatch_table",
    "allocate_levels",
    "allocation_distortion",
    "is_locally_optimal",
    "lloyd_gaussian_diag",
    "product_codebook_points",
]
