"""Product functional quantizers of Brownian motion."""

from .allocation import optimal_bit_allocation
from .models import BitAllocation, ProductCodebook, QuantizerPath, integer_root
from .product import (
    CellMean,
    MultiIndex,
    all_cells,
    build_product_codebook,
    cell_levels,
    cell_weight,
    codebook_distortion,
    diag_codebook_paths,
    elementary_path,
    empirical_cell_means,
    iter_indices,
    quantize_path,
    quantized_wiener_integral,
    voronoi_project,
)

__all__ = [
    "BitAllocation",
    "ProductCodebook",
    "QuantizerPath",
    "CellMean",
    "MultiIndex",
    "integer_root",
    "optimal_bit_allocation",
    "build_product_codebook",
    "iter_indices",
    "all_cells",
    "cell_levels",
    "elementary_path",
    "cell_weight",
    "voronoi_project",
    "quantize_path",
    "codebook_distortion",
    "quantized_wiener_integral",
    "empirical_cell_means",
    "diag_codebook_paths",
]
