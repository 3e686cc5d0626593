"""
Product functional quantization of d-dimensional Brownian motion.

Cells, elementary paths, Voronoi projection and the quantized Wiener
integral of a product codebook built on the K-L coordinates.
"""

import logging
import math
from collections.abc import Callable, Iterator, Sequence
from dataclasses import dataclass
from itertools import product

import numpy as np
from scipy.integrate import cumulative_trapezoid

from ..errors import CodebookIndexError, CompatibilityError
from ..kl.basis import kl_coefficients
from ..kl.models import GridPath
from ..scalar_quant.models import GaussianDiagCodebook
from ..scalar_quant.solver import cached_quantizer, quantize_scalar
from .allocation import optimal_bit_allocation
from .models import ProductCodebook, QuantizerPath, integer_root

logger = logging.getLogger(__name__)

MultiIndex = tuple[int, ...]


def build_product_codebook(N: int, d: int, T: float) -> ProductCodebook:
    """Product quantizer of size <= N, each component allocated at level floor(N^(1/d))."""
    per_component = integer_root(N, d)
    allocation = optimal_bit_allocation(per_component, T)
    quantizers = tuple(cached_quantizer(m) for m in allocation.levels)
    cb = ProductCodebook(
        dim=d, horizon=float(T), budget=N, allocation=allocation, quantizers=quantizers
    )
    logger.info(
        "codebook N=%d d=%d T=%g size=%d allocation=%s distortion=%.6g",
        N,
        d,
        T,
        cb.size,
        allocation.levels,
        cb.distortion,
    )
    return cb


def iter_indices(cb: ProductCodebook) -> Iterator[MultiIndex]:
    """All multi-indices in row-major order over (component, frequency)."""
    ranges = [range(m) for m in cb.allocation.levels] * cb.dim
    return product(*ranges)


def _check_index(cb: ProductCodebook, idx: Sequence[int]) -> MultiIndex:
    idx = tuple(int(i) for i in idx)
    if len(idx) != cb.index_length:
        raise CodebookIndexError(f"multi-index of length {len(idx)}, expected {cb.index_length}")
    for pos, i in enumerate(idx):
        m = cb.allocation.levels[pos % cb.active]
        if not 0 <= i < m:
            raise CodebookIndexError(f"index {i} at position {pos} outside [0, {m})")
    return idx


def cell_levels(cb: ProductCodebook, idx: Sequence[int]) -> np.ndarray:
    """Quantized K-L coordinates xi_hat of a cell, shape (L, d)."""
    idx = _check_index(cb, idx)
    out = np.zeros((cb.active, cb.dim))
    for pos, i in enumerate(idx):
        c, k = divmod(pos, cb.active)
        out[k, c] = cb.quantizers[k].level_array[i]
    return out


def elementary_path(cb: ProductCodebook, idx: Sequence[int]) -> QuantizerPath:
    """Quantizer path of a cell: c_k = beta_{n_k} sqrt(lambda_k) per component."""
    coefficients = cell_levels(cb, idx) * np.sqrt(cb.eigenvalues)[:, None]
    return QuantizerPath(horizon=cb.horizon, coefficients=coefficients)


def cell_weight(cb: ProductCodebook, idx: Sequence[int]) -> float:
    """P(W in cell): product of the scalar cell weights."""
    idx = _check_index(cb, idx)
    return math.prod(
        cb.quantizers[pos % cb.active].weights[i] for pos, i in enumerate(idx)
    )


def all_cells(cb: ProductCodebook) -> tuple[list[MultiIndex], np.ndarray, np.ndarray]:
    """
    Every cell of the codebook at once.

    Returns:
        (indices, coefficients of shape (size, L, d), weights of shape (size,))
    """
    indices = list(iter_indices(cb))
    if cb.active == 0:
        return indices, np.zeros((1, 0, cb.dim)), np.ones(1)
    levels = [q.level_array for q in cb.quantizers]
    weights = [q.weight_array for q in cb.quantizers]
    idx = np.array(indices, dtype=np.intp).reshape(len(indices), cb.dim, cb.active)
    beta = np.stack([levels[k][idx[:, :, k]] for k in range(cb.active)], axis=1)
    w = np.prod(
        np.stack([weights[k][idx[:, :, k]] for k in range(cb.active)], axis=1), axis=(1, 2)
    )
    return indices, beta * np.sqrt(cb.eigenvalues)[None, :, None], w


def voronoi_project(path: GridPath, cb: ProductCodebook) -> MultiIndex:
    """
    Nearest codebook element in L^2([0, T]).

    The basis is orthonormal and the codebook a coordinate product, so the
    global nearest neighbour is found coordinate by coordinate.
    """
    if path.dim != cb.dim:
        raise CompatibilityError(f"path dimension {path.dim} != codebook dimension {cb.dim}")
    if cb.active == 0:
        return ()
    xi = kl_coefficients(path, cb.active)
    return tuple(
        quantize_scalar(float(xi[k, c]), cb.quantizers[k])
        for c in range(cb.dim)
        for k in range(cb.active)
    )


def quantize_path(path: GridPath, cb: ProductCodebook) -> GridPath:
    """W_hat: the projected elementary path sampled on the grid of `path`."""
    return elementary_path(cb, voronoi_project(path, cb)).sample(path.n)


def codebook_distortion(cb: ProductCodebook) -> float:
    """d (sum_{k<=L} lambda_k dist(N_k) + T^2/2 - sum_{k<=L} lambda_k)."""
    return cb.distortion


def quantized_wiener_integral(
    cb: ProductCodebook,
    idx: Sequence[int],
    phi: np.ndarray,
    times: np.ndarray,
    t: float,
) -> np.ndarray:
    """
    Integral of a deterministic integrand against a quantizer path, up to time t.

    sqrt(2/T) sum_k (c_k / sqrt(lambda_k)) int_0^t phi(s) cos(s / sqrt(lambda_k)) ds,
    by the trapezoidal rule on the uniform grid `times`.

    Returns:
        One value per Brownian component, shape (d,).
    """
    grid = GridPath(times=times, values=np.zeros_like(times))
    stop = grid.grid_index(t)
    phi = np.asarray(phi, dtype=np.float64)
    if phi.shape != grid.times.shape:
        raise CompatibilityError(f"integrand of shape {phi.shape} on a grid of {times.size}")
    path = elementary_path(cb, idx)
    if path.active == 0:
        return np.zeros(cb.dim)
    integrand = path.derivative(grid.times[: stop + 1]) * phi[: stop + 1, None]
    if stop == 0:
        return np.zeros(cb.dim)
    return cumulative_trapezoid(integrand, grid.times[: stop + 1], axis=0)[-1]


@dataclass(frozen=True)
class CellMean:
    """Monte Carlo conditional mean of a path statistic within one cell."""

    index: MultiIndex
    count: int
    mean: np.ndarray
    stderr: np.ndarray


def empirical_cell_means(
    cb: ProductCodebook,
    paths: Sequence[GridPath],
    statistic: Callable[[GridPath], np.ndarray],
) -> list[CellMean]:
    """
    Group paths by cell and average a statistic in each visited cell.

    Stationarity of the quantizer means the per-cell mean of the K-L
    coordinates equals the cell levels.
    """
    groups: dict[MultiIndex, list[np.ndarray]] = {}
    for path in paths:
        groups.setdefault(voronoi_project(path, cb), []).append(
            np.atleast_1d(np.asarray(statistic(path), dtype=np.float64))
        )
    out: list[CellMean] = []
    for idx in sorted(groups):
        sample = np.stack(groups[idx])
        count = sample.shape[0]
        std = sample.std(axis=0, ddof=1) if count > 1 else np.full(sample.shape[1:], np.inf)
        out.append(
            CellMean(
                index=idx,
                count=count,
                mean=sample.mean(axis=0),
                stderr=std / math.sqrt(count),
            )
        )
    return out


def diag_codebook_paths(cb: GaussianDiagCodebook, T: float) -> list[QuantizerPath]:
    """Paths alpha_n(t) = sum_k z_n^k e_k(t) of a Lloyd codebook of K-L coordinates (d = 1)."""
    return [QuantizerPath(horizon=T, coefficients=point[:, None]) for point in cb.points]
