"""Quantized SDE ensembles and cubature."""

import logging
import math
from collections.abc import Callable

import numpy as np

from ..codebook.models import ProductCodebook
from ..codebook.product import all_cells
from ..config import settings
from ..errors import BlowUpError, CompatibilityError
from ..kl.models import GridPath, uniform_grid
from ..services.runner import MonteCarloRunner
from .convert import as_stratonovich
from .models import QuantizedSolution, SDESpec
from .solvers import solve_driven_batch

logger = logging.getLogger(__name__)

PathFunctional = Callable[[GridPath], float]


def quantized_sde_ensemble(
    spec: SDESpec,
    cb: ProductCodebook,
    n: int,
    *,
    chunk_size: int | None = None,
    workers: int | None = None,
) -> QuantizedSolution:
    """
    Solve the ODE driven by every elementary quantizer path of cb.

    Itô specs are converted first. Cells are integrated in chunks of
    `chunk_size` on a thread pool; chunk order is preserved.

    Raises:
        BlowUpError: carrying the multi-index of the first failing cell.
    """
    spec = as_stratonovich(spec)
    if spec.noise_dim != cb.dim:
        raise CompatibilityError(
            f"codebook dimension {cb.dim} != noise dimension {spec.noise_dim}"
        )
    guideline = settings.ode_steps_per_frequency * cb.active
    if n < guideline:
        logger.warning(
            "RK4 grid of %d steps under-resolves %d active frequencies (guideline %d)",
            n,
            cb.active,
            guideline,
        )
    indices, coefficients, weights = all_cells(cb)
    chunk = chunk_size or settings.ode_chunk_size
    starts = list(range(0, len(indices), chunk))

    def solve(start: int) -> np.ndarray:
        try:
            return solve_driven_batch(spec, coefficients[start : start + chunk], cb.horizon, n)[1]
        except BlowUpError as err:
            row = err.index[0] if err.index else 0
            raise BlowUpError(err.time, indices[start + row]) from err

    parts = MonteCarloRunner(workers).map(solve, starts)
    values = np.concatenate(parts, axis=0)
    times = uniform_grid(cb.horizon, n)
    logger.info("solved %d quantized ODEs on %d steps", len(indices), n)
    return QuantizedSolution(
        codebook=cb, indices=indices, weights=weights, times=times, values=values
    )


def quantized_expectation(sol: QuantizedSolution, functional: PathFunctional) -> float:
    """Cubature sum_n w_n F(x_n)."""
    return math.fsum(cell.weight * float(functional(cell.path)) for cell in sol)
