"""Optimal integral bit allocation for the K-L coordinates of Brownian motion."""

import logging
import math

from ..errors import QuantDomainError
from ..kl.models import KLBasis
from ..scalar_quant.allocation import allocate_levels, allocation_distortion
from .models import BitAllocation

logger = logging.getLogger(__name__)


def optimal_bit_allocation(N: int, T: float) -> BitAllocation:
    """
    Sizes N_1 >= ... >= N_L minimizing the exact product quantization error.

    The error is sum_{k<=L} lambda_k dist(N_k) + (T^2/2 - sum_{k<=L} lambda_k);
    at most floor(log2 N) frequencies can be active.
    """
    if N < 1:
        raise QuantDomainError(f"budget must be >= 1, got {N}")
    if T <= 0:
        raise QuantDomainError(f"horizon must be > 0, got {T}")
    total = 0.5 * T * T
    if N == 1:
        return BitAllocation(budget=1, horizon=T, levels=[], distortion=total)
    eigenvalues = KLBasis(T, int(math.floor(math.log2(N)))).eigenvalues
    levels = allocate_levels(eigenvalues.tolist(), N)
    distortion = allocation_distortion(eigenvalues[: len(levels)].tolist(), levels, total)
    logger.debug("allocation N=%d T=%g levels=%s distortion=%.12g", N, T, levels, distortion)
    return BitAllocation(budget=N, horizon=T, levels=levels, distortion=distortion)
