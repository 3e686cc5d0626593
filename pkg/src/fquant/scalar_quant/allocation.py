"""
Integral bit allocation for product quantizers of diagonal Gaussians.

Given decreasing variances lambda_1 >= lambda_2 >= ... and a budget N, find
sizes N_1, N_2, ... with prod N_k <= N minimizing

    sum_k lambda_k * dist(N_k),

dist being the exact distortion of the optimal N_k-level normal quantizer.
The search runs in three stages:

1. continuous reverse water-filling on the bound dist(M) >= 1/M^2 (the
   Gaussian distortion-rate function), rounded down to integers;
2. local search over +-1 moves and pairwise transfers;
3. branch-and-bound over non-increasing size sequences, pruned with the same
   water-filling bound, which certifies the global minimum.

Larger sizes always go to larger variances in an optimal allocation, so
stage 3 only enumerates non-increasing sequences.
"""

import logging
import math
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from ..errors import QuantDomainError
from .solver import scalar_distortion

logger = logging.getLogger(__name__)


def allocation_gain(variances: Sequence[float], sizes: Sequence[int]) -> float:
    """sum_k lambda_k (dist(N_k) - 1): the distortion change against the 1-point quantizer."""
    return math.fsum(
        lam * (scalar_distortion(m) - 1.0) for lam, m in zip(variances, sizes) if m > 1
    )


def allocation_distortion(
    variances: Sequence[float], sizes: Sequence[int], total_variance: float
) -> float:
    """Squared quadratic error of the product quantizer with the given sizes."""
    return total_variance + allocation_gain(variances, sizes)


def relaxed_gain(log_variances: np.ndarray, variances: np.ndarray, budget: float) -> float:
    """
    Lower bound of sum_k lambda_k (dist(x_k) - 1) over reals x_k >= 1, prod x_k <= budget.

    Uses dist(x) >= x^-2; the continuous optimum activates the m largest
    variances at the common level theta = (prod lambda / budget^2)^(1/m).
    """
    if budget < 2.0 or variances.size == 0:
        return 0.0
    best = 0.0
    log_budget = math.log(budget)
    cum_log = 0.0
    cum_var = 0.0
    for m in range(1, variances.size + 1):
        cum_log += log_variances[m - 1]
        cum_var += variances[m - 1]
        log_theta = (cum_log - 2.0 * log_budget) / m
        if log_theta > log_variances[m - 1]:
            break
        value = m * math.exp(log_theta) - cum_var
        best = min(best, value)
    return best


@dataclass
class _Search:
    variances: np.ndarray
    log_variances: np.ndarray
    budget: int
    best_gain: float
    best_sizes: list[int]
    nodes: int = 0

    def bound(self, start: int, budget: int) -> float:
        return relaxed_gain(self.log_variances[start:], self.variances[start:], budget)

    def run(self, j: int, cap: int, budget: int, partial: float, sizes: list[int]) -> None:
        self.nodes += 1
        if partial < self.best_gain:
            self.best_gain = partial
            self.best_sizes = list(sizes)
        if j >= self.variances.size or budget < 2:
            return
        lam = self.variances[j]
        for m in range(min(cap, budget), 1, -1):
            rest = budget // m
            optimistic = partial + lam * (1.0 / (m * m) - 1.0) + self.bound(j + 1, rest)
            if optimistic >= self.best_gain:
                continue
            value = partial + lam * (scalar_distortion(m) - 1.0)
            if value + self.bound(j + 1, rest) >= self.best_gain:
                continue
            sizes.append(m)
            self.run(j + 1, m, rest, value, sizes)
            sizes.pop()


def _product(sizes: Sequence[int]) -> int:
    return math.prod(sizes) if sizes else 1


def _round_relaxation(variances: np.ndarray, budget: int) -> list[int]:
    """Integer start from the continuous water-filling solution."""
    log_var = np.log(variances)
    log_budget = math.log(budget)
    active = 0
    cum = 0.0
    for m in range(1, variances.size + 1):
        cum += log_var[m - 1]
        if (cum - 2.0 * log_budget) / m > log_var[m - 1]:
            break
        active = m
    if active == 0:
        return []
    log_theta = (float(np.sum(log_var[:active])) - 2.0 * log_budget) / active
    sizes = [max(1, int(math.floor(math.exp(0.5 * (lv - log_theta))))) for lv in log_var[:active]]
    while _product(sizes) > budget:
        k = int(np.argmax(sizes))
        sizes[k] -= 1
    return sizes


def _local_search(variances: np.ndarray, budget: int, sizes: list[int]) -> list[int]:
    """Improve by single +-1 moves and pairwise transfers until no move helps."""
    sizes = sizes + [1] * (variances.size - len(sizes))
    current = allocation_gain(variances, sizes)
    improved = True
    while improved:
        improved = False
        candidates: list[list[int]] = []
        for k in range(len(sizes)):
            for delta in (1, -1):
                trial = list(sizes)
                trial[k] += delta
                candidates.append(trial)
            for l in range(len(sizes)):
                if l != k and sizes[l] > 1:
                    trial = list(sizes)
                    trial[k] += 1
                    trial[l] -= 1
                    candidates.append(trial)
        for trial in candidates:
            if min(trial) < 1 or _product(trial) > budget:
                continue
            value = allocation_gain(variances, trial)
            if value < current:
                sizes, current, improved = trial, value, True
                break
    return sizes


def is_locally_optimal(variances: Sequence[float], sizes: Sequence[int], budget: int) -> bool:
    """No single-coordinate move N_k -> N_k +- 1 within budget improves the distortion."""
    full = list(sizes) + [1] * (len(variances) - len(sizes))
    current = allocation_gain(variances, full)
    for k in range(len(full)):
        for delta in (1, -1):
            trial = list(full)
            trial[k] += delta
            if trial[k] < 1 or _product(trial) > budget:
                continue
            if allocation_gain(variances, trial) < current:
                return False
    return True


def allocate_levels(variances: Sequence[float], budget: int) -> list[int]:
    """
    Optimal integral allocation of quantizer sizes over decreasing variances.

    Args:
        variances: lambda_1 >= lambda_2 >= ... > 0. Only the first
            floor(log2(budget)) can ever receive two levels or more.
        budget: N >= 1, bound on the product of the sizes.

    Returns:
        Non-increasing sizes N_1 >= ... >= N_L >= 2 (trailing ones dropped).
    """
    if budget < 1:
        raise QuantDomainError(f"budget must be >= 1, got {budget}")
    lam = np.asarray(variances, dtype=np.float64)
    if np.any(lam <= 0):
        raise QuantDomainError("variances must be positive")
    if np.any(np.diff(lam) > 0):
        raise QuantDomainError("variances must be non-increasing")
    max_active = int(math.floor(math.log2(budget))) if budget > 1 else 0
    lam = lam[:max_active]
    if lam.size == 0:
        return []

    start = _local_search(lam, budget, _round_relaxation(lam, budget))
    start = sorted(start, reverse=True)
    search = _Search(
        variances=lam,
        log_variances=np.log(lam),
        budget=budget,
        best_gain=allocation_gain(lam, start),
        best_sizes=[m for m in start if m > 1],
    )
    search.run(0, budget, budget, 0.0, [])
    sizes = [m for m in search.best_sizes if m > 1]
    logger.debug(
        "allocation budget=%d sizes=%s nodes=%d local_start=%s",
        budget,
        sizes,
        search.nodes,
        [m for m in start if m > 1],
    )
    return sizes
