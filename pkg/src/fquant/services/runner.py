"""Seeded, order-preserving thread-pool runner for Monte Carlo work."""

import logging
from collections.abc import Callable, Iterable, Sequence
from concurrent.futures import ThreadPoolExecutor
from typing import TypeVar

import numpy as np

from ..config import settings

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")

SeedLike = int | np.random.SeedSequence


def as_seed_sequence(seed: SeedLike) -> np.random.SeedSequence:
    """Wrap an integer seed; pass SeedSequences through."""
    if isinstance(seed, np.random.SeedSequence):
        return seed
    return np.random.SeedSequence(seed)


class MonteCarloRunner:
    """
    Runs independent tasks on a thread pool and returns results in task order.

    Child seeds are spawned from one root SeedSequence, one per task, so a
    run is bit-identical for every worker count.
    """

    def __init__(self, workers: int | None = None):
        """Initialize runner with a pool width (defaults to settings.workers)."""
        self.workers = workers or settings.workers

    @staticmethod
    def child_seeds(seed: SeedLike, count: int) -> list[np.random.SeedSequence]:
        """Spawn `count` independent child seeds from `seed`."""
        return as_seed_sequence(seed).spawn(count)

    def map(self, fn: Callable[[T], R], items: Iterable[T]) -> list[R]:
        """Apply fn to every item; results keep the order of items."""
        items = list(items)
        if self.workers == 1 or len(items) <= 1:
            return [fn(item) for item in items]
        with ThreadPoolExecutor(max_workers=self.workers) as executor:
            return list(executor.map(fn, items))

    def map_seeded(
        self, fn: Callable[[np.random.SeedSequence], R], seed: SeedLike, count: int
    ) -> list[R]:
        """Run fn once per child seed of `seed`."""
        return self.map(fn, self.child_seeds(seed, count))

    @staticmethod
    def reduce_sum(parts: Sequence[np.ndarray]) -> np.ndarray:
        """Sum partial results in their fixed order."""
        total = np.array(parts[0], dtype=np.float64, copy=True)
        for part in parts[1:]:
            total += part
        return total
