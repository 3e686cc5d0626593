"""Orchestration services for Monte Carlo experiments."""

from .runner import MonteCarloRunner, SeedLike, as_seed_sequence

__all__ = ["MonteCarloRunner", "SeedLike", "as_seed_sequence"]
