"""Shared fixtures for the fquant test suite."""

import numpy as np
import pytest

from fquant.codebook.product import build_product_codebook
from fquant.config import settings


@pytest.fixture
def rng():
    return np.random.default_rng(42)


@pytest.fixture
def single_worker(monkeypatch):
    """Force sequential Monte Carlo runs."""
    monkeypatch.setattr(settings, "workers", 1)


@pytest.fixture(scope="session")
def codebook_n2():
    return build_product_codebook(2, 1, 1.0)


@pytest.fixture(scope="session")
def codebook_n16():
    return build_product_codebook(16, 1, 1.0)


@pytest.fixture(scope="session")
def codebook_2d():
    """Per-component budget 10 in two dimensions."""
    return build_product_codebook(100, 2, 1.0)


def _zscore(sample, target) -> float:
    sample = np.asarray(sample, dtype=np.float64)
    se = sample.std(ddof=1) / np.sqrt(sample.size)
    return float(abs(sample.mean() - target) / se)


@pytest.fixture
def zscore():
    """|mean - target| in units of the standard error of the mean."""
    return _zscore
