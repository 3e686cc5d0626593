"""Tests for the rate tables and the pathwise convergence experiment."""

import math

import numpy as np
import pytest

from fquant.qsde import get_spec, pathwise_convergence_experiment, quartiles
from fquant.services.rate_service import OPTIMAL_RATE_CONSTANT, RateService
from fquant.services.runner import MonteCarloRunner


class TestRunner:
    def test_order_preserved(self):
        runner = MonteCarloRunner(workers=4)
        assert runner.map(lambda x: x * x, range(20)) == [x * x for x in range(20)]

    def test_seeded_children_are_reproducible(self):
        def draw(seed):
            return np.random.default_rng(seed).standard_normal()

        a = MonteCarloRunner(workers=1).map_seeded(draw, 5, 8)
        b = MonteCarloRunner(workers=3).map_seeded(draw, 5, 8)
        assert a == b
        assert len(set(a)) == 8

    def test_reduce_in_order(self):
        parts = [np.full(3, 0.1), np.full(3, 0.2), np.full(3, 0.3)]
        np.testing.assert_array_equal(MonteCarloRunner.reduce_sum(parts), (0.1 + 0.2) + 0.3)


def test_quartiles():
    assert quartiles([1.0, 2.0, 3.0, 4.0, 5.0]) == (2.0, 3.0, 4.0)


class TestQuadraticRate:
    def test_constant_band(self):
        rows = RateService().quadratic([10, 100, 1000, 10000])
        assert [r.N for r in rows] == [10, 100, 1000, 10000]
        for row in rows:
            assert 0.40 <= row.constant <= 0.60
            assert row.optimal_constant == pytest.approx(math.sqrt(2) / math.pi)
        errors = [r.error for r in rows]
        assert all(b < a for a, b in zip(errors, errors[1:]))

    def test_horizon_scaling(self):
        one = RateService().quadratic([100], T=1.0)[0]
        two = RateService().quadratic([100], T=2.0)[0]
        assert two.error == pytest.approx(2 * one.error, rel=1e-12)
        assert two.constant == pytest.approx(one.constant, rel=1e-12)

    def test_budget_one(self):
        row = RateService().quadratic([1])[0]
        assert row.error == pytest.approx(math.sqrt(0.5))
        assert math.isnan(row.constant)

    def test_reference_constant(self):
        assert OPTIMAL_RATE_CONSTANT == pytest.approx(0.450158, abs=1e-6)


class TestHolderRate:
    def test_small_run(self):
        rows = RateService(workers=2).holder([2, 50], q=2.5, n=128, paths=20, seed=3, p=2.5)
        assert [r.N for r in rows] == [2, 50]
        for row in rows:
            assert row.level1_q1 <= row.level1_median <= row.level1_q3
            assert row.level1_median >= row.sup_median
            assert row.rho_median >= row.level1_median
            assert row.delta_median is not None and row.delta_median > 0

    def test_bit_identical_across_workers(self):
        a = RateService(workers=1).holder([4, 16], q=2.5, n=64, paths=12, seed=9)
        b = RateService(workers=4).holder([4, 16], q=2.5, n=64, paths=12, seed=9)
        assert a == b
        assert a[0].delta_median is None

    @pytest.mark.slow
    def test_distances_decrease(self):
        rows = RateService().holder([10, 100, 1000], q=2.5, n=4096, paths=200, seed=2011)
        level1 = [r.level1_median for r in rows]
        rho = [r.rho_median for r in rows]
        assert level1[0] > level1[1] > level1[2]
        assert rho[0] > rho[1] > rho[2]


class TestPathwiseConvergence:
    def test_zero_diffusion_is_exact(self):
        rows = pathwise_convergence_experiment(
            get_spec("zero-diffusion"), 2.5, [10, 100], paths=10, seed=1, n=256
        )
        for row in rows:
            assert row.rho_median < 1e-4
            assert row.sup_median < 1e-4

    def test_deterministic(self):
        kwargs = dict(paths=8, seed=42, n=128)
        a = pathwise_convergence_experiment(get_spec("cubic"), 2.5, [4, 20], workers=1, **kwargs)
        b = pathwise_convergence_experiment(get_spec("cubic"), 2.5, [4, 20], workers=3, **kwargs)
        assert a == b

    def test_ito_spec_accepted(self):
        rows = pathwise_convergence_experiment(get_spec("linear"), 2.5, [8], paths=4, seed=0, n=64)
        assert rows[0].rho_q1 <= rows[0].rho_median <= rows[0].rho_q3

    @pytest.mark.slow
    def test_gbm_medians_decrease(self):
        rows = pathwise_convergence_experiment(
            get_spec("gbm"), 2.5, [10, 100, 1000], paths=200, seed=7, n=1024
        )
        rho = [r.rho_median for r in rows]
        sup = [r.sup_median for r in rows]
        assert rho[0] > rho[1] > rho[2]
        assert sup[0] > sup[1] > sup[2]
