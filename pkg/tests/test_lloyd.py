"""Tests for the randomized Lloyd quantizer of diagonal Gaussians."""

import numpy as np
import pytest

from fquant.codebook.product import diag_codebook_paths
from fquant.errors import QuantDomainError
from fquant.kl.models import KLBasis
from fquant.scalar_quant import lloyd_gaussian_diag, product_codebook_points, scalar_distortion

EIGENVALUES = KLBasis(1.0, 3).eigenvalues

SMALL = dict(iters=3, batch_size=4000, chunks=4)


class TestProductInitializer:
    def test_size_and_grid(self):
        points = product_codebook_points(EIGENVALUES, 8)
        assert points.shape[1] == 3
        assert points.shape[0] <= 8
        # inactive coordinates sit at 0
        assert np.all(points[:, 2] == 0.0)

    def test_unsorted_eigenvalues(self):
        """Largest variances get the levels whatever their position."""
        points = product_codebook_points(EIGENVALUES[::-1].copy(), 4)
        assert np.all(points[:, 0] == 0.0)
        assert np.unique(points[:, 2]).size > 1


class TestLloyd:
    def test_never_worse_than_initializer(self):
        cb = lloyd_gaussian_diag(EIGENVALUES, 10, seed=7, **SMALL)
        assert cb.distortion <= cb.initial_distortion
        assert cb.points.shape == (10, 3)
        assert cb.weights.sum() == pytest.approx(1.0, abs=1e-12)
        assert cb.stderr > 0

    def test_deterministic_given_seed(self):
        a = lloyd_gaussian_diag(EIGENVALUES, 6, seed=3, **SMALL)
        b = lloyd_gaussian_diag(EIGENVALUES, 6, seed=3, **SMALL)
        np.testing.assert_array_equal(a.points, b.points)
        assert a.distortion == b.distortion

    def test_independent_of_worker_count(self):
        a = lloyd_gaussian_diag(EIGENVALUES, 6, seed=3, workers=1, **SMALL)
        b = lloyd_gaussian_diag(EIGENVALUES, 6, seed=3, workers=4, **SMALL)
        np.testing.assert_array_equal(a.points, b.points)
        np.testing.assert_array_equal(a.weights, b.weights)

    def test_single_point(self):
        cb = lloyd_gaussian_diag(EIGENVALUES, 1, seed=0)
        np.testing.assert_array_equal(cb.points, np.zeros((1, 3)))
        assert cb.distortion == pytest.approx(EIGENVALUES.sum())

    def test_size_not_a_product(self):
        """The codebook has exactly n points for any n."""
        cb = lloyd_gaussian_diag(EIGENVALUES, 7, seed=11, **SMALL)
        assert cb.size == 7

    def test_distortion_estimate_close_to_trace_minus_gain(self):
        """With two points on the first axis the distortion is about trace - 2 lambda_1 / pi."""
        lam = np.array([1.0, 0.01])
        cb = lloyd_gaussian_diag(lam, 2, seed=5, iters=5, batch_size=20000, chunks=4)
        expected = lam.sum() - 2.0 / np.pi
        assert abs(cb.distortion - expected) < 5 * cb.stderr + 1e-3

    def test_two_axes_four_points(self):
        """lambda = (1, 0.25), N = 4: at least as good as both product layouts."""
        lam = np.array([1.0, 0.25])
        cb = lloyd_gaussian_diag(lam, 4, seed=13, iters=10, batch_size=20000, chunks=4)
        four_by_one = scalar_distortion(4) + 0.25
        two_by_two = 1.25 * scalar_distortion(2)
        assert abs(cb.initial_distortion - four_by_one) < 4 * cb.stderr
        assert cb.distortion <= cb.initial_distortion
        assert cb.distortion <= two_by_two + 2 * cb.stderr
        assert cb.distortion <= four_by_one + 4 * cb.stderr

    def test_rejects_bad_eigenvalues(self):
        with pytest.raises(QuantDomainError):
            lloyd_gaussian_diag([1.0, -0.5], 4, seed=0)

    def test_paths_from_points(self):
        cb = lloyd_gaussian_diag(EIGENVALUES, 4, seed=2, **SMALL)
        paths = diag_codebook_paths(cb, 1.0)
        assert len(paths) == 4
        np.testing.assert_allclose(paths[0].coefficients[:, 0], cb.points[0])
