"""Tests for quantized SDE solving, conversions and cubature."""

import math

import numpy as np
import pytest

from fquant.codebook import build_product_codebook, elementary_path, iter_indices
from fquant.codebook.models import QuantizerPath
from fquant.errors import BlowUpError, CompatibilityError, QuantDomainError, SpecError
from fquant.kl import GridPath, simulate_brownian, uniform_grid
from fquant.qsde import (
    SPECS,
    Calculus,
    SDESpec,
    get_functional,
    get_spec,
    heun_batch,
    ito_to_stratonovich,
    quantized_expectation,
    quantized_sde_ensemble,
    rk4,
    solve_elementary_ode,
    solve_reference_sde,
    stratonovich_to_ito,
)
from fquant.qsde.registry import GBM_SIGMA, RELAXATION_RATE


def _scalar_ito(sigma: float, analytic: bool) -> SDESpec:
    """dX = sigma X dW in Itô form."""
    return SDESpec(
        name="scalar",
        drift=lambda t, x: np.zeros_like(x),
        diffusion=lambda t, x: sigma * x[..., :, None],
        x0=[1.0],
        noise_dim=1,
        calculus=Calculus.ITO,
        jacobian=(lambda t, x: np.full(np.shape(x) + (1, 1), sigma)) if analytic else None,
    )


def _additive(calculus: Calculus) -> SDESpec:
    return SDESpec(
        name="additive",
        drift=lambda t, x: -x,
        diffusion=lambda t, x: np.full(np.shape(x) + (1,), 0.4),
        x0=[0.2],
        noise_dim=1,
        calculus=calculus,
    )


class TestConversion:
    def test_constant_diffusion_keeps_drift(self):
        converted = ito_to_stratonovich(_additive(Calculus.ITO))
        x = np.array([[0.3], [-1.2]])
        np.testing.assert_array_equal(converted.drift(0.0, x), -x)

    @pytest.mark.parametrize("analytic", [True, False])
    def test_geometric_correction(self, analytic):
        """Itô sigma x dW is Stratonovich with drift -sigma^2 x / 2."""
        converted = ito_to_stratonovich(_scalar_ito(0.3, analytic))
        x = np.array([[0.5], [2.0]])
        np.testing.assert_allclose(converted.drift(0.0, x), -0.5 * 0.09 * x, rtol=1e-7)
        assert converted.calculus is Calculus.STRATONOVICH

    def test_round_trip(self):
        spec = _scalar_ito(0.3, analytic=False)
        back = stratonovich_to_ito(ito_to_stratonovich(spec))
        x = np.linspace(-2, 2, 9)[:, None]
        np.testing.assert_allclose(back.drift(0.0, x), spec.drift(0.0, x), atol=1e-8)

    def test_wrong_calculus(self):
        with pytest.raises(SpecError):
            ito_to_stratonovich(_additive(Calculus.STRATONOVICH))
        with pytest.raises(SpecError):
            stratonovich_to_ito(_additive(Calculus.ITO))

    def test_finite_difference_jacobian(self):
        spec = get_spec("gbm", 2)
        x = np.array([[1.0, 2.0], [0.5, -0.3]])
        fd = SDESpec(
            name="fd", drift=spec.drift, diffusion=spec.diffusion, x0=spec.x0, noise_dim=2
        )
        np.testing.assert_allclose(
            fd.diffusion_jacobian(0.0, x), spec.diffusion_jacobian(0.0, x), atol=1e-6
        )


class TestElementaryODE:
    def test_rk4_exponential(self):
        times = uniform_grid(1.0, 100)
        out = rk4(lambda t, x: -x, np.array([[1.0], [2.0]]), times)
        np.testing.assert_allclose(out[:, -1, 0], [math.exp(-1), 2 * math.exp(-1)], rtol=1e-9)

    def test_zero_diffusion_ignores_driver(self):
        spec = get_spec("zero-diffusion")
        cb = build_product_codebook(16, 1, 1.0)
        exact = np.exp(-RELAXATION_RATE * uniform_grid(1.0, 1000))
        for idx in iter_indices(cb):
            sol = solve_elementary_ode(spec, elementary_path(cb, idx), 1000)
            np.testing.assert_allclose(sol.values[:, 0], exact, atol=1e-10)

    def test_gbm_closed_form(self):
        """x(t) = x0 exp(sigma alpha(t)) for every cell of N = 64."""
        spec = get_spec("gbm")
        cb = build_product_codebook(64, 1, 1.0)
        for idx in iter_indices(cb):
            driver = elementary_path(cb, idx)
            sol = solve_elementary_ode(spec, driver, 1000)
            exact = np.exp(GBM_SIGMA * driver.evaluate(sol.times)[:, 0])
            assert np.max(np.abs(sol.values[:, 0] - exact)) < 1e-5

    def test_zero_driver_keeps_initial_point(self):
        spec = get_spec("gbm", 2)
        driver = QuantizerPath(horizon=1.0, coefficients=np.zeros((0, 2)))
        sol = solve_elementary_ode(spec, driver, 50)
        np.testing.assert_array_equal(sol.values, 1.0)

    def test_blow_up(self):
        spec = SDESpec(
            name="riccati",
            drift=lambda t, x: x**2,
            diffusion=lambda t, x: np.zeros(np.shape(x) + (1,)),
            x0=[1.0],
            noise_dim=1,
        )
        driver = QuantizerPath(horizon=2.0, coefficients=np.zeros((0, 1)))
        with np.errstate(over="ignore", invalid="ignore"):
            with pytest.raises(BlowUpError) as info:
                solve_elementary_ode(spec, driver, 1000)
        assert 0.9 < info.value.time <= 2.0

    def test_grid_and_dimension_checks(self):
        spec = get_spec("gbm")
        with pytest.raises(QuantDomainError):
            solve_elementary_ode(spec, QuantizerPath(1.0, np.zeros((1, 1))), 1)
        with pytest.raises(CompatibilityError):
            solve_elementary_ode(spec, QuantizerPath(1.0, np.zeros((1, 2))), 10)

    def test_ito_spec_rejected(self):
        with pytest.raises(SpecError):
            solve_elementary_ode(get_spec("linear"), QuantizerPath(1.0, np.zeros((1, 1))), 10)


class TestReferenceSDE:
    def test_zero_diffusion_matches_ode(self):
        spec = get_spec("zero-diffusion")
        w = simulate_brownian(1000, 1, 1.0, seed=1)
        sol = solve_reference_sde(spec, w)
        np.testing.assert_allclose(sol.values[:, 0], np.exp(-0.5 * w.times), atol=1e-5)

    def test_gbm_pathwise(self):
        """Heun follows exp(sigma W_T) closely on fine grids."""
        spec = get_spec("gbm")
        n, paths = 4096, 200
        rng = np.random.default_rng(7)
        dw = rng.standard_normal((paths, n, 1)) * math.sqrt(1.0 / n)
        out = heun_batch(spec, dw, uniform_grid(1.0, n))
        exact = np.exp(GBM_SIGMA * dw.sum(axis=1)[:, 0])
        assert np.median(np.abs(out[:, -1, 0] / exact - 1)) < 0.01

    def test_gbm_mean(self, zscore):
        """E[X_T] = exp(sigma^2 T / 2)."""
        spec = get_spec("gbm")
        n, paths = 256, 10_000
        rng = np.random.default_rng(8)
        dw = rng.standard_normal((paths, n, 1)) * math.sqrt(1.0 / n)
        out = heun_batch(spec, dw, uniform_grid(1.0, n))
        assert zscore(out[:, -1, 0], math.exp(0.5 * GBM_SIGMA**2)) < 3

    def test_noise_dimension_checked(self):
        spec = get_spec("gbm", 2)
        with pytest.raises(CompatibilityError):
            heun_batch(spec, np.zeros((1, 10, 1)), uniform_grid(1.0, 10))


class TestEnsemble:
    def test_trivial_codebook(self):
        sol = quantized_sde_ensemble(get_spec("gbm"), build_product_codebook(1, 1, 1.0), 64)
        assert len(sol) == 1
        assert sol.weights.tolist() == [1.0]
        np.testing.assert_array_equal(sol.values, 1.0)

    def test_two_cells_are_mirror_images(self):
        sol = quantized_sde_ensemble(get_spec("identity"), build_product_codebook(2, 1, 1.0), 128)
        np.testing.assert_allclose(sol.values[0], -sol.values[1], atol=1e-14)
        np.testing.assert_allclose(sol.weights, [0.5, 0.5], atol=1e-14)

    def test_weights_sum_to_one(self):
        sol = quantized_sde_ensemble(
            get_spec("cubic"), build_product_codebook(1000, 1, 1.0), 64, chunk_size=100
        )
        assert math.fsum(sol.weights) == pytest.approx(1.0, abs=1e-10)
        assert quantized_expectation(sol, get_functional("one")) == pytest.approx(1.0, abs=1e-10)

    def test_chunking_and_workers_do_not_matter(self):
        cb = build_product_codebook(200, 1, 1.0)
        a = quantized_sde_ensemble(get_spec("cubic"), cb, 128, chunk_size=7, workers=1)
        b = quantized_sde_ensemble(get_spec("cubic"), cb, 128, chunk_size=64, workers=4)
        np.testing.assert_allclose(a.values, b.values, rtol=1e-13, atol=0)
        assert a.indices == b.indices

    def test_ito_and_stratonovich_agree_for_additive_noise(self):
        cb = build_product_codebook(30, 1, 1.0)
        ito = quantized_sde_ensemble(_additive(Calculus.ITO), cb, 256)
        strat = quantized_sde_ensemble(_additive(Calculus.STRATONOVICH), cb, 256)
        np.testing.assert_allclose(ito.values, strat.values, atol=1e-12)

    def test_linear_functional_of_the_driver_is_centered(self):
        sol = quantized_sde_ensemble(get_spec("identity"), build_product_codebook(50, 1, 1.0), 512)
        assert abs(quantized_expectation(sol, get_functional("terminal"))) < 1e-10

    def test_cells_follow_codebook_order(self):
        cb = build_product_codebook(12, 1, 1.0)
        sol = quantized_sde_ensemble(get_spec("gbm"), cb, 256)
        assert sol.indices == list(iter_indices(cb))
        third = sol.cell(3)
        driver = elementary_path(cb, third.index)
        exact = np.exp(GBM_SIGMA * driver.evaluate(third.path.times)[:, 0])
        np.testing.assert_allclose(third.path.values[:, 0], exact, atol=1e-6)

    def test_blow_up_reports_cell(self):
        spec = SDESpec(
            name="explosive",
            drift=lambda t, x: x**2,
            diffusion=lambda t, x: np.ones(np.shape(x) + (1,)),
            x0=[1.0],
            noise_dim=1,
        )
        cb = build_product_codebook(2, 1, 2.0)
        with np.errstate(over="ignore", invalid="ignore"):
            with pytest.raises(BlowUpError) as info:
                quantized_sde_ensemble(spec, cb, 1000)
        assert info.value.index in [(0,), (1,)]

    def test_dimension_mismatch(self):
        with pytest.raises(CompatibilityError):
            quantized_sde_ensemble(get_spec("gbm", 2), build_product_codebook(4, 1, 1.0), 64)


class TestCubature:
    def test_gbm_terminal_mean(self):
        """Errors on E[X_T] shrink with N and drop under 5% at N = 1000."""
        spec = get_spec("gbm")
        exact = math.exp(0.5 * GBM_SIGMA**2)
        errors = []
        for N in [10, 100, 1000]:
            sol = quantized_sde_ensemble(spec, build_product_codebook(N, 1, 1.0), 512)
            errors.append(abs(quantized_expectation(sol, get_functional("terminal")) - exact))
        assert errors[0] >= errors[1] >= errors[2]
        assert errors[2] / exact < 0.05

    def test_average_functional(self):
        """E[(1/T) int X dt] for dX = -X/2 dt is 2 (1 - exp(-1/2))."""
        sol = quantized_sde_ensemble(
            get_spec("zero-diffusion"), build_product_codebook(10, 1, 1.0), 512
        )
        value = quantized_expectation(sol, get_functional("average"))
        assert value == pytest.approx(2 * (1 - math.exp(-0.5)), rel=1e-5)


class TestRegistry:
    def test_unknown_spec(self):
        with pytest.raises(SpecError, match="gbm"):
            get_spec("nope")

    def test_unknown_functional(self):
        with pytest.raises(SpecError, match="terminal"):
            get_functional("nope")

    @pytest.mark.parametrize("name", sorted(SPECS))
    @pytest.mark.parametrize("d", [1, 3])
    def test_fields_broadcast(self, name, d):
        spec = get_spec(name, d)
        x = np.ones((5, d))
        assert spec.drift(0.0, x).shape == (5, d)
        assert spec.diffusion(0.0, x).shape == (5, d, d)
        assert spec.diffusion_jacobian(0.0, x).shape == (5, d, d, d)

    def test_functionals(self):
        times = uniform_grid(2.0, 4)
        path = GridPath(times=times, values=np.array([1.0, 3.0, 2.0, 5.0, 4.0]))
        assert get_functional("one")(path) == 1.0
        assert get_functional("terminal")(path) == 4.0
        assert get_functional("sup")(path) == 5.0
        assert get_functional("average")(path) == pytest.approx(3.125)
