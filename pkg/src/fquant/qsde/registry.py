"""Built-in SDE specs and path functionals, registered by name."""

from collections.abc import Callable

import numpy as np
from scipy.integrate import trapezoid

from ..errors import SpecError
from ..kl.models import GridPath
from .ensemble import PathFunctional
from .models import Calculus, SDESpec

GBM_SIGMA = 0.3
LINEAR_MU = 0.05
RELAXATION_RATE = 0.5
CUBIC_SIGMA = 0.3


def _diagonal(scale: np.ndarray) -> np.ndarray:
    """(..., d) -> (..., d, d) diagonal matrices."""
    return scale[..., :, None] * np.eye(scale.shape[-1])


def _linear_jacobian(sigma: float, d: int) -> Callable:
    """d(sigma x_i delta_ij)/dx_k = sigma delta_ij delta_ik."""
    tensor = np.zeros((d, d, d))
    for i in range(d):
        tensor[i, i, i] = sigma

    def jacobian(t, x):
        return np.broadcast_to(tensor, np.shape(x)[:-1] + tensor.shape)

    return jacobian


def gbm(d: int = 1) -> SDESpec:
    """dX^i = sigma X^i o dW^i, X_0 = 1, so that E[X^i_T] = exp(sigma^2 T / 2)."""
    return SDESpec(
        name="gbm",
        drift=lambda t, x: np.zeros_like(x),
        diffusion=lambda t, x: _diagonal(GBM_SIGMA * x),
        x0=np.ones(d),
        noise_dim=d,
        calculus=Calculus.STRATONOVICH,
        jacobian=_linear_jacobian(GBM_SIGMA, d),
    )


def linear(d: int = 1) -> SDESpec:
    """Itô Black-Scholes dynamics dX^i = mu X^i dt + sigma X^i dW^i, X_0 = 1."""
    return SDESpec(
        name="linear",
        drift=lambda t, x: LINEAR_MU * x,
        diffusion=lambda t, x: _diagonal(GBM_SIGMA * x),
        x0=np.ones(d),
        noise_dim=d,
        calculus=Calculus.ITO,
        jacobian=_linear_jacobian(GBM_SIGMA, d),
    )


def zero_diffusion(d: int = 1) -> SDESpec:
    """dX = -X/2 dt with sigma = 0."""
    return SDESpec(
        name="zero-diffusion",
        drift=lambda t, x: -RELAXATION_RATE * x,
        diffusion=lambda t, x: np.zeros(np.shape(x) + (d,)),
        x0=np.ones(d),
        noise_dim=d,
    )


def cubic(d: int = 1) -> SDESpec:
    """Double-well drift x (1 - x^2) / (1 + x^2) with a bounded smooth diffusion."""

    def drift(t, x):
        return x * (1.0 - x**2) / (1.0 + x**2)

    def diffusion(t, x):
        return _diagonal(CUBIC_SIGMA * (1.0 + 0.5 * np.tanh(x)))

    return SDESpec(name="cubic", drift=drift, diffusion=diffusion, x0=np.full(d, 0.5), noise_dim=d)


def identity(d: int = 1) -> SDESpec:
    """X = W: b = 0, sigma = I, X_0 = 0."""
    return SDESpec(
        name="identity",
        drift=lambda t, x: np.zeros_like(x),
        diffusion=lambda t, x: np.broadcast_to(np.eye(d), np.shape(x)[:-1] + (d, d)),
        x0=np.zeros(d),
        noise_dim=d,
        jacobian=lambda t, x: np.zeros(np.shape(x) + (d, d)),
    )


SPECS: dict[str, Callable[[int], SDESpec]] = {
    "gbm": gbm,
    "linear": linear,
    "zero-diffusion": zero_diffusion,
    "cubic": cubic,
    "identity": identity,
}


def get_spec(name: str, d: int = 1) -> SDESpec:
    try:
        factory = SPECS[name]
    except KeyError:
        raise SpecError(f"unknown spec {name!r}; available: {', '.join(SPECS)}") from None
    return factory(d)


# Functionals act on the first state component.


def one(path: GridPath) -> float:
    return 1.0


def terminal(path: GridPath) -> float:
    return float(path.values[-1, 0])


def running_average(path: GridPath) -> float:
    """(1/T) int_0^T x_t dt (Asian-style payoff)."""
    return float(trapezoid(path.values[:, 0], path.times)) / path.horizon


def running_max(path: GridPath) -> float:
    return float(path.values[:, 0].max())


FUNCTIONALS: dict[str, PathFunctional] = {
    "one": one,
    "terminal": terminal,
    "average": running_average,
    "sup": running_max,
}


def get_functional(name: str) -> PathFunctional:
    try:
        return FUNCTIONALS[name]
    except KeyError:
        raise SpecError(
            f"unknown functional {name!r}; available: {', '.join(FUNCTIONALS)}"
        ) from None
