"""SDE definitions, quantized solutions and experiment rows."""

from collections.abc import Callable, Iterator
from dataclasses import dataclass
from enum import Enum

import numpy as np
from pydantic import BaseModel, ConfigDict

from ..codebook.models import ProductCodebook
from ..codebook.product import MultiIndex
from ..config import settings
from ..kl.models import GridPath

# b(t, x) -> (..., m) and sigma(t, x) -> (..., m, d) for x of shape (..., m)
VectorField = Callable[[float, np.ndarray], np.ndarray]


class Calculus(str, Enum):
    """Interpretation of the stochastic integral."""

    ITO = "ito"
    STRATONOVICH = "stratonovich"


@dataclass(frozen=True)
class SDESpec:
    """
    dX = b(t, X) dt + sigma(t, X) dW with X in R^m and W in R^d.

    Both fields must broadcast over leading batch axes. The optional
    jacobian returns d sigma_ij / d x_k with shape (..., m, d, m); without it
    central finite differences with step s (1 + |x|) are used.

    Attributes:
        name: Registry name.
        drift: b.
        diffusion: sigma.
        x0: Initial point, shape (m,).
        noise_dim: d.
        calculus: Itô or Stratonovich.
        jacobian: Analytic derivative of sigma, if known.
    """

    name: str
    drift: VectorField
    diffusion: VectorField
    x0: np.ndarray
    noise_dim: int
    calculus: Calculus = Calculus.STRATONOVICH
    jacobian: VectorField | None = None

    def __post_init__(self):
        object.__setattr__(self, "x0", np.atleast_1d(np.asarray(self.x0, dtype=np.float64)))

    @property
    def dim(self) -> int:
        return self.x0.shape[0]

    def diffusion_jacobian(self, t: float, x: np.ndarray) -> np.ndarray:
        """d sigma_ij / d x_k, shape (..., m, d, m)."""
        if self.jacobian is not None:
            return self.jacobian(t, x)
        x = np.asarray(x, dtype=np.float64)
        step = settings.fd_jacobian_scale * (1.0 + np.linalg.norm(x, axis=-1))
        columns = []
        for k in range(self.dim):
            shift = np.zeros_like(x)
            shift[..., k] = step
            upper = self.diffusion(t, x + shift)
            lower = self.diffusion(t, x - shift)
            columns.append((upper - lower) / (2.0 * step[..., None, None]))
        return np.stack(columns, axis=-1)


@dataclass(frozen=True)
class CellSolution:
    """ODE solution driven by one elementary quantizer path."""

    index: MultiIndex
    weight: float
    path: GridPath


@dataclass(frozen=True)
class QuantizedSolution:
    """
    Solutions of the quantized ODEs over every codebook cell.

    Attributes:
        codebook: Driving product codebook.
        indices: Multi-index of each cell.
        weights: Cell probabilities, shape (size,).
        times: Uniform grid, shape (n+1,).
        values: Solutions, shape (size, n+1, m).
    """

    codebook: ProductCodebook
    indices: list[MultiIndex]
    weights: np.ndarray
    times: np.ndarray
    values: np.ndarray

    def __len__(self) -> int:
        return len(self.indices)

    def __iter__(self) -> Iterator[CellSolution]:
        for i in range(len(self.indices)):
            yield self.cell(i)

    def cell(self, i: int) -> CellSolution:
        return CellSolution(
            index=self.indices[i],
            weight=float(self.weights[i]),
            path=GridPath(times=self.times, values=self.values[i]),
        )


class ConvergenceRow(BaseModel):
    """Per-N summary of a pathwise convergence experiment."""

    model_config = ConfigDict(frozen=True)

    N: int
    size: int
    rho_median: float
    rho_q1: float
    rho_q3: float
    sup_median: float
