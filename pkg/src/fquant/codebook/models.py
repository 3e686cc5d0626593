"""Data models for product functional quantizers of Brownian motion."""

import json
import math
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import Any

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from ..errors import QuantDomainError
from ..kl.models import GridPath, KLBasis, uniform_grid
from ..scalar_quant.models import ScalarQuantizer


class BitAllocation(BaseModel):
    """
    Integral bit allocation of a product quantizer of one Brownian component.

    Attributes:
        budget: Size bound N.
        horizon: T.
        levels: N_1 >= ... >= N_L >= 2; all further frequencies get 1 level.
        distortion: Exact squared quadratic error in L^2([0, T]).
    """

    model_config = ConfigDict(frozen=True)

    budget: int = Field(ge=1)
    horizon: float = Field(gt=0.0)
    levels: list[int]
    distortion: float = Field(ge=0.0)

    @field_validator("levels")
    @classmethod
    def non_increasing(cls, v: list[int]) -> list[int]:
        if any(m < 2 for m in v):
            raise ValueError("active frequencies need at least two levels")
        if any(b > a for a, b in zip(v, v[1:])):
            raise ValueError("levels must be non-increasing")
        return v

    @model_validator(mode="after")
    def within_budget(self) -> "BitAllocation":
        if self.size > self.budget:
            raise ValueError(f"allocation of size {self.size} exceeds budget {self.budget}")
        return self

    @property
    def active(self) -> int:
        """Number L of frequencies with more than one level."""
        return len(self.levels)

    @property
    def size(self) -> int:
        return math.prod(self.levels)


@dataclass(frozen=True)
class QuantizerPath:
    """
    Elementary quantizer path alpha(t) = sum_k c_k e_k(t) with finitely many terms.

    Attributes:
        horizon: T.
        coefficients: c_k = beta_k sqrt(lambda_k), shape (L, d); L may be 0.
    """

    horizon: float
    coefficients: np.ndarray

    def __post_init__(self):
        coef = np.asarray(self.coefficients, dtype=np.float64)
        if coef.ndim == 1:
            coef = coef[:, None]
        if coef.ndim != 2:
            raise QuantDomainError(f"coefficients must have shape (L, d), got {coef.shape}")
        object.__setattr__(self, "coefficients", coef)

    @property
    def dim(self) -> int:
        return self.coefficients.shape[1]

    @property
    def active(self) -> int:
        return self.coefficients.shape[0]

    @cached_property
    def _frequencies(self) -> np.ndarray:
        if self.active == 0:
            return np.zeros(0)
        return 1.0 / np.sqrt(KLBasis(self.horizon, self.active).eigenvalues)

    def evaluate(self, t) -> np.ndarray:
        """alpha(t), shape (len(t), d) (or (d,) for scalar t)."""
        times = np.asarray(t, dtype=np.float64)
        arg = np.outer(np.atleast_1d(times), self._frequencies)
        out = math.sqrt(2.0 / self.horizon) * np.sin(arg) @ self.coefficients
        return out[0] if times.ndim == 0 else out

    def derivative(self, t) -> np.ndarray:
        """alpha'(t) = sum_k c_k / sqrt(lambda_k) sqrt(2/T) cos(t / sqrt(lambda_k))."""
        times = np.asarray(t, dtype=np.float64)
        arg = np.outer(np.atleast_1d(times), self._frequencies)
        scaled = self.coefficients * self._frequencies[:, None]
        out = math.sqrt(2.0 / self.horizon) * np.cos(arg) @ scaled
        return out[0] if times.ndim == 0 else out

    def sample(self, n: int) -> GridPath:
        """Values on the uniform grid with n steps."""
        times = uniform_grid(self.horizon, n)
        return GridPath(times=times, values=self.evaluate(times))


@dataclass(frozen=True)
class ProductCodebook:
    """
    Product quantizer of d-dimensional Brownian motion on [0, T].

    Every component is quantized independently with the same allocation,
    computed at the per-component budget floor(N^(1/d)). Cells are addressed
    by flat multi-indices of length d * L, row-major over (component, frequency).

    Attributes:
        dim: d.
        horizon: T.
        budget: Total budget N.
        allocation: Per-component allocation.
        quantizers: Optimal scalar quantizer of each active frequency.
    """

    dim: int
    horizon: float
    budget: int
    allocation: BitAllocation
    quantizers: tuple[ScalarQuantizer, ...]

    def __post_init__(self):
        if len(self.quantizers) != self.allocation.active:
            raise QuantDomainError("one scalar quantizer per active frequency is required")
        if any(q.size != m for q, m in zip(self.quantizers, self.allocation.levels)):
            raise QuantDomainError("scalar quantizer sizes do not match the allocation")

    @property
    def active(self) -> int:
        return self.allocation.active

    @property
    def component_size(self) -> int:
        return self.allocation.size

    @property
    def size(self) -> int:
        return self.component_size**self.dim

    @property
    def index_length(self) -> int:
        return self.dim * self.active

    @cached_property
    def eigenvalues(self) -> np.ndarray:
        if self.active == 0:
            return np.zeros(0)
        return KLBasis(self.horizon, self.active).eigenvalues

    @property
    def distortion(self) -> float:
        """Exact squared L^2(P; L^2_T) quantization error."""
        return self.dim * self.allocation.distortion

    def to_dict(self) -> dict[str, Any]:
        return {
            "T": self.horizon,
            "d": self.dim,
            "budget": self.budget,
            "allocation": list(self.allocation.levels),
            "scalar_quantizers": [q.to_dict() for q in self.quantizers],
            "distortion": self.distortion,
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "ProductCodebook":
        d = int(data["d"])
        quantizers = tuple(ScalarQuantizer.from_dict(q) for q in data["scalar_quantizers"])
        allocation = BitAllocation(
            budget=integer_root(int(data["budget"]), d),
            horizon=data["T"],
            levels=data["allocation"],
            distortion=data["distortion"] / d,
        )
        return cls(
            dim=d,
            horizon=float(data["T"]),
            budget=int(data["budget"]),
            allocation=allocation,
            quantizers=quantizers,
        )

    def save(self, path: Path | str) -> None:
        Path(path).write_text(json.dumps(self.to_dict(), indent=2), encoding="utf-8")

    @classmethod
    def load(cls, path: Path | str) -> "ProductCodebook":
        return cls.from_dict(json.loads(Path(path).read_text(encoding="utf-8")))


def integer_root(n: int, d: int) -> int:
    """Largest r >= 1 with r^d <= n."""
    if n < 1 or d < 1:
        raise QuantDomainError(f"need n >= 1 and d >= 1, got n={n}, d={d}")
    r = int(round(n ** (1.0 / d)))
    while r**d > n:
        r -= 1
    while (r + 1) ** d <= n:
        r += 1
    return max(r, 1)
