"""Data models for scalar and diagonal-Gaussian quantizers."""

import json
import math
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import Any

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

SYMMETRY_TOL = 1e-10
WEIGHT_SUM_TOL = 1e-12


class ScalarQuantizer(BaseModel):
    """Stationary quadratic quantizer of the standard normal distribution.

    Attributes:
        levels: Strictly increasing, symmetric levels beta_1 < ... < beta_N.
        weights: Cell probabilities Phi(m_i) - Phi(m_{i-1}) on midpoint cells.
        distortion: E min_i (Z - beta_i)^2.
        residual: Max centroid-condition residual reached by the solver.
    """

    model_config = ConfigDict(frozen=True)

    levels: list[float]
    weights: list[float]
    distortion: float = Field(ge=0.0)
    residual: float = Field(default=0.0, ge=0.0)

    @field_validator("levels")
    @classmethod
    def strictly_increasing(cls, v: list[float]) -> list[float]:
        if not v:
            raise ValueError("a quantizer needs at least one level")
        if any(b <= a for a, b in zip(v, v[1:])):
            raise ValueError("levels must be strictly increasing")
        return v

    @model_validator(mode="after")
    def matching_sizes(self) -> "ScalarQuantizer":
        if len(self.weights) != len(self.levels):
            raise ValueError("levels and weights differ in length")
        return self

    @model_validator(mode="after")
    def normal_invariants(self) -> "ScalarQuantizer":
        """Levels symmetric about 0 and weights a probability vector."""
        asym = max(abs(a + b) for a, b in zip(self.levels, reversed(self.levels)))
        if asym > SYMMETRY_TOL:
            raise ValueError(f"levels are not symmetric about 0 (defect {asym:.3e})")
        if any(w < 0.0 for w in self.weights):
            raise ValueError("weights must be non-negative")
        total = math.fsum(self.weights)
        if abs(total - 1.0) > WEIGHT_SUM_TOL:
            raise ValueError(f"weights sum to {total!r}, not 1")
        return self

    @property
    def size(self) -> int:
        return len(self.levels)

    @cached_property
    def level_array(self) -> np.ndarray:
        return np.asarray(self.levels, dtype=np.float64)

    @cached_property
    def weight_array(self) -> np.ndarray:
        return np.asarray(self.weights, dtype=np.float64)

    @cached_property
    def midpoints(self) -> np.ndarray:
        """Inner cell boundaries m_1 .. m_{N-1}."""
        lv = self.level_array
        return 0.5 * (lv[:-1] + lv[1:])

    def to_dict(self) -> dict[str, Any]:
        """JSON-ready representation."""
        return {
            "size": self.size,
            "levels": list(self.levels),
            "weights": list(self.weights),
            "distortion": self.distortion,
            "residual": self.residual,
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "ScalarQuantizer":
        if "size" in data and data["size"] != len(data["levels"]):
            raise ValueError(f"size {data['size']} does not match {len(data['levels'])} levels")
        return cls(
            levels=data["levels"],
            weights=data["weights"],
            distortion=data["distortion"],
            residual=data.get("residual", 0.0),
        )

    def save(self, path: Path | str) -> None:
        Path(path).write_text(json.dumps(self.to_dict(), indent=2), encoding="utf-8")

    @classmethod
    def load(cls, path: Path | str) -> "ScalarQuantizer":
        return cls.from_dict(json.loads(Path(path).read_text(encoding="utf-8")))


@dataclass(frozen=True)
class GaussianDiagCodebook:
    """
    Best-effort quantizer of N(0, Diag(eigenvalues)) in R^L.

    Attributes:
        eigenvalues: Variances lambda_1..lambda_L (units of T^2).
        points: Codebook, shape (N, L).
        weights: Monte Carlo cell probabilities, shape (N,).
        distortion: Monte Carlo estimate of E min_n |Z - points_n|^2.
        stderr: Standard error of the distortion estimate.
        initial_distortion: Estimate for the product initializer on the same samples.
    """

    eigenvalues: np.ndarray
    points: np.ndarray
    weights: np.ndarray
    distortion: float
    stderr: float
    initial_distortion: float

    @property
    def dim(self) -> int:
        return int(self.eigenvalues.shape[0])

    @property
    def size(self) -> int:
        return int(self.points.shape[0])

    def to_dict(self) -> dict[str, Any]:
        return {
            "eigenvalues": self.eigenvalues.tolist(),
            "points": self.points.tolist(),
            "weights": self.weights.tolist(),
            "distortion": self.distortion,
            "stderr": self.stderr,
        }
