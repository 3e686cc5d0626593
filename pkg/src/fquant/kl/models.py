"""Data models for the Karhunen-Loève system and grid paths."""

from dataclasses import dataclass
from functools import cached_property
from pathlib import Path

import numpy as np

from ..config import settings
from ..errors import GridError, QuantDomainError

_UNIFORM_RTOL = 1e-9


def uniform_grid(horizon: float, n: int) -> np.ndarray:
    """Times t_i = i T / n, i = 0..n."""
    if horizon <= 0:
        raise QuantDomainError(f"horizon must be > 0, got {horizon}")
    if n < 1:
        raise QuantDomainError(f"grid size must be >= 1, got {n}")
    return horizon * np.arange(n + 1, dtype=np.float64) / n


@dataclass(frozen=True)
class KLBasis:
    """
    Truncated Karhunen-Loève eigensystem of Brownian motion on [0, T].

    Attributes:
        horizon: T > 0.
        truncation: Number K >= 1 of retained eigenpairs.
    """

    horizon: float
    truncation: int

    def __post_init__(self):
        if self.horizon <= 0:
            raise QuantDomainError(f"horizon must be > 0, got {self.horizon}")
        if self.truncation < 1:
            raise QuantDomainError(f"truncation must be >= 1, got {self.truncation}")

    @cached_property
    def eigenvalues(self) -> np.ndarray:
        """lambda_k = (T / (pi (k - 1/2)))^2, k = 1..K."""
        k = np.arange(1, self.truncation + 1, dtype=np.float64)
        return (self.horizon / (np.pi * (k - 0.5))) ** 2

    @property
    def trace(self) -> float:
        """Partial sum of the eigenvalues (tends to T^2 / 2)."""
        return float(self.eigenvalues.sum())

    def functions(self, times: np.ndarray) -> np.ndarray:
        """e_k(t) = sqrt(2/T) sin(t / sqrt(lambda_k)), shape (K, len(times))."""
        freq = 1.0 / np.sqrt(self.eigenvalues)
        return np.sqrt(2.0 / self.horizon) * np.sin(np.outer(freq, times))


@dataclass(frozen=True)
class GridPath:
    """
    A d-dimensional path sampled on a uniform grid of [0, T].

    Attributes:
        times: t_i = i T / n, shape (n+1,).
        values: Path values, shape (n+1, d).
    """

    times: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        times = np.asarray(self.times, dtype=np.float64)
        values = np.asarray(self.values, dtype=np.float64)
        if values.ndim == 1:
            values = values[:, None]
        if times.ndim != 1 or times.size < 2:
            raise GridError("a grid needs at least two times")
        if values.shape[0] != times.size:
            raise GridError(f"{values.shape[0]} values for {times.size} grid times")
        if times[0] != 0.0:
            raise GridError(f"grid must start at 0, got {times[0]}")
        steps = np.diff(times)
        h = times[-1] / (times.size - 1)
        if not np.allclose(steps, h, rtol=_UNIFORM_RTOL, atol=0.0):
            raise GridError("grid times must be uniformly spaced")
        object.__setattr__(self, "times", times)
        object.__setattr__(self, "values", values)

    @classmethod
    def on_uniform_grid(cls, values: np.ndarray, horizon: float) -> "GridPath":
        values = np.asarray(values, dtype=np.float64)
        return cls(times=uniform_grid(horizon, values.shape[0] - 1), values=values)

    @property
    def n(self) -> int:
        """Number of grid steps."""
        return self.times.size - 1

    @property
    def dim(self) -> int:
        return self.values.shape[1]

    @property
    def horizon(self) -> float:
        return float(self.times[-1])

    @property
    def step(self) -> float:
        return self.horizon / self.n

    def same_grid(self, other: "GridPath") -> bool:
        return self.times.shape == other.times.shape and np.array_equal(self.times, other.times)

    def grid_index(self, t: float) -> int:
        """Index of a grid time; GridError if t is not on the grid."""
        pos = t / self.step
        idx = int(round(pos))
        if idx < 0 or idx > self.n or abs(pos - idx) > 1e-9 * max(1.0, abs(pos)):
            raise GridError(f"time {t} is not a grid point of step {self.step}")
        return idx

    def to_csv(self, path: Path | str) -> None:
        """Write `t,x1,...,xd` rows."""
        header = ",".join(["t"] + [f"x{i + 1}" for i in range(self.dim)])
        table = np.column_stack([self.times, self.values])
        np.savetxt(
            path, table, delimiter=",", header=header, comments="", fmt=settings.float_format
        )

    @classmethod
    def from_csv(cls, path: Path | str) -> "GridPath":
        table = np.loadtxt(path, delimiter=",", skiprows=1, ndmin=2)
        return cls(times=table[:, 0], values=table[:, 1:])
