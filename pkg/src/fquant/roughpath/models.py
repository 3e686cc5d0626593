"""Level-2 enhanced paths with prefix-stored Lévy areas."""

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from ..config import settings
from ..errors import CompatibilityError, GridError
from ..kl.models import GridPath


@dataclass(frozen=True)
class EnhancedPath:
    """
    A path with its level-2 iterated integrals on a uniform grid.

    Component 0 is time. Any A_{s,t} is recovered from the prefix areas
    by Chen's relation.

    Attributes:
        times: Uniform grid, shape (n+1,).
        level1: x(t_i), shape (n+1, D) with level1[:, 0] == times.
        level2: A_{0,t_i}, shape (n+1, D, D).
    """

    times: np.ndarray
    level1: np.ndarray
    level2: np.ndarray

    def __post_init__(self):
        n1, D = self.level1.shape
        if self.times.shape != (n1,):
            raise GridError(f"{self.times.size} times for {n1} level-1 values")
        if self.level2.shape != (n1, D, D):
            raise GridError(f"level-2 shape {self.level2.shape}, expected {(n1, D, D)}")

    @property
    def n(self) -> int:
        return self.times.size - 1

    @property
    def dim(self) -> int:
        """D = d + 1, time included."""
        return self.level1.shape[1]

    @property
    def horizon(self) -> float:
        return float(self.times[-1])

    def check_compatible(self, other: "EnhancedPath") -> None:
        if self.dim != other.dim:
            raise CompatibilityError(f"dimension {self.dim} != {other.dim}")
        if self.times.shape != other.times.shape or not np.array_equal(self.times, other.times):
            raise CompatibilityError("paths live on different grids")

    def increment(self, s, t) -> np.ndarray:
        """x_t - x_s for grid indices (scalars or arrays)."""
        return self.level1[t] - self.level1[s]

    def areas(self, s, t) -> np.ndarray:
        """A_{s,t} = A_{0,t} - A_{0,s} - (x_s - x_0) (x) (x_t - x_s) for grid indices."""
        s = np.asarray(s)
        t = np.asarray(t)
        base = self.level1[s] - self.level1[0]
        inc = self.level1[t] - self.level1[s]
        return self.level2[t] - self.level2[s] - base[..., :, None] * inc[..., None, :]

    def area(self, s: int, t: int) -> np.ndarray:
        return self.areas(s, t)

    def spatial(self) -> GridPath:
        """Level 1 without the time component."""
        return GridPath(times=self.times, values=self.level1[:, 1:])

    def to_csv(self, path: Path | str) -> None:
        """Columns t, x0..x{D-1}, A00..A{D-1}{D-1} (prefix areas, row-major)."""
        D = self.dim
        header = ["t"] + [f"x{i}" for i in range(D)]
        header += [f"A{i}{j}" for i in range(D) for j in range(D)]
        table = np.column_stack([self.times, self.level1, self.level2.reshape(self.n + 1, D * D)])
        np.savetxt(
            path,
            table,
            delimiter=",",
            header=",".join(header),
            comments="",
            fmt=settings.float_format,
        )
