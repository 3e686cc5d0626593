"""Exception hierarchy.

Every error carries an ``exit_code`` used by the command-line surface:
2 for invalid arguments, 3 for numerical failures.
"""


class FquantError(Exception):
    """Base class for all fquant errors."""

    exit_code = 2


class SolverError(FquantError):
    """An iterative solver stopped before reaching its tolerance."""

    exit_code = 3

    def __init__(self, message: str, residual: float, iterations: int):
        super().__init__(f"{message} (residual={residual:.3e}, iterations={iterations})")
        self.residual = residual
        self.iterations = iterations


class QuantDomainError(FquantError, ValueError):
    """Argument outside the mathematical domain of an operation."""


class ResolutionError(FquantError, ValueError):
    """Grid too coarse for the requested number of K-L coefficients."""


class GridError(FquantError, ValueError):
    """Non-uniform grid, misaligned knot or non-grid time."""


class CodebookIndexError(FquantError, IndexError):
    """Multi-index does not address a codebook cell."""


class CompatibilityError(FquantError, ValueError):
    """Two paths do not share grid or dimension."""


class GridSizeError(FquantError, ValueError):
    """Grid exceeds the size cap of a quadratic-cost algorithm."""


class BlowUpError(FquantError):
    """Non-finite state while integrating an ODE or SDE."""

    exit_code = 3

    def __init__(self, time: float, index: tuple[int, ...] | None = None):
        where = f" in cell {list(index)}" if index is not None else ""
        super().__init__(f"non-finite state at t={time:.6g}{where}")
        self.time = time
        self.index = index


class SpecError(FquantError, ValueError):
    """Unknown registry entry or wrong calculus flag."""
