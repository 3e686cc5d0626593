"""Level-2 rough-path lifts, semi-norms and distances."""

from .lift import (
    accumulate,
    enhance_brownian,
    enhance_piecewise_linear,
    enhance_quantizer,
    zero_path,
)
from .models import EnhancedPath
from .norms import (
    delta_p,
    holder_distance,
    holder_gaps,
    holder_seminorm,
    p_variation,
    rho_q,
    sup_norm,
)

__all__ = [
    "EnhancedPath",
    "accumulate",
    "enhance_quantizer",
    "enhance_brownian",
    "enhance_piecewise_linear",
    "zero_path",
    "holder_gaps",
    "holder_seminorm",
    "holder_distance",
    "sup_norm",
    "p_variation",
    "rho_q",
    "delta_p",
]
