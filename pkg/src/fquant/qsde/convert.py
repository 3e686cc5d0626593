"""Itô <-> Stratonovich drift conversion."""

from dataclasses import replace

import numpy as np

from ..errors import SpecError
from .models import Calculus, SDESpec


def drift_correction(spec: SDESpec, t: float, x: np.ndarray) -> np.ndarray:
    """1/2 sum_j (d sigma_.j) sigma_.j, shape (..., m)."""
    jac = spec.diffusion_jacobian(t, x)
    sigma = spec.diffusion(t, x)
    return 0.5 * np.einsum("...ijk,...kj->...i", jac, sigma)


def ito_to_stratonovich(spec: SDESpec) -> SDESpec:
    """Same process written in Stratonovich form: b_S = b - 1/2 sum_j (d sigma_.j) sigma_.j."""
    if spec.calculus is not Calculus.ITO:
        raise SpecError(f"spec {spec.name!r} is not in Itô form")
    drift = spec.drift

    def stratonovich_drift(t, x):
        return drift(t, x) - drift_correction(spec, t, x)

    return replace(spec, drift=stratonovich_drift, calculus=Calculus.STRATONOVICH)


def stratonovich_to_ito(spec: SDESpec) -> SDESpec:
    """Inverse of ito_to_stratonovich."""
    if spec.calculus is not Calculus.STRATONOVICH:
        raise SpecError(f"spec {spec.name!r} is not in Stratonovich form")
    drift = spec.drift

    def ito_drift(t, x):
        return drift(t, x) + drift_correction(spec, t, x)

    return replace(spec, drift=ito_drift, calculus=Calculus.ITO)


def as_stratonovich(spec: SDESpec) -> SDESpec:
    """Convert Itô specs, pass Stratonovich specs through."""
    if spec.calculus is Calculus.ITO:
        return ito_to_stratonovich(spec)
    return spec
