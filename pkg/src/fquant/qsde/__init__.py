"""Quantized Stratonovich SDE solving and cubature."""

from .convert import as_stratonovich, drift_correction, ito_to_stratonovich, stratonovich_to_ito
from .ensemble import PathFunctional, quantized_expectation, quantized_sde_ensemble
from .experiment import pathwise_convergence_experiment, quartiles
from .models import Calculus, CellSolution, ConvergenceRow, QuantizedSolution, SDESpec
from .registry import FUNCTIONALS, SPECS, get_functional, get_spec
from .solvers import heun_batch, rk4, solve_elementary_ode, solve_reference_sde

__all__ = [
    "Calculus",
    "SDESpec",
    "CellSolution",
    "QuantizedSolution",
    "ConvergenceRow",
    "PathFunctional",
    "drift_correction",
    "ito_to_stratonovich",
    "stratonovich_to_ito",
    "as_stratonovich",
    "rk4",
    "heun_batch",
    "solve_elementary_ode",
    "solve_reference_sde",
    "quantized_sde_ensemble",
    "quantized_expectation",
    "pathwise_convergence_experiment",
    "quartiles",
    "SPECS",
    "FUNCTIONALS",
    "get_spec",
    "get_functional",
]
