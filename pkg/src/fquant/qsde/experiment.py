"""Pathwise convergence of quantized SDE solutions to the reference solution."""

import logging
from collections.abc import Sequence

import numpy as np

from ..codebook.product import build_product_codebook, elementary_path, voronoi_project
from ..errors import QuantDomainError
from ..kl.brownian import simulate_brownian_batch
from ..kl.models import GridPath
from ..roughpath.lift import enhance_piecewise_linear
from ..roughpath.norms import rho_q, sup_norm
from ..services.runner import MonteCarloRunner, SeedLike
from .convert import as_stratonovich
from .models import ConvergenceRow, SDESpec
from .solvers import heun_batch, solve_elementary_ode

logger = logging.getLogger(__name__)


def quartiles(sample: Sequence[float]) -> tuple[float, float, float]:
    """(first quartile, median, third quartile)."""
    q1, med, q3 = np.quantile(np.asarray(sample, dtype=np.float64), [0.25, 0.5, 0.75])
    return float(q1), float(med), float(q3)


def pathwise_convergence_experiment(
    spec: SDESpec,
    q: float,
    Ns: Sequence[int],
    paths: int,
    seed: SeedLike,
    *,
    n: int = 1024,
    T: float = 1.0,
    workers: int | None = None,
) -> list[ConvergenceRow]:
    """
    rho_q distance between quantized and reference solutions, per codebook size.

    The same Brownian paths and reference solutions serve every N. Both
    solutions are lifted as polygonal paths on the common grid, so the
    distance compares like with like.
    """
    if not 2.0 < q:
        raise QuantDomainError(f"q must be > 2, got {q}")
    if paths < 1:
        raise QuantDomainError(f"need at least one path, got {paths}")
    spec = as_stratonovich(spec)
    runner = MonteCarloRunner(workers)
    brownian = simulate_brownian_batch(n, spec.noise_dim, T, seed, paths, workers)
    increments = np.stack([np.diff(w.values, axis=0) for w in brownian])
    reference_values = heun_batch(spec, increments, brownian[0].times)
    references = [
        enhance_piecewise_linear(GridPath(times=brownian[0].times, values=v))
        for v in reference_values
    ]

    rows: list[ConvergenceRow] = []
    for N in Ns:
        cb = build_product_codebook(N, spec.noise_dim, T)
        cells = runner.map(lambda w: voronoi_project(w, cb), brownian)
        lifted = {
            idx: enhance_piecewise_linear(solve_elementary_ode(spec, elementary_path(cb, idx), n))
            for idx in sorted(set(cells))
        }

        def distances(i: int) -> tuple[float, float]:
            approx, ref = lifted[cells[i]], references[i]
            return rho_q(approx, ref, q), sup_norm(approx.level1 - ref.level1)

        stats = runner.map(distances, range(paths))
        rho = [s[0] for s in stats]
        q1, med, q3 = quartiles(rho)
        row = ConvergenceRow(
            N=N,
            size=cb.size,
            rho_median=med,
            rho_q1=q1,
            rho_q3=q3,
            sup_median=quartiles([s[1] for s in stats])[1],
        )
        logger.info("N=%d cells=%d median rho=%.4g", N, len(lifted), med)
        rows.append(row)
    return rows
