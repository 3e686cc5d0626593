"""Rate tables for product quantization of Brownian motion."""

import logging
import math
from collections.abc import Sequence

from pydantic import BaseModel, ConfigDict

from ..codebook.product import build_product_codebook, elementary_path, voronoi_project
from ..errors import QuantDomainError
from ..kl.brownian import simulate_brownian_batch
from ..qsde.experiment import quartiles
from ..roughpath.lift import enhance_brownian, enhance_quantizer
from ..roughpath.norms import delta_p, holder_distance, rho_q, sup_norm
from .runner import MonteCarloRunner, SeedLike

logger = logging.getLogger(__name__)

# sharp asymptotic constant of the optimal (non-product) quantizers of W
OPTIMAL_RATE_CONSTANT = math.sqrt(2.0) / math.pi


class QuadraticRateRow(BaseModel):
    """Exact quadratic error of the optimal product quantizer at level N."""

    model_config = ConfigDict(frozen=True)

    N: int
    size: int
    error: float
    constant: float
    optimal_constant: float = OPTIMAL_RATE_CONSTANT


class HolderRateRow(BaseModel):
    """Monte Carlo quartiles of rough-path distances between W and its quantization."""

    model_config = ConfigDict(frozen=True)

    N: int
    size: int
    level1_median: float
    level1_q1: float
    level1_q3: float
    level2_median: float
    level2_q1: float
    level2_q3: float
    rho_median: float
    rho_q1: float
    rho_q3: float
    sup_median: float
    delta_median: float | None = None


class RateService:
    """Builds convergence-rate tables for product codebooks."""

    def __init__(self, workers: int | None = None):
        self.runner = MonteCarloRunner(workers)

    def quadratic(self, Ns: Sequence[int], T: float = 1.0, d: int = 1) -> list[QuadraticRateRow]:
        """
        Rows (N, sqrt(distortion), sqrt(distortion) sqrt(log N) / T).

        Exact, no Monte Carlo. The constant is undefined at N = 1 and reported as nan.
        """
        rows = []
        for N in Ns:
            cb = build_product_codebook(N, d, T)
            error = math.sqrt(cb.distortion)
            constant = error * math.sqrt(math.log(N)) / T if N > 1 else math.nan
            rows.append(QuadraticRateRow(N=N, size=cb.size, error=error, constant=constant))
        return rows

    def holder(
        self,
        Ns: Sequence[int],
        q: float,
        n: int,
        paths: int,
        seed: SeedLike,
        T: float = 1.0,
        d: int = 1,
        p: float | None = None,
    ) -> list[HolderRateRow]:
        """
        Per N: Hölder distance of level 1, of level 2 and rho_q between W and W_hat.

        With p given, the median p-variation distance delta_p is reported too.

        The same simulated Brownian paths serve every N.
        """
        if q <= 2:
            raise QuantDomainError(f"q must be > 2, got {q}")
        brownian = simulate_brownian_batch(n, d, T, seed, paths, self.runner.workers)
        lifted = self.runner.map(enhance_brownian, brownian)
        rows = []
        for N in Ns:
            cb = build_product_codebook(N, d, T)
            cells = self.runner.map(lambda w: voronoi_project(w, cb), brownian)
            quantized = {
                idx: enhance_quantizer(elementary_path(cb, idx), n) for idx in sorted(set(cells))
            }

            def distances(i: int) -> tuple[float, ...]:
                w, w_hat = lifted[i], quantized[cells[i]]
                return (
                    holder_distance(w, w_hat, q, order=1),
                    holder_distance(w, w_hat, q, order=2),
                    rho_q(w, w_hat, q),
                    sup_norm(w.level1 - w_hat.level1),
                    delta_p(w, w_hat, p) if p is not None else math.nan,
                )

            stats = self.runner.map(distances, range(paths))
            l1 = quartiles([s[0] for s in stats])
            l2 = quartiles([s[1] for s in stats])
            rho = quartiles([s[2] for s in stats])
            rows.append(
                HolderRateRow(
                    N=N,
                    size=cb.size,
                    level1_q1=l1[0],
                    level1_median=l1[1],
                    level1_q3=l1[2],
                    level2_q1=l2[0],
                    level2_median=l2[1],
                    level2_q3=l2[2],
                    rho_q1=rho[0],
                    rho_median=rho[1],
                    rho_q3=rho[2],
                    sup_median=quartiles([s[3] for s in stats])[1],
                    delta_median=quartiles([s[4] for s in stats])[1] if p is not None else None,
                )
            )
            logger.info("N=%d cells=%d median rho=%.4g", N, len(quantized), rho[1])
        return rows
