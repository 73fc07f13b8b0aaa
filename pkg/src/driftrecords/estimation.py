"""Variance machinery for the record-count central limit theorem.

Two routes to the limiting variance: a data-driven lag-window estimator
computed from one observed indicator sequence, and a Monte Carlo
estimate that pools stationary-regime indicators across replications.
Both feed the Gaussian interval for the record count.
"""
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from ._kernels import lag_products, record_scan
from ._special import norm_quantile
from .probability import LdmConfig
from .records import RecordFlags
from .simulate import replication_rng


@dataclass(frozen=True)
class VarianceEstimate:
    """Lag-window variance estimate.

    sigma2 = gamma(0) + 2 * sum_{k<=m} gamma(k), floored at zero;
    `floored` records whether the floor was applied. gammas holds
    gamma(0..m).
    """

    sigma2: float
    m: int
    gammas: np.ndarray
    floored: bool


def variance_estimator(flags: RecordFlags, m: int | None = None) -> VarianceEstimate:
    """Lag-window long-run variance of the record indicators.

    Autocovariances use the 1/n normalization,
    gamma(k) = n^{-1} sum_{j=1}^{n-k} (1_j - N/n)(1_{j+k} - N/n),
    and the window sums lags 1..m with unit weights. m defaults to
    floor(sqrt(n)) capped at n//2; m = 0 yields exactly the Bernoulli
    variance  p_hat (1 - p_hat). Negative totals are floored at zero
    with the `floored` flag set, since small samples can produce them.
    """
    ind = flags.flags.astype(np.float64)
    n = ind.shape[0]
    if m is None:
        m = min(int(math.isqrt(n)), n // 2)
    if m < 0 or m > n // 2:
        raise ValueError(f"lag window m={m} outside [0, n//2] = [0, {n // 2}]")
    z = ind - ind.mean()
    gammas = np.empty(m + 1, dtype=np.float64)
    gammas[0] = float(z @ z) / n
    if m >= 1:
        gammas[1:] = lag_products(z, m) / n
    sigma2 = float(gammas[0] + 2.0 * gammas[1:].sum())
    floored = sigma2 < 0.0
    if floored:
        sigma2 = 0.0
    return VarianceEstimate(sigma2=sigma2, m=m, gammas=gammas, floored=floored)


def asymptotic_variance_mc(
    ldm: LdmConfig,
    horizon: int = 4000,
    burn_in: int = 2000,
    lag_max: int = 50,
    reps: int = 200,
    seed: int = 0,
    workers: int = 1,
    centered: bool = True,
) -> float:
    """Monte Carlo estimate of the limiting variance of the record rate.

    Indicators from the window (burn_in, burn_in + horizon] approximate
    the stationary regime; the burn-in absorbs the transient in which
    early observations still influence the running maximum. Pools the
    indicator mean p and the lag moments r_m = E[1_i 1_{i+m}] across
    replications and returns

        p - p^2 + 2 * sum_{m=1}^{lag_max} (r_m - p^2),

    floored at zero.

    The printed form of the limit subtracts p rather than p^2 inside
    the sum; its terms do not vanish with m, so the series cannot
    converge and the centered-covariance reading above is the
    implemented default. Pass centered=False to evaluate the printed
    form, truncated at lag_max, for audit.
    """
    if horizon <= lag_max:
        raise ValueError(
            f"horizon {horizon} must exceed lag_max {lag_max}"
        )
    c, delta, dist = ldm.c, ldm.delta, ldm.dist
    total = burn_in + horizon
    drift = c * np.arange(1, total + 1, dtype=np.float64)

    def one(rep: int):
        rng = replication_rng(seed, rep)
        y = dist.sample(rng, total) + drift
        fl, _ = record_scan(y, delta)
        ind = fl[burn_in:].astype(np.float64)
        return float(ind.sum()), lag_products(ind, lag_max)

    if workers <= 1:
        results = [one(r) for r in range(reps)]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(one, range(reps)))

    sum0 = 0.0
    sums = np.zeros(lag_max, dtype=np.float64)
    for s0, sk in results:
        sum0 += s0
        sums += sk
    p_hat = sum0 / (reps * horizon)
    lags = np.arange(1, lag_max + 1)
    r_hat = sums / (reps * (horizon - lags))
    baseline = p_hat * p_hat if centered else p_hat
    sigma2 = p_hat - p_hat * p_hat + 2.0 * float(np.sum(r_hat - baseline))
    return max(sigma2, 0.0)


def gaussian_interval(
    n: int, p_hat: float, sigma2: float, level: float
) -> tuple[float, float]:
    """Central Gaussian interval for the record count.

    Quantiles of Normal(n * p_hat, n * sigma2) at (1 - level)/2 and
    1 - (1 - level)/2. sigma2 = 0 degenerates to a point.
    """
    if not 0.0 < level < 1.0:
        raise ValueError(f"level must lie in (0, 1), got {level}")
    if sigma2 < 0.0:
        raise ValueError(f"sigma2 must be >= 0, got {sigma2}")
    mean = n * p_hat
    sd = math.sqrt(n * sigma2)
    z = float(norm_quantile(0.5 + level / 2.0))
    return (mean - z * sd, mean + z * sd)
