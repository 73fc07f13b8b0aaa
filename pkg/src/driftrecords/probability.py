"""Record probabilities for the linear drift model.

For noise X_j with cdf F and drift c per step, observation n is a
delta-record with probability

    p_n = integral of  prod_{i=1}^{n-1} F(x + c i - delta) f(x) dx,

and the limiting rate p is the same integral with the product taken over
all i >= 1.  This module evaluates both by adaptive quadrature, truncating
the infinite product with a certified tail bound, and classifies when the
limit is positive and when the total number of records stays finite.
"""
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .distributions import Distribution
from .errors import DriftRecordsError, QuadratureError, UndecidedError
from .quadrature import integrate

DEFAULT_TOL = 1e-8

# Mass trimmed from each unbounded support end before quadrature.
_QUANTILE_CUT = 1e-12

# -log F <= K (1 - F) whenever F >= 0.999; used to turn the truncated
# product tail into an integral bound.
_F_FLOOR = 0.999
_K_LOG = -math.log(_F_FLOOR) / (1.0 - _F_FLOOR)

# Divergence heuristics for the zero-trend finiteness integral.
_DIVERGENCE_CAP = 1e12
_MAX_DOUBLINGS = 10_000
_REL_CHANGE = 1e-6

# Verdict and reason labels for finiteness classification.
ALMOST_SURELY_FINITE = "AlmostSurelyFinite"
INFINITE = "Infinite"

REASON_TAIL_MEAN_INFINITE = "tail_mean_infinite"
REASON_NEGATIVE_TREND = "negative_trend_finite_tail_mean"
REASON_THRESHOLD_COVERS_SUPPORT = "threshold_covers_support_span"
REASON_POSITIVE_TREND_RECURRENT = "positive_trend_records_recur"
REASON_ZERO_TREND_NONPOSITIVE = "zero_trend_nonpositive_threshold"
REASON_ZERO_TREND_CONVERGES = "zero_trend_survival_integral_converges"
REASON_ZERO_TREND_DIVERGES = "zero_trend_survival_integral_diverges"


@dataclass(frozen=True)
class LdmConfig:
    """A linear drift model: noise law, trend per step, record threshold."""

    dist: Distribution
    c: float
    delta: float

    def __post_init__(self):
        if not (math.isfinite(self.c) and math.isfinite(self.delta)):
            raise DriftRecordsError("trend and threshold must be finite")


@dataclass(frozen=True)
class ProbResult:
    """A probability with its numerical error bound.

    ``truncation_n`` is the number of product factors the integrand used
    (0 when the value is exact without quadrature).
    """

    value: float
    abs_error_bound: float
    truncation_n: int


@dataclass(frozen=True)
class FinitenessVerdict:
    """Whether the total record count stays finite, and why."""

    verdict: str
    reason: str
    integral_value: Optional[float] = None


def _quantile_window(dist):
    """Finite integration window covering all but ~2e-12 of the mass."""
    lo, hi = dist.support
    cut = 0.0
    if not math.isfinite(lo):
        lo = float(dist.quantile(_QUANTILE_CUT))
        cut += _QUANTILE_CUT
    if not math.isfinite(hi):
        hi = float(dist.quantile(1.0 - _QUANTILE_CUT))
        cut += _QUANTILE_CUT
    return lo, hi, cut


def _product_cutoff(dist, c, delta, n_factors):
    """Largest x below which some product factor is exactly zero.

    Factor i evaluates F at x + c i - delta; with a finite lower support
    endpoint the whole product vanishes for x below the cutoff.
    """
    supp_lo = dist.support[0]
    if not math.isfinite(supp_lo):
        return -math.inf
    i_min = 1 if c >= 0.0 else n_factors
    return supp_lo + delta - c * i_min


_CHUNK_BUDGET = 1 << 22


def _log_product(dist, x, offsets):
    """sum_i log F(x + offsets[i]) for each x, chunking the (x, i) grid."""
    m = offsets.shape[0]
    if m == 0:
        return np.zeros_like(x)
    out = np.empty_like(x)
    step = max(1, _CHUNK_BUDGET // m)
    for start in range(0, x.shape[0], step):
        block = x[start:start + step]
        out[start:start + step] = dist.log_cdf(
            block[:, None] + offsets[None, :]
        ).sum(axis=1)
    return out


def p_n_delta(cfg: LdmConfig, n: int, tol: float = DEFAULT_TOL) -> ProbResult:
    """Probability that observation ``n`` is a delta-record.

    Observation 1 is a delta-record by convention, so ``n=1`` returns 1
    exactly.  Otherwise the defining integral is evaluated to within
    ``tol`` by adaptive quadrature, with the finite product accumulated in
    log space.
    """
    if n < 1:
        raise DriftRecordsError(f"n must be >= 1, got {n}")
    if not tol > 0.0:
        raise DriftRecordsError(f"tol must be positive, got {tol}")
    if n == 1:
        return ProbResult(1.0, 0.0, 0)

    dist, c, delta = cfg.dist, cfg.c, cfg.delta
    lo, hi, cut = _quantile_window(dist)
    lo = max(lo, _product_cutoff(dist, c, delta, n - 1))
    if lo >= hi:
        return ProbResult(0.0, 0.0, n - 1)

    offsets = c * np.arange(1, n, dtype=np.float64) - delta
    pdf = dist.pdf

    def integrand(x):
        with np.errstate(over="ignore"):
            return np.exp(_log_product(dist, x, offsets)) * pdf(x)

    value, err = integrate(integrand, lo, hi, 0.8 * tol)
    value = min(max(value, 0.0), 1.0)
    return ProbResult(value, err + cut, n - 1)


def classify_positivity(cfg: LdmConfig) -> bool:
    """Whether the limiting delta-record rate is strictly positive.

    True exactly when the right-tail mean is finite and either the trend is
    positive with delta < (support span) + c, or the trend is zero with
    delta < 0 and a finite upper endpoint.
    """
    if math.isinf(cfg.dist.tail_info().mu_plus):
        return False
    lo, hi = cfg.dist.support
    if cfg.c > 0.0:
        span = hi - lo  # may be inf, never nan: lo < hi always
        return cfg.delta < span + cfg.c
    if cfg.c == 0.0:
        return cfg.delta < 0.0 and math.isfinite(hi)
    return False


def p_delta(cfg: LdmConfig, tol: float = DEFAULT_TOL) -> ProbResult:
    """Limiting delta-record rate, with certified truncation of the
    infinite product.

    When the positivity classifier rules the limit out, returns 0 exactly.
    For zero trend (finite upper endpoint, negative delta) the limit equals
    the closed form 1 - F(x_sup + delta).  For positive trend the product
    over i >= 1 is truncated at an index N chosen per quadrature batch so
    that the neglected factors change the integrand by less than tol/10 in
    aggregate; that tail bound rides along in ``abs_error_bound``.
    """
    if not tol > 0.0:
        raise DriftRecordsError(f"tol must be positive, got {tol}")
    if not classify_positivity(cfg):
        return ProbResult(0.0, 0.0, 0)

    dist, c, delta = cfg.dist, cfg.c, cfg.delta
    if c == 0.0:
        hi = dist.support[1]
        value = float(np.clip(1.0 - dist.cdf(hi + delta), 0.0, 1.0))
        return ProbResult(value, 0.0, 0)
    if c < 0.0:
        raise DriftRecordsError(
            "internal inconsistency: nonzero limiting rate claimed for a "
            "negative trend"
        )

    lo, hi, cut = _quantile_window(dist)
    lo = max(lo, dist.support[0] + delta - c)
    if lo >= hi:
        return ProbResult(0.0, 0.0, 0)

    tail_budget = tol / 10.0
    max_truncation = [1]
    pdf = dist.pdf

    def truncation_for(x_min):
        lo_n, n = 0, 1
        while True:
            arg = x_min + c * n - delta
            if (
                float(dist.cdf(arg)) > _F_FLOOR
                and (_K_LOG / c) * dist.tail_integral_bound(arg) < tail_budget
            ):
                break
            lo_n, n = n, n * 2
            if n > 1 << 40:
                raise DriftRecordsError(
                    "could not certify a truncation index for the infinite "
                    "product; the tail bound never met the budget"
                )
        # Binary refinement between the last failing and first passing index.
        while n - lo_n > 1:
            mid = (lo_n + n) // 2
            arg = x_min + c * mid - delta
            if (
                float(dist.cdf(arg)) > _F_FLOOR
                and (_K_LOG / c) * dist.tail_integral_bound(arg) < tail_budget
            ):
                n = mid
            else:
                lo_n = mid
        return n

    def integrand(x):
        n_trunc = truncation_for(float(x.min()))
        max_truncation[0] = max(max_truncation[0], n_trunc)
        offsets = c * np.arange(1, n_trunc + 1, dtype=np.float64) - delta
        with np.errstate(over="ignore"):
            return np.exp(_log_product(dist, x, offsets)) * pdf(x)

    value, err = integrate(integrand, lo, hi, 0.8 * tol)
    value = min(max(value, 0.0), 1.0)
    return ProbResult(value, err + cut + tail_budget, max_truncation[0])


def _finiteness_integrand(dist, delta):
    log_sf, log_pdf = dist.log_sf, dist.log_pdf

    def g(x):
        with np.errstate(over="ignore", invalid="ignore"):
            out = np.exp(log_sf(x + delta) - 2.0 * log_sf(x) + log_pdf(x))
        return np.nan_to_num(out, nan=0.0, posinf=0.0)

    return g


def classify_finiteness(cfg: LdmConfig, tol: float = DEFAULT_TOL) -> FinitenessVerdict:
    """Decide whether the model yields finitely many delta-records.

    Finite exactly when: the trend is negative with a finite right-tail
    mean; or the trend is zero, delta > 0, and the survival-ratio integral
    int (1-F(x+delta)) / (1-F(x))^2 f(x) dx over x >= 0 converges; or the
    trend is positive and delta - c covers the support span.  The zero-trend
    integral is probed numerically over doubling windows: divergence is
    declared once partial integrals pass a cap or keep growing without
    decay, and a probe that ends in neither state raises UndecidedError.
    """
    dist, c, delta = cfg.dist, cfg.c, cfg.delta
    lo, hi = dist.support
    if math.isinf(dist.tail_info().mu_plus):
        return FinitenessVerdict(INFINITE, REASON_TAIL_MEAN_INFINITE)
    if c < 0.0:
        return FinitenessVerdict(ALMOST_SURELY_FINITE, REASON_NEGATIVE_TREND)
    if c > 0.0:
        if hi - lo <= delta - c:
            return FinitenessVerdict(
                ALMOST_SURELY_FINITE, REASON_THRESHOLD_COVERS_SUPPORT
            )
        return FinitenessVerdict(INFINITE, REASON_POSITIVE_TREND_RECURRENT)
    if delta <= 0.0:
        return FinitenessVerdict(INFINITE, REASON_ZERO_TREND_NONPOSITIVE)

    g = _finiteness_integrand(dist, delta)
    lo0 = max(lo, 0.0)

    if math.isfinite(hi):
        # The numerator vanishes above hi - delta, so the domain is compact
        # and the denominator stays bounded away from zero on it: finite.
        top = hi - delta
        if top <= lo0:
            return FinitenessVerdict(
                ALMOST_SURELY_FINITE, REASON_ZERO_TREND_CONVERGES, 0.0
            )
        val, _ = integrate(g, lo0, top, tol)
        return FinitenessVerdict(
            ALMOST_SURELY_FINITE, REASON_ZERO_TREND_CONVERGES, float(val)
        )

    total = 0.0
    upper = lo0
    increments = []
    for k in range(_MAX_DOUBLINGS):
        new_upper = lo0 + 2.0 ** k
        # Absolute budget halves per window; the relative floor keeps huge
        # partial integrals (the divergent regimes) integrable at all.
        seg_tol = max(tol / 2.0 ** (k + 1), 1e-10 * (1.0 + total))
        try:
            seg, _ = integrate(g, upper, new_upper, seg_tol)
        except QuadratureError as exc:
            raise UndecidedError(
                "the survival-ratio integral could not be resolved on "
                f"[{upper:g}, {new_upper:g}]: {exc}"
            ) from exc
        total += seg
        increments.append(seg)
        upper = new_upper
        if total > _DIVERGENCE_CAP:
            return FinitenessVerdict(INFINITE, REASON_ZERO_TREND_DIVERGES)
        if seg < _REL_CHANGE * max(total, 1e-300):
            return FinitenessVerdict(
                ALMOST_SURELY_FINITE, REASON_ZERO_TREND_CONVERGES, float(total)
            )
        if upper > 1e290:
            break
    tail = increments[-5:]
    if len(tail) == 5 and all(b >= a for a, b in zip(tail, tail[1:])):
        return FinitenessVerdict(INFINITE, REASON_ZERO_TREND_DIVERGES)
    raise UndecidedError(
        "the survival-ratio integral neither converged nor showed sustained "
        "growth within the probe budget"
    )
