"""Noise distributions for the linear drift model.

Six built-in families, each exposing exact closed-form cdf, log-cdf, pdf,
quantile, inverse-transform sampling, support endpoints, and right-tail
moment metadata.  Support endpoints and the right-tail mean are tabulated
per family rather than integrated numerically, because downstream
classifiers branch on their exact finiteness.
"""
import math
from dataclasses import dataclass

import numpy as np
from scipy.special import log_ndtr, ndtr

from ._special import norm_pdf, norm_quantile
from .errors import DriftRecordsError

# Right-tail mean of the standard Gumbel law, int_0^inf x f(x) dx.
# Equals int_0^1 (-log t) e^(-t) dt after t = exp(-x); cross-checked in tests
# against independent quadrature.
GUMBEL_MU_PLUS = 0.7965995992970531

_INF = math.inf


@dataclass(frozen=True)
class TailInfo:
    """Right-tail mean int_0^inf x f(x) dx (math.inf when divergent) and
    whether the full second moment is finite."""

    mu_plus: float
    second_moment_finite: bool


class Distribution:
    """Common interface of the built-in noise laws.

    Subclasses provide vectorized ``cdf``, ``log_cdf``, ``pdf``, ``quantile``,
    plus ``support``, ``tail_info`` and ``tail_integral_bound``.  All of them
    are immutable value objects, safe to share across threads.
    """

    kind = "abstract"

    @property
    def support(self):
        """(lower, upper) endpoints of the support; may be +-inf."""
        raise NotImplementedError

    def cdf(self, x):
        raise NotImplementedError

    def log_cdf(self, x):
        """log F(x), computed without evaluating F when F underflows."""
        raise NotImplementedError

    def log_sf(self, x):
        """log(1 - F(x)), computed without evaluating 1 - F when it
        underflows."""
        raise NotImplementedError

    def pdf(self, x):
        raise NotImplementedError

    def log_pdf(self, x):
        raise NotImplementedError

    def quantile(self, u):
        raise NotImplementedError

    def tail_info(self) -> TailInfo:
        raise NotImplementedError

    def tail_integral_bound(self, t):
        """Upper bound on int_t^inf (1 - F(s)) ds; inf for heavy tails."""
        raise NotImplementedError

    def sample(self, rng, size=None):
        """Inverse-transform draws from uniforms of the given generator."""
        return self.quantile(rng.random(size))

    def spec_string(self):
        return self.kind


@dataclass(frozen=True)
class Gumbel(Distribution):
    """Standard Gumbel law, F(x) = exp(-exp(-x)) on the whole line."""

    kind = "gumbel"

    @property
    def support(self):
        return (-_INF, _INF)

    def cdf(self, x):
        return np.exp(-np.exp(-np.asarray(x, dtype=np.float64)))

    def log_cdf(self, x):
        return -np.exp(-np.asarray(x, dtype=np.float64))

    def log_sf(self, x):
        x = np.asarray(x, dtype=np.float64)
        # beyond x ~ 700 the exact value is -x + log1p(-exp(-x)/2 + ...),
        # and the correction is below 1e-304; branching keeps the result
        # finite where exp(-x) itself would underflow to zero
        t = np.exp(-np.minimum(x, 700.0))
        with np.errstate(divide="ignore"):
            out = np.log(-np.expm1(-t))
        return np.where(x > 700.0, -x, out)

    def pdf(self, x):
        x = np.asarray(x, dtype=np.float64)
        return np.exp(-x - np.exp(-x))

    def log_pdf(self, x):
        x = np.asarray(x, dtype=np.float64)
        return -x - np.exp(-x)

    def quantile(self, u):
        u = np.asarray(u, dtype=np.float64)
        with np.errstate(divide="ignore"):
            return -np.log(-np.log(u))

    def tail_info(self):
        return TailInfo(GUMBEL_MU_PLUS, True)

    def tail_integral_bound(self, t):
        # 1 - F(s) <= exp(-s) for all s, so the tail integral is <= exp(-t).
        return math.exp(-t) if t > -700.0 else _INF


@dataclass(frozen=True)
class ParetoUnit(Distribution):
    """Pareto law with F(x) = 1 - 1/x on x > 1; infinite right-tail mean."""

    kind = "pareto1"

    @property
    def support(self):
        return (1.0, _INF)

    def cdf(self, x):
        x = np.asarray(x, dtype=np.float64)
        return np.where(x > 1.0, 1.0 - 1.0 / np.maximum(x, 1.0), 0.0)

    def log_cdf(self, x):
        x = np.asarray(x, dtype=np.float64)
        with np.errstate(divide="ignore", invalid="ignore"):
            out = np.log1p(-1.0 / np.maximum(x, 1.0))
        return np.where(x > 1.0, out, -_INF)

    def log_sf(self, x):
        x = np.asarray(x, dtype=np.float64)
        return np.where(x > 1.0, -np.log(np.maximum(x, 1.0)), 0.0)

    def pdf(self, x):
        x = np.asarray(x, dtype=np.float64)
        with np.errstate(divide="ignore"):
            return np.where(x > 1.0, 1.0 / np.square(np.maximum(x, 1.0)), 0.0)

    def log_pdf(self, x):
        x = np.asarray(x, dtype=np.float64)
        return np.where(x > 1.0, -2.0 * np.log(np.maximum(x, 1.0)), -_INF)

    def quantile(self, u):
        u = np.asarray(u, dtype=np.float64)
        with np.errstate(divide="ignore"):
            return 1.0 / (1.0 - u)

    def tail_info(self):
        return TailInfo(_INF, False)

    def tail_integral_bound(self, t):
        return _INF


@dataclass(frozen=True)
class Dagum(Distribution):
    """Dagum law with unit shape, F(x) = (1 + b/x)^(-q) on x > 0.

    The unit shape makes the right-tail mean infinite for every b, q > 0.
    """

    b: float
    q: float
    kind = "dagum"

    def __post_init__(self):
        if not (self.b > 0.0 and self.q > 0.0):
            raise DriftRecordsError(
                f"dagum requires b > 0 and q > 0, got b={self.b}, q={self.q}"
            )

    @property
    def support(self):
        return (0.0, _INF)

    def cdf(self, x):
        return np.exp(self.log_cdf(x))

    def log_cdf(self, x):
        x = np.asarray(x, dtype=np.float64)
        xp = np.maximum(x, 0.0)
        with np.errstate(divide="ignore", invalid="ignore"):
            out = self.q * np.log1p(-self.b / (xp + self.b))
        return np.where(x > 0.0, out, -_INF)

    def log_sf(self, x):
        x = np.asarray(x, dtype=np.float64)
        with np.errstate(divide="ignore", invalid="ignore"):
            out = np.log(-np.expm1(self.log_cdf(x)))
        return np.where(x > 0.0, out, 0.0)

    def pdf(self, x):
        x = np.asarray(x, dtype=np.float64)
        xp = np.where(x > 0.0, x, 1.0)
        val = (
            self.q
            * self.b
            * np.exp(-(self.q + 1.0) * np.log1p(self.b / xp))
            / np.square(xp)
        )
        return np.where(x > 0.0, val, 0.0)

    def log_pdf(self, x):
        x = np.asarray(x, dtype=np.float64)
        xp = np.where(x > 0.0, x, 1.0)
        out = (
            np.log(self.q * self.b)
            - (self.q + 1.0) * np.log1p(self.b / xp)
            - 2.0 * np.log(xp)
        )
        return np.where(x > 0.0, out, -_INF)

    def quantile(self, u):
        u = np.asarray(u, dtype=np.float64)
        with np.errstate(divide="ignore"):
            return self.b / np.expm1(-np.log(u) / self.q)

    def tail_info(self):
        return TailInfo(_INF, False)

    def tail_integral_bound(self, t):
        return _INF

    def spec_string(self):
        return f"dagum:b={self.b},q={self.q}"


@dataclass(frozen=True)
class Normal(Distribution):
    """Gaussian law with mean mu and standard deviation sigma."""

    mu: float = 0.0
    sigma: float = 1.0
    kind = "normal"

    def __post_init__(self):
        if not self.sigma > 0.0:
            raise DriftRecordsError(f"normal requires sigma > 0, got {self.sigma}")

    @property
    def support(self):
        return (-_INF, _INF)

    def _z(self, x):
        return (np.asarray(x, dtype=np.float64) - self.mu) / self.sigma

    def cdf(self, x):
        return ndtr(self._z(x))

    def log_cdf(self, x):
        return log_ndtr(self._z(x))

    def log_sf(self, x):
        return log_ndtr(-self._z(x))

    def pdf(self, x):
        return norm_pdf(self._z(x)) / self.sigma

    def log_pdf(self, x):
        z = self._z(x)
        return -0.5 * z * z - math.log(self.sigma * math.sqrt(2.0 * math.pi))

    def quantile(self, u):
        return self.mu + self.sigma * norm_quantile(u)

    def tail_info(self):
        z = self.mu / self.sigma
        mu_plus = self.mu * float(ndtr(z)) + self.sigma * float(norm_pdf(z))
        return TailInfo(mu_plus, True)

    def tail_integral_bound(self, t):
        # Exact: int_t^inf (1 - F) = sigma * (phi(z) - z * (1 - Phi(z))).
        z = (t - self.mu) / self.sigma
        return self.sigma * float(norm_pdf(z) - z * ndtr(-z))

    def spec_string(self):
        return f"normal:mu={self.mu},sigma={self.sigma}"


@dataclass(frozen=True)
class Uniform(Distribution):
    """Uniform law on (lo, hi)."""

    lo: float = 0.0
    hi: float = 1.0
    kind = "uniform"

    def __post_init__(self):
        if not self.hi > self.lo:
            raise DriftRecordsError(
                f"uniform requires lo < hi, got lo={self.lo}, hi={self.hi}"
            )

    @property
    def support(self):
        return (self.lo, self.hi)

    def cdf(self, x):
        x = np.asarray(x, dtype=np.float64)
        return np.clip((x - self.lo) / (self.hi - self.lo), 0.0, 1.0)

    def log_cdf(self, x):
        with np.errstate(divide="ignore"):
            return np.log(self.cdf(x))

    def log_sf(self, x):
        x = np.asarray(x, dtype=np.float64)
        with np.errstate(divide="ignore"):
            return np.log(np.clip((self.hi - x) / (self.hi - self.lo), 0.0, 1.0))

    def pdf(self, x):
        x = np.asarray(x, dtype=np.float64)
        inside = (x >= self.lo) & (x <= self.hi)
        return np.where(inside, 1.0 / (self.hi - self.lo), 0.0)

    def log_pdf(self, x):
        with np.errstate(divide="ignore"):
            return np.log(self.pdf(x))

    def quantile(self, u):
        u = np.asarray(u, dtype=np.float64)
        return self.lo + u * (self.hi - self.lo)

    def tail_info(self):
        if self.hi <= 0.0:
            mu_plus = 0.0
        else:
            a = max(self.lo, 0.0)
            mu_plus = (self.hi * self.hi - a * a) / (2.0 * (self.hi - self.lo))
        return TailInfo(mu_plus, True)

    def tail_integral_bound(self, t):
        if t >= self.hi:
            return 0.0
        if t >= self.lo:
            return (self.hi - t) ** 2 / (2.0 * (self.hi - self.lo))
        return (self.lo - t) + 0.5 * (self.hi - self.lo)

    def spec_string(self):
        return f"uniform:lo={self.lo},hi={self.hi}"


@dataclass(frozen=True)
class Exponential(Distribution):
    """Exponential law with the given rate on x > 0."""

    rate: float = 1.0
    kind = "exp"

    def __post_init__(self):
        if not self.rate > 0.0:
            raise DriftRecordsError(f"exp requires rate > 0, got {self.rate}")

    @property
    def support(self):
        return (0.0, _INF)

    def cdf(self, x):
        x = np.asarray(x, dtype=np.float64)
        return np.where(x > 0.0, -np.expm1(-self.rate * np.maximum(x, 0.0)), 0.0)

    def log_cdf(self, x):
        x = np.asarray(x, dtype=np.float64)
        with np.errstate(divide="ignore", invalid="ignore"):
            out = np.log(-np.expm1(-self.rate * np.maximum(x, 0.0)))
        return np.where(x > 0.0, out, -_INF)

    def log_sf(self, x):
        x = np.asarray(x, dtype=np.float64)
        return np.where(x > 0.0, -self.rate * np.maximum(x, 0.0), 0.0)

    def pdf(self, x):
        x = np.asarray(x, dtype=np.float64)
        return np.where(x > 0.0, self.rate * np.exp(-self.rate * np.maximum(x, 0.0)), 0.0)

    def log_pdf(self, x):
        x = np.asarray(x, dtype=np.float64)
        return np.where(
            x > 0.0, math.log(self.rate) - self.rate * np.maximum(x, 0.0), -_INF
        )

    def quantile(self, u):
        u = np.asarray(u, dtype=np.float64)
        with np.errstate(divide="ignore"):
            return -np.log1p(-u) / self.rate

    def tail_info(self):
        return TailInfo(1.0 / self.rate, True)

    def tail_integral_bound(self, t):
        if t >= 0.0:
            return math.exp(-self.rate * t) / self.rate if self.rate * t < 700 else 0.0
        return -t + 1.0 / self.rate

    def spec_string(self):
        return f"exp:rate={self.rate}"


# Module-level wrappers with the flat (distribution, x) calling convention.

def cdf(d: Distribution, x):
    return d.cdf(x)


def pdf(d: Distribution, x):
    return d.pdf(x)


def sample(d: Distribution, rng, size=None):
    return d.sample(rng, size)


def tail_info(d: Distribution) -> TailInfo:
    return d.tail_info()


_PARAM_DEFAULTS = {
    "dagum": {"b": 1.0, "q": 1.0},
    "normal": {"mu": 0.0, "sigma": 1.0},
    "uniform": {"lo": 0.0, "hi": 1.0},
    "exp": {"rate": 1.0},
}

_KIND_FACTORY = {
    "gumbel": lambda p: Gumbel(),
    "pareto1": lambda p: ParetoUnit(),
    "dagum": lambda p: Dagum(b=p["b"], q=p["q"]),
    "normal": lambda p: Normal(mu=p["mu"], sigma=p["sigma"]),
    "uniform": lambda p: Uniform(lo=p["lo"], hi=p["hi"]),
    "exp": lambda p: Exponential(rate=p["rate"]),
}


def parse_spec(text: str) -> Distribution:
    """Build a distribution from a spec string.

    Grammar: ``gumbel``, ``pareto1``, ``dagum:b=<v>,q=<v>``,
    ``normal:mu=<v>,sigma=<v>``, ``uniform:lo=<v>,hi=<v>``, ``exp:rate=<v>``.
    Omitted parameters take the documented defaults.
    """
    text = text.strip()
    kind, _, rest = text.partition(":")
    kind = kind.strip().lower()
    if kind not in _KIND_FACTORY:
        raise DriftRecordsError(
            f"unknown distribution kind {kind!r}; expected one of "
            f"{sorted(_KIND_FACTORY)}"
        )
    params = dict(_PARAM_DEFAULTS.get(kind, {}))
    if rest:
        if kind in ("gumbel", "pareto1"):
            raise DriftRecordsError(f"{kind} takes no parameters, got {rest!r}")
        for item in rest.split(","):
            if not item.strip():
                continue
            key, eq, val = item.partition("=")
            key = key.strip()
            if not eq or key not in params:
                raise DriftRecordsError(
                    f"bad parameter {item!r} for {kind}; "
                    f"expected one of {sorted(params)}"
                )
            try:
                params[key] = float(val)
            except ValueError:
                raise DriftRecordsError(
                    f"parameter {key} of {kind} must be a number, got {val!r}"
                ) from None
    return _KIND_FACTORY[kind](params)
