"""Standard normal helpers used by several modules.

The quantile is Wichura's PPND16 rational approximation (algorithm AS 241),
accurate to about 1e-15 over (0, 1).  We deliberately use the same quantile
for inverse-transform sampling and for confidence intervals, so every normal
variate in the package flows through one deterministic code path.
"""
import numpy as np
from scipy import special as _sc

_A = np.array([
    3.3871328727963666080e0, 1.3314166789178437745e2,
    1.9715909503065514427e3, 1.3731693765509461125e4,
    4.5921953931549871457e4, 6.7265770927008700853e4,
    3.3430575583588128105e4, 2.5090809287301226727e3,
])
_B = np.array([
    1.0, 4.2313330701600911252e1,
    6.8718700749205790830e2, 5.3941960214247511077e3,
    2.1213794301586595867e4, 3.9307895800092710610e4,
    2.8729085735721942674e4, 5.2264952788528545610e3,
])
_C = np.array([
    1.42343711074968357734e0, 4.63033784615654529590e0,
    5.76949722146069140550e0, 3.64784832476320460504e0,
    1.27045825245236838258e0, 2.41780725177450611770e-1,
    2.27238449892691845833e-2, 7.74545014278341407640e-4,
])
_D = np.array([
    1.0, 2.05319162663775882187e0,
    1.67638483018380384940e0, 6.89767334985100004550e-1,
    1.48103976427480074590e-1, 1.51986665636164571966e-2,
    5.47593808499534494600e-4, 1.05075007164441684324e-9,
])
_E = np.array([
    6.65790464350110377720e0, 5.46378491116411436990e0,
    1.78482653991729133580e0, 2.96560571828504891230e-1,
    2.65321895265761230930e-2, 1.24266094738807843860e-3,
    2.71155556874348757815e-5, 2.01033439929228813265e-7,
])
_F = np.array([
    1.0, 5.99832206555887937690e-1,
    1.36929880922735805310e-1, 1.48753612908506148525e-2,
    7.86869131145613259100e-4, 1.84631831751005468180e-5,
    1.42151175831644588870e-7, 2.04426310338993978564e-15,
])


def _ratpoly(coef_num, coef_den, r):
    num = np.zeros_like(r)
    den = np.zeros_like(r)
    for c in coef_num[::-1]:
        num = num * r + c
    for c in coef_den[::-1]:
        den = den * r + c
    return num / den


def norm_quantile(p):
    """Inverse standard normal cdf, vectorized.

    Parameters
    ----------
    p : float or ndarray
        Probabilities in [0, 1].  Endpoints map to -inf/+inf.

    Returns
    -------
    float or ndarray
    """
    p_arr = np.asarray(p, dtype=float)
    scalar = p_arr.ndim == 0
    p_arr = np.atleast_1d(p_arr)
    out = np.empty_like(p_arr)

    q = p_arr - 0.5
    central = np.abs(q) <= 0.425
    if np.any(central):
        r = 0.180625 - q[central] ** 2
        out[central] = q[central] * _ratpoly(_A, _B, r)

    tail = ~central
    if np.any(tail):
        pt = p_arr[tail]
        smaller = np.minimum(pt, 1.0 - pt)
        with np.errstate(divide="ignore"):
            r = np.sqrt(-np.log(smaller))
        x = np.where(
            r <= 5.0,
            _ratpoly(_C, _D, np.minimum(r, 5.0) - 1.6),
            _ratpoly(_E, _F, np.maximum(r, 5.0) - 5.0),
        )
        x = np.where(np.isinf(r), np.inf, x)
        out[tail] = np.where(pt < 0.5, -x, x)

    return float(out[0]) if scalar else out


def norm_cdf(x):
    return _sc.ndtr(np.asarray(x, dtype=float))


def norm_log_cdf(x):
    return _sc.log_ndtr(np.asarray(x, dtype=float))


def norm_pdf(x):
    x = np.asarray(x, dtype=float)
    return np.exp(-0.5 * x * x) / np.sqrt(2.0 * np.pi)
