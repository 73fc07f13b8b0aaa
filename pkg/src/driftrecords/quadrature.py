"""Adaptive Gauss-Kronrod quadrature with vectorized integrands.

The integrand is called on a flat array of abscissae covering whole batches
of panels at once, which keeps the cost of product-form integrands (one cdf
evaluation per drift step per node) inside a handful of numpy calls.  Each
panel carries the classical |K15 - G7| error gauge, a deliberately
conservative bound; the worst panels are bisected in batches until the
summed bound meets the tolerance.
"""
import numpy as np

from .errors import QuadratureError

# 15-point Kronrod extension of 7-point Gauss on [-1, 1].
_XGK = np.array([
    0.991455371120813, 0.949107912342759, 0.864864423359769,
    0.741531185599394, 0.586087235467691, 0.405845151377397,
    0.207784955007898, 0.0,
])
_WGK = np.array([
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728,
])
_WG = np.array([
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469,
])

# Full symmetric node/weight tables, nodes ascending.
_NODES = np.concatenate((-_XGK[:-1], _XGK[::-1]))
_WK = np.concatenate((_WGK[:-1], _WGK[::-1]))
_WGFULL = np.zeros(15)
_WGFULL[1:14:2] = np.concatenate((_WG[:-1], _WG[::-1]))

_INITIAL_PANELS = 16
_SPLIT_BATCH = 8


def _panel_rule(fn, lo, hi):
    """Evaluate G7/K15 on panels [lo[i], hi[i]] with one integrand call.

    Returns (kronrod values, error gauges) per panel.
    """
    half = 0.5 * (hi - lo)
    mid = 0.5 * (hi + lo)
    x = mid[:, None] + half[:, None] * _NODES[None, :]
    fx = np.asarray(fn(x.ravel()), dtype=np.float64).reshape(x.shape)
    k15 = half * (fx @ _WK)
    g7 = half * (fx @ _WGFULL)
    return k15, np.abs(k15 - g7)


def _initial_edges(lo, hi, panels):
    if lo > 0.0 and hi / lo > 100.0:
        # Wide positive ranges (heavy-tail supports cut at far quantiles)
        # start from a geometric grid so the mass near lo is resolved.
        return np.geomspace(lo, hi, panels + 1)
    return np.linspace(lo, hi, panels + 1)


def integrate(fn, lo, hi, tol, max_intervals=4096):
    """Integrate ``fn`` over the finite interval [lo, hi].

    ``fn`` maps a 1-d array of points to integrand values.  Returns
    ``(value, error_bound)`` with ``error_bound <= tol``; raises
    QuadratureError carrying the best estimate when the panel budget is
    exhausted first.
    """
    if not (np.isfinite(lo) and np.isfinite(hi)):
        raise QuadratureError(f"integration limits must be finite, got [{lo}, {hi}]")
    if hi <= lo:
        return 0.0, 0.0

    edges = _initial_edges(float(lo), float(hi), _INITIAL_PANELS)
    los, his = edges[:-1], edges[1:]
    vals, errs = _panel_rule(fn, los, his)

    while float(errs.sum()) > tol:
        if los.shape[0] + _SPLIT_BATCH > max_intervals:
            raise QuadratureError(
                f"needed more than {max_intervals} panels for tolerance {tol:g}",
                best_estimate=float(vals.sum()),
                error_bound=float(errs.sum()),
            )
        k = min(_SPLIT_BATCH, los.shape[0])
        worst = np.argpartition(errs, -k)[-k:]
        mids = 0.5 * (los[worst] + his[worst])
        new_lo = np.concatenate((los[worst], mids))
        new_hi = np.concatenate((mids, his[worst]))
        new_vals, new_errs = _panel_rule(fn, new_lo, new_hi)
        keep = np.ones(los.shape[0], dtype=bool)
        keep[worst] = False
        los = np.concatenate((los[keep], new_lo))
        his = np.concatenate((his[keep], new_hi))
        vals = np.concatenate((vals[keep], new_vals))
        errs = np.concatenate((errs[keep], new_errs))

    return float(vals.sum()), float(errs.sum())
