"""Poisson mixing of ``c(h)`` into the degree-resolved ``cbar(k)``.

For fixed ``k`` the Poisson mass ``e^-h h^k / k!`` is, as a function of
``h``, the Gamma(k+1) density, so the integrals over ``h`` are restricted to
the Gamma quantile window ``[q(1e-15), q(1 - 1e-15)]`` and evaluated by
Gauss-Legendre in ``log h`` with panels split at the kinks of ``c``.
"""
from __future__ import annotations

import math
from functools import lru_cache

import numpy as np
from scipy.interpolate import CubicSpline
from scipy.special import gammaln
from scipy.stats import gamma as gamma_dist

from ..errors import ParameterDomainError
from ..model import Kernel, ModelParams
from .closed_form import c_exact_min
from .quadrature import kernel_curve

__all__ = ["cbar_from_ch", "degree_prob"]

_TAIL = 1e-15
_NODES, _WEIGHTS = np.polynomial.legendre.leggauss(64)


def _nodes(params: ModelParams, k: int):
    """Log-h nodes and weights (including the Jacobian ``h``) for degree ``k``."""
    lo = max(1.0, float(gamma_dist.ppf(_TAIL, k + 1)))
    hi = min(params.h_c, float(gamma_dist.isf(_TAIL, k + 1)))
    if not lo < hi:
        return np.zeros(0), np.zeros(0)
    cuts = [math.log(lo)] + [math.log(x) for x in (params.h_flat_end, params.h_s) if lo < x < hi]
    cuts.append(math.log(hi))
    us, ws = [], []
    for u0, u1 in zip(cuts[:-1], cuts[1:]):
        # keep each panel below ~2 units of log h so the integrand stays polynomial-like
        m = max(1, int(math.ceil((u1 - u0) / 2.0)))
        edges = np.linspace(u0, u1, m + 1)
        for e0, e1 in zip(edges[:-1], edges[1:]):
            us.append(0.5 * (e1 - e0) * _NODES + 0.5 * (e1 + e0))
            ws.append(0.5 * (e1 - e0) * _WEIGHTS)
    u = np.concatenate(us)
    h = np.exp(u)
    return h, np.concatenate(ws) * h


def _weighted_poisson(params: ModelParams, k: int, h):
    # rho(h) g(k|h) in log space
    return np.exp(math.log(params.norm_C) - params.tau * np.log(h) + k * np.log(h) - h - gammaln(k + 1))


def _as_int_array(k):
    k_arr = np.asarray(k)
    if np.any(k_arr < 0) or np.any(np.asarray(k_arr, dtype=float) != np.floor(k_arr)):
        raise ParameterDomainError("k must be a nonnegative integer")
    return k_arr.astype(np.int64)


def degree_prob(params: ModelParams, k):
    """``P(k) = int rho(h) e^-h h^k / k! dh`` over ``[1, h_c]``."""
    k_arr = _as_int_array(k)
    out = np.empty(k_arr.shape)
    for idx, kk in np.ndenumerate(k_arr):
        h, w = _nodes(params, int(kk))
        out[idx] = float(np.dot(w, _weighted_poisson(params, int(kk), h))) if len(h) else 0.0
    return float(out) if out.ndim == 0 else out


@lru_cache(maxsize=32)
def _spline(params: ModelParams, kernel: Kernel, tol: float):
    lh, lc = kernel_curve(params, kernel, points=96, tol=tol)
    return CubicSpline(lh, lc)


def _c_function(params, kernel, tol):
    if kernel is Kernel.MIN:
        return lambda h: c_exact_min(params, np.minimum(h, params.h_c))
    spline = _spline(params, kernel, float(tol))
    return lambda h: np.exp(spline(np.log(h)))


def cbar_from_ch(params: ModelParams, kernel: Kernel | str, k, tol: float = 1e-8):
    """Mean clustering of degree-``k`` vertices implied by ``c(h)``.

    ``k < 2`` gives 0 by convention. Non-min kernels interpolate a cubic
    spline of ``log c`` against ``log h`` built from ``c_quadrature``.
    """
    kernel = Kernel.parse(kernel)
    k_arr = _as_int_array(k)
    c_of = _c_function(params, kernel, tol)
    out = np.zeros(k_arr.shape)
    for idx, kk in np.ndenumerate(k_arr):
        if kk < 2:
            continue
        h, w = _nodes(params, int(kk))
        if not len(h):
            continue
        g = w * _weighted_poisson(params, int(kk), h)
        total = g.sum()
        out[idx] = float(np.dot(g, c_of(h)) / total) if total > 0 else float(c_of(np.array([params.h_c]))[0])
    return float(out) if out.ndim == 0 else out
