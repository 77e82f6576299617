"""Adaptive quadrature for ``c(h)`` with any kernel.

The ratio is evaluated in ``(x, y) = (h'/h_s, h''/h_s)`` on ``[a, b]^2``,
after the substitution ``x = e^u`` so each panel spans a few units instead of
many decades. For the min kernel the square is cut along the kink lines
``x = 1/(ah)``, ``y = 1/(ah)`` and ``xy = 1``.
"""
from __future__ import annotations

import math
import warnings
from functools import lru_cache

import numpy as np
from scipy.integrate import IntegrationWarning, quad

from ..errors import AccuracyError, ParameterDomainError
from ..model import Kernel, ModelParams, _check_weight

__all__ = ["c_quadrature", "c_zero_limit"]

_LIMIT = 200


def _check_tol(tol):
    if not (0.0 < tol <= 1e-3):
        raise ParameterDomainError("tol must lie in (0, 1e-3]")


class _Quad:
    """Wraps ``quad`` and records the worst error estimate seen."""

    def __init__(self, tol):
        # quad refuses epsrel below 50 eps; the target is still checked against tol
        self.rtol = max(tol / 10, 1.2e-14)
        self.target = tol
        self.failed = False

    def __call__(self, f, lo, hi, points):
        pts = sorted(p for p in points if lo < p < hi) or None
        with warnings.catch_warnings():
            warnings.simplefilter("error", IntegrationWarning)
            try:
                val, err = quad(f, lo, hi, points=pts, epsabs=0.0, epsrel=self.rtol, limit=_LIMIT)
            except IntegrationWarning:
                warnings.simplefilter("ignore", IntegrationWarning)
                val, err = quad(f, lo, hi, points=pts, epsabs=0.0, epsrel=self.rtol, limit=_LIMIT)
                self.failed = True
        if val != 0.0 and err > self.target * abs(val):
            self.failed = True
        return val


def _ratio(params, r_h, r_xy, kinks_x, kinks_inner, tol):
    """Numerator / denominator^2 for weights ``r_h(x)`` on the edges at ``v``."""
    t = params.tau
    lo, hi = math.log(params.a), math.log(params.b)
    q = _Quad(tol)

    def den_f(u):
        x = math.exp(u)
        return x ** (1.0 - t) * r_h(x)

    def inner(u):
        x = math.exp(u)
        g = x ** (1.0 - t) * r_h(x)
        if g == 0.0:
            return 0.0

        def f(v):
            y = math.exp(v)
            return y ** (1.0 - t) * r_h(y) * r_xy(x * y)

        return g * q(f, lo, hi, kinks_inner(u))

    den = q(den_f, lo, hi, kinks_x)
    num = q(inner, lo, hi, kinks_x + [-lo, -hi])
    c = num / den**2
    if q.failed:
        raise AccuracyError(f"quadrature did not reach rtol {tol:g}", estimate=c, error=float("nan"))
    return c


def c_quadrature(params: ModelParams, kernel: Kernel | str, h: float, tol: float = 1e-8) -> float:
    """``c(h)`` as a ratio of adaptive 1-D and nested 2-D quadratures.

    Parameters
    ----------
    params, kernel
    h : float
        Hidden variable in ``[1, h_c]``.
    tol : float
        Target relative error in ``(0, 1e-3]``.

    Raises
    ------
    AccuracyError
        If any panel fails to converge; ``.estimate`` holds the value reached.
    """
    kernel = Kernel.parse(kernel)
    _check_tol(tol)
    h = float(_check_weight(params, h))
    ah = params.a * h
    r = kernel.r
    if kernel is Kernel.MIN:
        ks = -math.log(ah)  # ln(1/(ah))
        return _ratio(params, lambda x: min(ah * x, 1.0), lambda z: min(z, 1.0),
                      [ks, -ks], lambda u: [ks, -u], tol)
    return _ratio(params, lambda x: r(ah * x), r, [], lambda u: [], tol)


@lru_cache(maxsize=256)
def _c_zero_cached(params: ModelParams, kernel: Kernel, tol: float) -> float:
    # r(ahx)/(ah) -> x as h -> 0, and the ah factors cancel in the ratio
    if kernel is Kernel.MIN:
        return _ratio(params, lambda x: x, lambda z: min(z, 1.0), [], lambda u: [-u], tol)
    return _ratio(params, lambda x: x, kernel.r, [], lambda u: [], tol)


def c_zero_limit(params: ModelParams, kernel: Kernel | str, tol: float = 1e-8) -> float:
    """``lim_{h -> 0} c(h)`` with the model's ``[1, h_c]`` support for ``h'``, ``h''``.

    For the min kernel this is the Range I constant.
    """
    _check_tol(tol)
    return _c_zero_cached(params, Kernel.parse(kernel), float(tol))


def kernel_curve(params: ModelParams, kernel: Kernel | str, points: int = 64, tol: float = 1e-8):
    """``(log h, log c)`` samples for interpolating a non-min kernel curve."""
    kernel = Kernel.parse(kernel)
    lh = np.linspace(0.0, math.log(params.h_c), points)
    lh[-1] = math.log(params.h_c)
    lc = np.array([math.log(c_quadrature(params, kernel, min(math.exp(v), params.h_c), tol)) for v in lh])
    return lh, lc
