"""Exact piecewise closed form of ``c(h)`` under the min kernel, and its asymptotics.

Everything is written in the rescaled variables ``a = 1/h_s`` and
``b = h_c/h_s``; powers are formed as ``exp(k * log)`` so nothing overflows
for ``N`` up to ``1e20``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..model import Kernel, ModelParams, _check_weight

__all__ = ["AnalyticCurve", "analytic_curve", "c_asymptotic", "c_exact_min", "range_ii_constant", "regime_of"]


def regime_of(params: ModelParams, h):
    """Tag ``"I"``, ``"II"`` or ``"III"`` by comparing ``h`` with ``h_s^2/h_c`` and ``h_s``."""
    h = np.asarray(h, dtype=float)
    out = np.where(h <= params.h_flat_end, "I", np.where(h <= params.h_s, "II", "III"))
    return out if out.ndim else str(out)


def _ex(x):
    return np.exp(x)


def _range_i(t, la, lb):
    num = (2.0 * lb / ((3 - t) * (t - 2))
           + np.expm1((4 - 2 * t) * lb) / (t - 2) ** 2
           + (1.0 - 2.0 * _ex((3 - t) * (la + lb)) + _ex((6 - 2 * t) * la)) / (3 - t) ** 2)
    den = (_ex((2 - t) * la) - _ex((2 - t) * lb)) / (t - 2)
    return num / den**2


def _den_upper(t, la, lb, lah):
    # denominator bracket once the kink 1/(ah) lies inside [a, b]
    return (_ex((2 - t) * la) / (t - 2) - _ex((t - 2) * lah) / ((t - 1) * (t - 2))
            - _ex((1 - t) * lb - lah) / (t - 1))


def _range_ii(t, la, lb, lh):
    lah = la + lh
    labh = lah + lb
    one_m_inv_abh = -np.expm1(-labh)
    i1 = ((_ex((t - 2) * lah) - _ex((1 - t) * lb - lah)) / (t - 1)) ** 2
    i2 = 2 * (one_m_inv_abh / (t - 2)
              + _ex((2 * t - 4) * lah) / ((t - 1) * (t - 2)) * np.expm1((1 - t) * labh))
    i3 = 2 * (one_m_inv_abh / (3 - t)
              + _ex((t - 3) * lh) * np.expm1((2 - t) * labh) / ((3 - t) * (t - 2)))
    i4 = -2 * lah / (3 - t) + (_ex((3 - t) * (2 * la + lh)) - _ex((t - 3) * lh)) / (3 - t) ** 2
    i5 = -2 * lah / (t - 2) + np.expm1((2 * t - 4) * lah) / (t - 2) ** 2
    i6 = (1 - _ex((t - 3) * lh) + _ex((6 - 2 * t) * la) - _ex((3 - t) * (2 * la + lh))) / (3 - t) ** 2
    return (i1 + i2 + i3 + i4 + i5 + i6) / _den_upper(t, la, lb, lah) ** 2


def _range_iii(t, la, lb, lh):
    lah = la + lh
    labh = lah + lb
    inv2 = _ex(-2 * lah)
    bt = _ex((1 - t) * lb)
    i1 = inv2 * 2 * lah / (t - 1) + bt * (_ex((-t - 1) * lah) - _ex((t - 3) * lah)) / (t - 1) ** 2
    i2 = (inv2 + bt * bt * inv2) / (t - 1) ** 2 - bt * (_ex((t - 3) * lah) + _ex((-t - 1) * lah)) / (t - 1) ** 2
    i3 = -inv2 * 2 * lah / (t - 2) + (_ex((2 * t - 6) * lah) - inv2) / (t - 2) ** 2
    i4 = 2 * (-_ex(-labh) / (t - 2) + inv2 / (t - 1) + bt * _ex((t - 3) * lah) / ((t - 1) * (t - 2)))
    cross = _ex((1 - t) * lh + (4 - 2 * t) * la)
    i5 = 2 * (_ex((2 * t - 6) * lah) + cross - _ex((t - 3) * lh) - inv2) / ((3 - t) * (t - 2))
    i6 = 2 * ((_ex((2 - t) * (la + lb) - lh) - cross) / ((3 - t) * (t - 2)) - (_ex(-labh) - inv2) / (3 - t))
    i7 = (_ex((6 - 2 * t) * la) - 2 * _ex((t - 3) * lh) + _ex((2 * t - 6) * lah)) / (3 - t) ** 2
    return (i1 + i2 + i3 + i4 + i5 + i6 + i7) / _den_upper(t, la, lb, lah) ** 2


def c_exact_min(params: ModelParams, h):
    """Exact ``c(h)`` for the min kernel from the piecewise antiderivatives.

    Parameters
    ----------
    params : ModelParams
    h : float or array_like
        Hidden variable(s) in ``[1, h_c]``.

    Returns
    -------
    float or ndarray
    """
    h = _check_weight(params, h)
    t = params.tau
    la, lb = np.log(params.a), np.log(params.b)
    lh = np.log(h)
    # boundaries in the same log arithmetic as the terms: ah*b = 1 and ah = 1
    r1 = (la + lb + lh <= 0.0) | (h <= params.h_flat_end)
    r3 = la + lh > 0.0
    out = np.empty(np.shape(lh))
    with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
        out[...] = np.where(r1, _range_i(t, la, lb),
                            np.where(r3, _range_iii(t, la, lb, lh), _range_ii(t, la, lb, lh)))
    return out if out.ndim else float(out)


def range_ii_constant(tau: float) -> float:
    """``M`` in the Range II asymptotic, fixed by continuity at ``h_s``."""
    t = tau
    P = 1 / (t - 1) ** 2 + 1 / (3 - t) ** 2 + 2 / (t - 1) + 2 / (3 - t)
    return P * (t - 2) * (3 - t)


def c_asymptotic(params: ModelParams, h):
    """Leading-order ``c(h)`` with explicit prefactors in each range.

    Returns
    -------
    (value, regime)
        Floats/str for scalar input, arrays otherwise.
    """
    h = _check_weight(params, h)
    t = params.tau
    hs, hc = params.h_s, params.h_c
    base = hs ** (4 - 2 * t)
    v1 = (t - 2) / (3 - t) * base * np.log(hc**2 / hs**2)
    v2 = (t - 2) / (3 - t) * base * (np.log(hs**2 / h**2) + range_ii_constant(t))
    v3 = (hs / h) ** (6 - 2 * t) * base / (3 - t) ** 2
    reg = np.asarray(regime_of(params, h))
    val = np.where(reg == "I", v1, np.where(reg == "II", v2, v3))
    if val.ndim == 0:
        return float(val), str(reg)
    return val, reg


@dataclass(frozen=True)
class AnalyticCurve:
    """Samples ``(h, c, regime)`` of one analytic clustering curve."""

    h: np.ndarray
    c: np.ndarray
    regime: np.ndarray
    params: ModelParams
    kernel: Kernel

    def columns(self) -> dict:
        return {"h": self.h, "c": self.c, "regime": self.regime}


def analytic_curve(params: ModelParams, kernel: Kernel | str = Kernel.MIN, points: int = 200,
                   h=None, tol: float = 1e-8) -> AnalyticCurve:
    """Evaluate ``c(h)`` on ``points`` log-spaced values in ``[1, h_c]`` (or on ``h``)."""
    from .quadrature import c_quadrature

    kernel = Kernel.parse(kernel)
    h = np.geomspace(1.0, params.h_c, points) if h is None else np.asarray(h, dtype=float)
    if kernel is Kernel.MIN:
        c = np.asarray(c_exact_min(params, h), dtype=float).reshape(h.shape)
    else:
        c = np.array([c_quadrature(params, kernel, float(x), tol) for x in h.ravel()]).reshape(h.shape)
    return AnalyticCurve(h=h, c=c, regime=np.asarray(regime_of(params, h)), params=params, kernel=kernel)
