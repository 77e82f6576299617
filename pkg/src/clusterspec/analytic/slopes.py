"""Rescaled log-clustering ``sigma_N(t)``, its exact slopes and finite-size excess."""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from ..errors import ParameterDomainError, PrecisionWarning
from ..model import Kernel, ModelParams, _check_tau, derive_params
from .closed_form import c_exact_min, range_ii_constant
from .quadrature import c_quadrature, c_zero_limit

__all__ = [
    "ExcessConstants",
    "SlopeConstants",
    "sigma_limit",
    "sigma_n",
    "sigma_zero_excess",
    "slope_at_half",
    "slope_at_hc",
    "slope_constants",
    "slope_limit",
    "slope_numeric",
]


@dataclass(frozen=True)
class SlopeConstants:
    """Constants of the two exact slope formulas plus the Range II ``P``."""

    A: float
    C: float
    D: float
    E: float
    G: float
    H: float
    I: float  # noqa: E741
    J: float
    P: float


def slope_constants(params: ModelParams) -> SlopeConstants:
    t = params.tau
    la, lb = math.log(params.a), math.log(params.b)
    A = math.exp(-2 * lb) * (-2 * lb / ((t - 1) * (t - 2)) + math.expm1(2 * (1 - t) * lb) / (t - 1) ** 2
                             + math.expm1(2 * (t - 2) * lb) / (t - 2) ** 2)
    C = ((math.exp((t - 3) * lb) - math.exp((3 - t) * la)) / (3 - t)) ** 2
    D = math.exp(-lb) * (math.exp((t - 1) * lb) - math.exp((1 - t) * lb)) / (t - 1)
    E = (math.exp((2 - t) * la) - math.exp((t - 2) * lb)) / (t - 2)
    bt = -math.expm1((1 - t) * lb)  # 1 - b^(1-tau)
    G = (bt / (t - 1)) ** 2
    I = bt / (t - 1)  # noqa: E741
    J = math.expm1((t - 2) * (t - 1) / (3 - t) * lb) / (t - 2)
    H = ((1 - math.exp(-lb) - math.exp((1 - t) * lb) * -math.expm1((2 - t) * lb)) / ((t - 2) * (3 - t))
         - bt / ((t - 1) * (t - 2)))
    P = range_ii_constant(t) / ((t - 2) * (3 - t))
    return SlopeConstants(A=A, C=C, D=D, E=E, G=G, H=H, I=I, J=J, P=P)


def slope_at_hc(params: ModelParams) -> float:
    """Exact ``sigma_N'(1/(tau-1))`` for the min kernel."""
    k = slope_constants(params)
    t = params.tau
    return -2.0 * ((k.A + (3 - t) / (t - 2) * k.C) / (k.A + (4 - t) / (t - 2) * k.C) - k.D / (k.E + k.D))


def slope_at_half(params: ModelParams) -> float:
    """Exact ``sigma_N'(1/2)`` for the min kernel."""
    k = slope_constants(params)
    t = params.tau
    return -2.0 * ((k.G + k.H) / ((1 + ((t - 1) / (3 - t)) ** 2) * k.G + 2 * k.H) - k.I / (k.I + k.J))


def slope_limit(tau: float, point: str = "at_hc") -> float:
    """Large-``N`` limit of the slope at ``t = 1/(tau-1)`` or ``t = 1/2``."""
    t = _check_tau(tau)
    if point == "at_hc":
        return -2.0 * (3 - t)
    if point == "at_half":
        return -1.0 + 2 * (t - 2) / (3 - (t - 2) ** 2)
    raise ParameterDomainError(f"point must be 'at_hc' or 'at_half', got {point!r}")


def _t_max(tau):
    return 1.0 / (tau - 1.0)


def _check_t(params, t):
    t_arr = np.asarray(t, dtype=float)
    if np.any(t_arr < -1e-12) or np.any(t_arr > _t_max(params.tau) + 1e-12) or np.any(np.isnan(t_arr)):
        raise ParameterDomainError(f"t must lie in [0, 1/(tau-1)] = [0, {_t_max(params.tau):.6g}]")
    return np.clip(t_arr, 0.0, _t_max(params.tau))


def _c_of(params, kernel, h, tol):
    if kernel is Kernel.MIN:
        return c_exact_min(params, h)
    return np.array([c_quadrature(params, kernel, float(x), tol) for x in np.ravel(h)]).reshape(np.shape(h))


def sigma_n(params: ModelParams, kernel: Kernel | str, t, ref: str = "at_hc", tol: float = 1e-10):
    """``ln(c((N<h>)^t) / c(h_ref)) / ln(N<h>)``.

    Parameters
    ----------
    t : float or array_like
        Exponents in ``[0, 1/(tau-1)]``.
    ref : {"at_hc", "at_zero"}
        Reference ``h_ref = h_c`` or the ``h -> 0`` value (Range I constant for
        the min kernel).
    tol : float
        Quadrature tolerance, used for non-min kernels only.
    """
    kernel = Kernel.parse(kernel)
    t = _check_t(params, t)
    h = np.minimum(np.exp(t * params.log_scale), params.h_c)
    h = np.maximum(h, 1.0)
    if ref == "at_hc":
        c_ref = _c_of(params, kernel, params.h_c, tol)
    elif ref == "at_zero":
        c_ref = c_exact_min(params, 1.0) if kernel is Kernel.MIN else c_zero_limit(params, kernel, tol)
    else:
        raise ParameterDomainError(f"ref must be 'at_hc' or 'at_zero', got {ref!r}")
    out = np.log(_c_of(params, kernel, h, tol) / c_ref) / params.log_scale
    return float(out) if np.ndim(out) == 0 else out


def sigma_limit(tau: float, t):
    """``N -> inf`` limit: 0 up to ``t = 1/2``, then ``(3 - tau)(1 - 2t)``."""
    tau = _check_tau(tau)
    t_arr = np.asarray(t, dtype=float)
    if np.any(t_arr < 0) or np.any(t_arr > _t_max(tau) + 1e-12):
        raise ParameterDomainError("t must lie in [0, 1/(tau-1)]")
    out = np.where(t_arr <= 0.5, 0.0, (3 - tau) * (1 - 2 * t_arr))
    return float(out) if out.ndim == 0 else out


def slope_numeric(params: ModelParams, kernel: Kernel | str, t: float, dt: float = 1e-6,
                  ref: str = "at_hc", tol: float = 1e-10) -> float:
    """Finite difference of ``sigma_n`` at ``t``.

    Central where ``t +- dt`` stays inside ``[0, 1/(tau-1)]``, one-sided at
    the ends. Emits ``PrecisionWarning`` when rounding in ``c`` could move
    the result by more than ``1e-4``.
    """
    kernel = Kernel.parse(kernel)
    if not dt > 0:
        raise ParameterDomainError("dt must be positive")
    t = float(_check_t(params, t))
    hi = _t_max(params.tau)
    if dt > hi / 2:
        raise ParameterDomainError("dt too large for the t range")
    rel = 1e-14 if kernel is Kernel.MIN else tol
    noise = rel / (params.log_scale * dt)
    if noise > 1e-4:
        warnings.warn(f"dt={dt:g} too small: rounding error up to ~{noise:.1e}", PrecisionWarning, stacklevel=2)
    if t - dt >= 0 and t + dt <= hi:
        lo_t, hi_t = t - dt, t + dt
    elif t - dt < 0:
        lo_t, hi_t = t, t + dt
    else:
        lo_t, hi_t = t - dt, t
    s = sigma_n(params, kernel, np.array([lo_t, hi_t]), ref=ref, tol=tol)
    return float((s[1] - s[0]) / (hi_t - lo_t))


@dataclass(frozen=True)
class ExcessConstants:
    """Finite-size approximation ``sigma_N(0) ~ gamma + ln(beta y)/y``."""

    gamma: float
    excess_beta: float
    y: float

    @property
    def sigma0(self) -> float:
        return self.gamma + math.log(self.excess_beta * self.y) / self.y

    @property
    def y_peak(self) -> float:
        """``y`` at which the excess over ``gamma`` is largest."""
        return math.e / self.excess_beta

    @property
    def max_excess(self) -> float:
        return self.excess_beta / math.e

    @property
    def n_scale_peak(self) -> float:
        """``N<h>`` at the peak, ``exp(e / beta)``."""
        return math.exp(self.y_peak)


def sigma_zero_excess(N: int, tau: float) -> ExcessConstants:
    params = derive_params(N, tau)
    gamma = (3 - params.tau) ** 2 / (params.tau - 1)
    return ExcessConstants(gamma=gamma, excess_beta=(params.tau - 2) * gamma, y=params.log_scale)
