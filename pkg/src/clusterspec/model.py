"""Hidden-variable model: parameters, connection kernels and weight sampling.

Vertices carry a weight ``h`` drawn from ``rho(h) = C h^-tau`` on ``[1, h_c]``
and each pair is joined independently with probability ``r(h h' / (N <h>))``.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np
from scipy.special import zeta

from .errors import ParameterDomainError

__all__ = [
    "Kernel",
    "ModelParams",
    "Regimes",
    "connection_prob",
    "derive_params",
    "kernel_eval",
    "make_rng",
    "regime_boundaries",
    "sample_discrete_power_law",
    "sample_hidden",
]


class Kernel(enum.Enum):
    """Connection function ``r(u)`` applied to ``u = h h' / h_s^2``."""

    MIN = "min"
    RATIONAL = "rational"
    EXPONENTIAL = "exp"

    @classmethod
    def parse(cls, value: "Kernel | str") -> "Kernel":
        if isinstance(value, Kernel):
            return value
        aliases = {"min": cls.MIN, "rational": cls.RATIONAL, "exp": cls.EXPONENTIAL,
                   "exponential": cls.EXPONENTIAL}
        try:
            return aliases[str(value).lower()]
        except KeyError:
            raise ParameterDomainError(f"unknown kernel {value!r}") from None

    @property
    def code(self) -> int:
        """Integer tag used inside compiled loops."""
        return {Kernel.MIN: 0, Kernel.RATIONAL: 1, Kernel.EXPONENTIAL: 2}[self]

    def r(self, u):
        """Evaluate ``r(u)`` without domain checks (vectorized)."""
        u = np.asarray(u, dtype=float)
        if self is Kernel.MIN:
            out = np.minimum(u, 1.0)
        elif self is Kernel.RATIONAL:
            out = u / (1.0 + u)
        else:
            out = -np.expm1(-u)
        return out if out.ndim else float(out)

    def f(self, u):
        """``f(u) = r(u) / u`` with the ``u -> 0`` limit equal to one."""
        u = np.asarray(u, dtype=float)
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            if self is Kernel.MIN:
                out = np.minimum(1.0, 1.0 / u)
            elif self is Kernel.RATIONAL:
                out = 1.0 / (1.0 + u)
            else:
                out = np.where(u > 0, -np.expm1(-u) / u, 1.0)
        out = np.where(u == 0, 1.0, out)
        return out if out.ndim else float(out)


@dataclass(frozen=True)
class ModelParams:
    """Size, exponent and every derived scale of the model.

    ``mean_h`` follows the closed form with support cut at ``N`` while the
    cutoffs use ``N * mean_h``; the two conventions are kept as published.
    """

    N: int
    tau: float
    mean_h: float
    h_s: float
    h_c: float
    a: float
    b: float
    norm_C: float

    @property
    def scale(self) -> float:
        """``N <h>``, the denominator of the connection argument."""
        return self.N * self.mean_h

    @property
    def log_scale(self) -> float:
        return math.log(self.N) + math.log(self.mean_h)

    @property
    def h_flat_end(self) -> float:
        """Upper end of the flat range, ``h_s^2 / h_c``."""
        return self.h_s / self.b

    def density(self, h):
        """Weight density ``rho(h)`` on ``[1, h_c]`` (zero outside)."""
        h = np.asarray(h, dtype=float)
        out = np.where((h >= 1.0) & (h <= self.h_c), self.norm_C * h ** (-self.tau), 0.0)
        return out if out.ndim else float(out)

    def ccdf(self, x):
        """``P(h > x)`` for the truncated weight law."""
        x = np.clip(np.asarray(x, dtype=float), 1.0, self.h_c)
        t1 = 1.0 - self.tau
        out = (x**t1 - self.h_c**t1) / (1.0 - self.h_c**t1)
        return out if out.ndim else float(out)


def _check_tau(tau: float) -> float:
    tau = float(tau)
    if not (2.0 < tau < 3.0):
        raise ParameterDomainError(f"tau must lie in (2, 3), got {tau}")
    return tau


def derive_params(N: int, tau: float) -> ModelParams:
    """Compute ``<h>``, both cutoffs, ``a``, ``b`` and the density normalization.

    Raises
    ------
    ParameterDomainError
        If ``N < 2`` or ``tau`` is outside ``(2, 3)``.
    """
    tau = _check_tau(tau)
    if int(N) != N or N < 2:
        raise ParameterDomainError(f"N must be an integer >= 2, got {N}")
    N = int(N)
    logN = math.log(N)
    # (1 - N^(2-tau)) / (1 - N^(1-tau)) via expm1 keeps accuracy for large N
    mean_h = (tau - 1.0) / (tau - 2.0) * (-math.expm1((2.0 - tau) * logN)) / (
        -math.expm1((1.0 - tau) * logN))
    log_scale = logN + math.log(mean_h)
    h_s = math.exp(0.5 * log_scale)
    h_c = math.exp(log_scale / (tau - 1.0))
    a = 1.0 / h_s
    b = h_c / h_s
    norm_C = (tau - 1.0) / (-math.expm1((1.0 - tau) * math.log(h_c)))
    return ModelParams(N=N, tau=tau, mean_h=mean_h, h_s=h_s, h_c=h_c, a=a, b=b, norm_C=norm_C)


def kernel_eval(kernel: Kernel | str, u):
    """Connection function ``r(u)`` for ``u >= 0``."""
    u_arr = np.asarray(u, dtype=float)
    if np.any(u_arr < 0) or np.any(np.isnan(u_arr)):
        raise ParameterDomainError("kernel argument must be nonnegative")
    return Kernel.parse(kernel).r(u)


def _check_weight(params: ModelParams, h, name="h"):
    h = np.asarray(h, dtype=float)
    # h_c is rounded once; accept values that sit on it to within a few ulps
    if np.any(h < 1.0) or np.any(h > params.h_c * (1 + 1e-12)) or np.any(np.isnan(h)):
        raise ParameterDomainError(f"{name} must lie in [1, h_c={params.h_c:.6g}]")
    return h


def connection_prob(params: ModelParams, kernel: Kernel | str, h1, h2):
    """Edge probability ``r(h1 h2 / (N <h>))`` for two weights in ``[1, h_c]``."""
    h1 = _check_weight(params, h1, "h1")
    h2 = _check_weight(params, h2, "h2")
    return Kernel.parse(kernel).r(h1 * h2 / params.scale)


def make_rng(seed: int, *stream: int) -> np.random.Generator:
    """Counter-based generator keyed by ``(seed, *stream)``.

    Draw ``i`` of a Philox stream is a pure function of key and counter, so
    results do not depend on how work is split across callers.
    """
    if seed < 0:
        raise ParameterDomainError("seed must be nonnegative")
    if not stream:
        return np.random.Generator(np.random.Philox(key=int(seed)))
    return np.random.Generator(np.random.Philox(np.random.SeedSequence([int(seed), *map(int, stream)])))


def sample_hidden(params: ModelParams, seed: int, count: int, truncate: bool = True) -> np.ndarray:
    """Inverse-CDF draws from ``C h^-tau`` on ``[1, h_c]``.

    With ``truncate=False`` the upper cutoff is dropped (pure Pareto on
    ``[1, inf)``), for sensitivity checks only.
    """
    if count < 1:
        raise ParameterDomainError("count must be >= 1")
    u = 1.0 - make_rng(seed).random(int(count))  # (0, 1]
    t1 = 1.0 - params.tau
    if truncate:
        tail = params.h_c**t1
        h = (tail + u * (1.0 - tail)) ** (1.0 / t1)
        return np.clip(h, 1.0, params.h_c)
    return u ** (1.0 / t1)


_TABLE_SIZE = 1 << 17


def sample_discrete_power_law(alpha: float, xmin: int, size: int, rng: np.random.Generator,
                              xmax: int | None = None) -> np.ndarray:
    """Draw integers with ``P(x) ∝ x^-alpha`` on ``{xmin, ..., xmax}``.

    Exact inverse CDF over a table of ``2^17`` support points; beyond the
    table (only when ``xmax`` is large or ``None``) the conditional tail uses
    the continuum law with a half-integer correction, whose relative error is
    below ``1e-9`` at that distance.
    """
    if alpha <= 1.0:
        raise ParameterDomainError("alpha must exceed 1")
    xmin = int(xmin)
    if xmin < 1:
        raise ParameterDomainError("xmin must be >= 1")
    if xmax is not None and xmax < xmin:
        raise ParameterDomainError("xmax must be >= xmin")
    end = xmin + _TABLE_SIZE - 1 if xmax is None else min(int(xmax), xmin + _TABLE_SIZE - 1)
    support = np.arange(xmin, end + 1, dtype=np.float64)
    weights = support ** (-alpha)
    if xmax is None:
        tail = float(zeta(alpha, end + 1))
    elif xmax > end:
        tail = float(zeta(alpha, end + 1) - zeta(alpha, xmax + 1))
    else:
        tail = 0.0
    total = weights.sum() + tail
    cdf = np.cumsum(weights) / total
    u = rng.random(int(size))
    idx = np.searchsorted(cdf, u, side="right")
    out = np.empty(int(size), dtype=np.int64)
    in_table = idx < len(support)
    out[in_table] = xmin + idx[in_table]
    n_tail = int((~in_table).sum())
    if n_tail:
        # P(X >= x | X > end) ~ ((x - 1/2) / (end + 1/2))^(1 - alpha)
        v = 1.0 - rng.random(n_tail)
        lo = end + 0.5
        if xmax is None:
            x = np.floor(lo * v ** (1.0 / (1.0 - alpha)) + 0.5)
        else:
            hi = xmax + 0.5
            s = lo ** (1.0 - alpha) - (1.0 - v) * (lo ** (1.0 - alpha) - hi ** (1.0 - alpha))
            x = np.floor(s ** (1.0 / (1.0 - alpha)) + 0.5)
            x = np.minimum(x, xmax)
        out[~in_table] = np.maximum(x, end + 1).astype(np.int64)
    return out


@dataclass(frozen=True)
class Regimes:
    h_flat_end: float
    h_struct: float
    alpha: float


def regime_boundaries(params: ModelParams) -> Regimes:
    """Boundaries of the flat, logarithmic and power-law ranges.

    ``alpha = 2 (3 - tau)`` is the large-``N`` decay exponent of the last range.
    """
    return Regimes(h_flat_end=params.h_s**2 / params.h_c, h_struct=params.h_s,
                   alpha=2.0 * (3.0 - params.tau))
