"""Analytic clustering: exact and asymptotic ``c(h)``, slopes and Poisson mixing."""
from .closed_form import AnalyticCurve, analytic_curve, c_asymptotic, c_exact_min, range_ii_constant, regime_of
from .diagnostics import DominantTriangle, dominant_triangle
from .mixing import cbar_from_ch, degree_prob
from .quadrature import c_quadrature, c_zero_limit
from .slopes import (
    ExcessConstants,
    SlopeConstants,
    sigma_limit,
    sigma_n,
    sigma_zero_excess,
    slope_at_half,
    slope_at_hc,
    slope_constants,
    slope_limit,
    slope_numeric,
)

__all__ = [
    "AnalyticCurve",
    "DominantTriangle",
    "ExcessConstants",
    "SlopeConstants",
    "analytic_curve",
    "c_asymptotic",
    "c_exact_min",
    "c_quadrature",
    "c_zero_limit",
    "cbar_from_ch",
    "degree_prob",
    "dominant_triangle",
    "range_ii_constant",
    "regime_of",
    "sigma_limit",
    "sigma_n",
    "sigma_zero_excess",
    "slope_at_half",
    "slope_at_hc",
    "slope_constants",
    "slope_limit",
    "slope_numeric",
]
