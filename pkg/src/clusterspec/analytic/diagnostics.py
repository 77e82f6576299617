"""Most likely triangle through a vertex of given hidden variable."""
from __future__ import annotations

from dataclasses import dataclass

from ..model import ModelParams, _check_weight
from .closed_form import regime_of

__all__ = ["DominantTriangle", "dominant_triangle"]


@dataclass(frozen=True)
class DominantTriangle:
    """Weights ``h'``, ``h''`` of the neighbors in the dominant triangle.

    ``saturated_edges`` lists the edges whose probability is close to one,
    as vertex labels ``v`` (the focal vertex), ``v'`` and ``v''``.
    ``cap`` is the bound ``N<h>/h`` on each neighbor weight and
    ``cap_binding`` tells whether it falls below ``h_c``.
    """

    h_prime: float
    h_dprime: float
    regime: str
    saturated_edges: tuple
    cap: float
    cap_binding: bool


def dominant_triangle(params: ModelParams, h: float) -> DominantTriangle:
    """Trade-off between ``h' h'' <= N<h>`` and ``h', h'' <= N<h>/h``.

    Below ``h_s`` the product bound binds first and the symmetric choice
    ``h' = h'' = h_s`` is returned, with the far edge saturated. Above
    ``h_s`` both neighbors sit at ``N<h>/h`` and the two edges at ``v``
    saturate.
    """
    h = float(_check_weight(params, h))
    cap = params.scale / h
    if h <= params.h_s:
        hp = params.h_s
        sat = (("v'", "v''"),)
    else:
        hp = cap
        sat = (("v", "v'"), ("v", "v''"))
    return DominantTriangle(h_prime=hp, h_dprime=hp, regime=regime_of(params, h), saturated_edges=sat,
                            cap=cap, cap_binding=cap < params.h_c)
