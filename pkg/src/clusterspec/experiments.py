"""Realization-averaged spectra and the model comparison protocols."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .analytic import cbar_from_ch
from .errors import ParameterDomainError
from .graphgen import generate_ecm, generate_hidden_variable, sample_power_law_degrees
from .model import Kernel, ModelParams, make_rng, sample_hidden
from .spectrum import SpectrumAccumulator, SpectrumTable, bin_index, log_bin_spectrum

__all__ = [
    "AveragedSpectrum",
    "ComparisonResult",
    "average_spectrum",
    "compare_hidden_ecm",
    "ecm_degrees",
    "simulation_vs_analytic",
]

ECM_DEGREE_LAWS = ("powerlaw", "poisson")


@dataclass(frozen=True)
class AveragedSpectrum:
    table: SpectrumTable
    realizations: int
    mean_edges: float
    erased_fraction: float  # ECM only; 0 for hidden-variable graphs


def ecm_degrees(params: ModelParams, seed: int, law: str = "powerlaw") -> np.ndarray:
    """Degree sequence for the ECM.

    ``powerlaw`` draws i.i.d. from the discrete law on ``{1, ..., floor(h_c)}``;
    ``poisson`` draws ``Poisson(h)`` for fresh hidden weights, which matches the
    degree law of the hidden-variable graph itself. Odd totals get one extra
    stub on a random vertex.
    """
    if law == "powerlaw":
        return sample_power_law_degrees(params, seed)
    if law == "poisson":
        rng = make_rng(seed, 1)
        deg = rng.poisson(sample_hidden(params, seed, params.N))
        if deg.sum() % 2:
            deg[rng.integers(params.N)] += 1
        return deg
    raise ParameterDomainError(f"degree law must be one of {ECM_DEGREE_LAWS}")


def average_spectrum(params: ModelParams, model: str, kernel: Kernel | str, seeds,
                     degree_law: str = "powerlaw", progress=None) -> AveragedSpectrum:
    """Pooled per-degree mean clustering over one graph per seed."""
    kernel = Kernel.parse(kernel)
    acc = SpectrumAccumulator()
    edges = erased = created = 0
    seeds = list(seeds)
    for i, s in enumerate(seeds):
        if model == "hidden":
            g, _, _ = generate_hidden_variable(params, kernel, s)
        elif model == "ecm":
            g, rep = generate_ecm(ecm_degrees(params, s, degree_law), s)
            erased += rep.self_loops_erased + rep.multi_edges_erased
            created += rep.edges_created
        else:
            raise ParameterDomainError(f"model must be 'hidden' or 'ecm', got {model!r}")
        acc.add(g)
        edges += g.m
        if progress is not None:
            progress(i + 1, len(seeds))
    return AveragedSpectrum(table=acc.table(), realizations=len(seeds), mean_edges=edges / max(len(seeds), 1),
                            erased_fraction=erased / created if created else 0.0)


def simulation_vs_analytic(params: ModelParams, kernel: Kernel | str, seeds, min_count: int = 50,
                           k_max: float | None = None, tol: float = 1e-8):
    """Averaged empirical ``cbar(k)`` next to the Poisson-mixed prediction.

    Returns a dict of columns ``k, n_k, cbar, cbar_analytic, rel_error``
    restricted to ``n_k >= min_count`` and ``2 <= k <= k_max`` (default ``h_s``).
    """
    avg = average_spectrum(params, "hidden", kernel, seeds)
    t = avg.table
    k_max = params.h_s if k_max is None else k_max
    keep = (t.n_k >= min_count) & (t.k >= 2) & (t.k <= k_max)
    k = t.k[keep]
    pred = np.asarray(cbar_from_ch(params, kernel, k, tol=tol), dtype=float)
    return {"k": k, "n_k": t.n_k[keep], "cbar": t.cbar[keep], "cbar_analytic": pred,
            "rel_error": t.cbar[keep] / pred - 1.0}


@dataclass(frozen=True)
class ComparisonResult:
    """Log-binned spectra of both models on bins they share (``n >= min_count`` in each)."""

    hidden: SpectrumTable
    ecm: SpectrumTable
    k: np.ndarray  # hidden-model bin labels of the shared bins
    cbar_hidden: np.ndarray
    cbar_ecm: np.ndarray
    n_hidden: np.ndarray
    n_ecm: np.ndarray
    erased_fraction: float

    @property
    def rel_diff(self) -> np.ndarray:
        return self.cbar_ecm / self.cbar_hidden - 1.0

    def columns(self) -> dict:
        return {"k": self.k, "cbar_hidden": self.cbar_hidden, "n_hidden": self.n_hidden,
                "cbar_ecm": self.cbar_ecm, "n_ecm": self.n_ecm, "rel_diff": self.rel_diff}


def compare_hidden_ecm(params: ModelParams, seeds, bin_factor: float = 1.5, min_count: int = 50,
                       degree_law: str = "powerlaw", kernel: Kernel | str = Kernel.EXPONENTIAL):
    """Averaged hidden-variable versus ECM spectra on common logarithmic bins."""
    seeds = list(seeds)
    hv = average_spectrum(params, "hidden", kernel, seeds).table
    ecm_avg = average_spectrum(params, "ecm", kernel, seeds, degree_law=degree_law)
    ecm = ecm_avg.table
    bh, be = log_bin_spectrum(hv, bin_factor, k0=2), log_bin_spectrum(ecm, bin_factor, k0=2)
    _, ph, pe = np.intersect1d(bin_index(bh.k, bin_factor, 2), bin_index(be.k, bin_factor, 2),
                               return_indices=True)
    ok = (bh.n_k[ph] >= min_count) & (be.n_k[pe] >= min_count)
    ph, pe = ph[ok], pe[ok]
    return ComparisonResult(hidden=bh, ecm=be, k=bh.k[ph], cbar_hidden=bh.cbar[ph], cbar_ecm=be.cbar[pe],
                            n_hidden=bh.n_k[ph], n_ecm=be.n_k[pe], erased_fraction=ecm_avg.erased_fraction)

