"""Empirical local clustering, the clustering spectrum and degree CCDFs."""
from __future__ import annotations

from dataclasses import dataclass

import numba as nb
import numpy as np

from .errors import ParameterDomainError
from .graphgen import Graph

__all__ = [
    "CcdfTable",
    "SpectrumAccumulator",
    "SpectrumTable",
    "bin_index",
    "clustering_spectrum",
    "degree_ccdf",
    "degree_ccdf_from_degrees",
    "local_clustering",
    "log_bin_spectrum",
    "triangles_per_vertex",
]


@dataclass(frozen=True)
class SpectrumTable:
    """Rows ``(k, n_k, cbar)`` sorted by ``k``; ``k`` is float after binning."""

    k: np.ndarray
    n_k: np.ndarray
    cbar: np.ndarray
    total_triangles: int = 0

    def __len__(self):
        return len(self.k)

    def columns(self) -> dict:
        return {"k": self.k, "n_k": self.n_k, "cbar": self.cbar}


@nb.njit(cache=True)
def _forward_lists(indptr, indices, deg):
    n = len(indptr) - 1
    fptr = np.zeros(n + 1, dtype=np.int64)
    for u in range(n):
        cnt = 0
        for e in range(indptr[u], indptr[u + 1]):
            v = indices[e]
            if deg[v] > deg[u] or (deg[v] == deg[u] and v > u):
                cnt += 1
        fptr[u + 1] = fptr[u] + cnt
    fwd = np.empty(fptr[n], dtype=np.int64)
    for u in range(n):
        pos = fptr[u]
        for e in range(indptr[u], indptr[u + 1]):
            v = indices[e]
            if deg[v] > deg[u] or (deg[v] == deg[u] and v > u):
                fwd[pos] = v  # inherits increasing id order
                pos += 1
    return fptr, fwd


@nb.njit(cache=True)
def _count_triangles(indptr, indices, deg):
    # orient u -> v by (degree, id) rank and merge-intersect forward lists
    fptr, fwd = _forward_lists(indptr, indices, deg)
    n = len(indptr) - 1
    tri = np.zeros(n, dtype=np.int64)
    for u in range(n):
        for e in range(fptr[u], fptr[u + 1]):
            v = fwd[e]
            i, j = fptr[u], fptr[v]
            iend, jend = fptr[u + 1], fptr[v + 1]
            while i < iend and j < jend:
                a, b = fwd[i], fwd[j]
                if a < b:
                    i += 1
                elif b < a:
                    j += 1
                else:
                    tri[u] += 1
                    tri[v] += 1
                    tri[a] += 1
                    i += 1
                    j += 1
    return tri


def triangles_per_vertex(graph: Graph) -> np.ndarray:
    """Number of triangles through each vertex (edges among its neighbors)."""
    if graph.n == 0:
        return np.zeros(0, dtype=np.int64)
    return _count_triangles(graph.indptr, graph.indices, graph.degrees())


def local_clustering(graph: Graph, v: int) -> float:
    """Fraction of neighbor pairs of ``v`` that are adjacent; 0 below degree 2."""
    nbrs = graph.neighbors(v)
    d = len(nbrs)
    if d < 2:
        return 0.0
    links = sum(len(np.intersect1d(graph.neighbors(int(w)), nbrs, assume_unique=True)) for w in nbrs) // 2
    return links / (d * (d - 1) / 2)


def _local_from_triangles(deg, tri):
    pairs = deg * (deg - 1) / 2.0
    with np.errstate(divide="ignore", invalid="ignore"):
        return np.where(deg >= 2, tri / pairs, 0.0)


def clustering_spectrum(graph: Graph) -> SpectrumTable:
    """Mean local clustering per exact degree ``k >= 2``."""
    acc = SpectrumAccumulator()
    acc.add(graph)
    return acc.table()


class SpectrumAccumulator:
    """Streaming pooled mean of local clustering per degree across graphs."""

    def __init__(self):
        self._sum = np.zeros(0)
        self._count = np.zeros(0, dtype=np.int64)
        self.triangles = 0
        self.graphs = 0

    def add(self, graph: Graph) -> None:
        deg = graph.degrees()
        tri = triangles_per_vertex(graph)
        cl = _local_from_triangles(deg, tri)
        size = int(deg.max()) + 1 if len(deg) else 0
        if size > len(self._sum):
            self._sum = np.pad(self._sum, (0, size - len(self._sum)))
            self._count = np.pad(self._count, (0, size - len(self._count)))
        self._sum[:size] += np.bincount(deg, weights=cl, minlength=size)
        self._count[:size] += np.bincount(deg, minlength=size)
        self.triangles += int(tri.sum()) // 3
        self.graphs += 1

    def table(self) -> SpectrumTable:
        k = np.flatnonzero(self._count)
        k = k[k >= 2]
        return SpectrumTable(k=k.astype(np.int64), n_k=self._count[k].copy(),
                             cbar=self._sum[k] / self._count[k], total_triangles=self.triangles)


def log_bin_spectrum(table: SpectrumTable, factor: float, k0: float | None = None) -> SpectrumTable:
    """Merge rows into multiplicative bins ``[k0 f^i, k0 f^(i+1))``.

    Each bin reports the ``n_k``-weighted mean clustering and the
    ``n_k``-weighted geometric mean degree as its label. ``k0`` defaults to
    the smallest degree present; pass it explicitly to align two tables.
    """
    if not factor > 1.0:
        raise ParameterDomainError("bin factor must exceed 1")
    if len(table) == 0:
        return SpectrumTable(k=np.zeros(0), n_k=np.zeros(0, dtype=np.int64), cbar=np.zeros(0),
                             total_triangles=table.total_triangles)
    k = np.asarray(table.k, dtype=float)
    n_k = np.asarray(table.n_k)
    k0 = k[0] if k0 is None else float(k0)
    if k0 <= 0 or k0 > k[0]:
        raise ParameterDomainError("k0 must be positive and not above the smallest degree")
    idx = bin_index(k, factor, k0)
    _, inv = np.unique(idx, return_inverse=True)
    counts = np.bincount(inv, weights=n_k)
    cbar = np.bincount(inv, weights=n_k * table.cbar) / counts
    label = np.exp(np.bincount(inv, weights=n_k * np.log(k)) / counts)
    return SpectrumTable(k=label, n_k=counts.astype(np.int64), cbar=cbar,
                         total_triangles=table.total_triangles)


def bin_index(k, factor: float, k0: float) -> np.ndarray:
    """Index ``i`` of the bin ``[k0 f^i, k0 f^(i+1))`` holding each ``k``."""
    return np.floor(np.log(np.asarray(k, dtype=float) / k0) / np.log(factor) + 1e-12).astype(np.int64)


@dataclass(frozen=True)
class CcdfTable:
    """``P(degree > x)`` at every observed degree ``x``."""

    x: np.ndarray
    p: np.ndarray

    def at(self, x):
        """Evaluate the step function at arbitrary points."""
        x = np.asarray(x, dtype=float)
        idx = np.searchsorted(self.x, x, side="right") - 1
        out = np.where(idx >= 0, self.p[np.maximum(idx, 0)], 1.0)
        return out if out.ndim else float(out)

    def columns(self) -> dict:
        return {"x": self.x, "ccdf": self.p}


def degree_ccdf_from_degrees(degrees) -> CcdfTable:
    deg = np.asarray(degrees)
    if len(deg) == 0:
        return CcdfTable(x=np.zeros(0, dtype=np.int64), p=np.zeros(0))
    x, counts = np.unique(deg, return_counts=True)
    p = 1.0 - np.cumsum(counts) / len(deg)
    p[-1] = 0.0
    return CcdfTable(x=x, p=np.clip(p, 0.0, 1.0))


def degree_ccdf(graph: Graph) -> CcdfTable:
    """Exact empirical complementary CDF of the degree sequence."""
    return degree_ccdf_from_degrees(graph.degrees())
