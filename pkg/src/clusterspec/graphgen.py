"""Random graph generators: hidden-variable graphs and the erased configuration model."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numba as nb
import numpy as np
from scipy.integrate import quad

from .errors import ParameterDomainError, ResourceError
from .model import Kernel, ModelParams, _check_weight, make_rng, sample_discrete_power_law, sample_hidden
from .rng import stream_key, uniform

__all__ = [
    "GenReport",
    "Graph",
    "expected_degree",
    "generate_ecm",
    "generate_hidden_variable",
    "generate_hidden_variable_naive",
    "sample_power_law_degrees",
    "validate_graph",
]

DEFAULT_MEMORY_BUDGET = 2 * 1024**3  # bytes


@dataclass(frozen=True, eq=False)
class Graph:
    """Simple undirected graph in CSR form.

    ``indices[indptr[v]:indptr[v+1]]`` is the strictly increasing neighbor
    list of ``v``. Arrays are read-only once built.
    """

    indptr: np.ndarray
    indices: np.ndarray

    def __post_init__(self):
        self.indptr.setflags(write=False)
        self.indices.setflags(write=False)

    @property
    def n(self) -> int:
        return len(self.indptr) - 1

    @property
    def m(self) -> int:
        return len(self.indices) // 2

    def degrees(self) -> np.ndarray:
        return np.diff(self.indptr)

    def neighbors(self, v: int) -> np.ndarray:
        if not 0 <= v < self.n:
            raise IndexError(f"vertex {v} out of range [0, {self.n})")
        return self.indices[self.indptr[v]:self.indptr[v + 1]]

    def edges(self) -> tuple[np.ndarray, np.ndarray]:
        """Endpoint arrays ``(u, v)`` with ``u < v``, sorted lexicographically."""
        src = np.repeat(np.arange(self.n, dtype=np.int64), self.degrees())
        keep = src < self.indices
        return src[keep], self.indices[keep].astype(np.int64)

    @classmethod
    def from_edges(cls, n: int, u, v) -> "Graph":
        """Build from endpoint arrays, dropping self-loops and repeated pairs."""
        u = np.asarray(u, dtype=np.int64)
        v = np.asarray(v, dtype=np.int64)
        if u.shape != v.shape:
            raise ValueError("endpoint arrays differ in length")
        if len(u) and (min(u.min(), v.min()) < 0 or max(u.max(), v.max()) >= n):
            raise ValueError("endpoint outside [0, n)")
        keep = u != v
        lo = np.minimum(u[keep], v[keep])
        hi = np.maximum(u[keep], v[keep])
        key = np.unique(lo * np.int64(n) + hi)
        lo, hi = key // n, key % n
        src = np.concatenate([lo, hi])
        dst = np.concatenate([hi, lo])
        order = np.lexsort((dst, src))
        src, dst = src[order], dst[order]
        indptr = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(np.bincount(src, minlength=n), out=indptr[1:])
        return cls(indptr=indptr, indices=dst)


def validate_graph(graph: Graph) -> None:
    """Walk every adjacency list and raise ``ValueError`` on any broken invariant."""
    n = graph.n
    if graph.indptr[0] != 0 or np.any(np.diff(graph.indptr) < 0) or graph.indptr[-1] != len(graph.indices):
        raise ValueError("malformed indptr")
    if len(graph.indices) % 2:
        raise ValueError("odd number of adjacency entries")
    if len(graph.indices) and (graph.indices.min() < 0 or graph.indices.max() >= n):
        raise ValueError("neighbor id out of range")
    src = np.repeat(np.arange(n, dtype=np.int64), graph.degrees())
    if np.any(src == graph.indices):
        raise ValueError("self-loop present")
    # strictly increasing within each list: a non-increase may only occur at list starts
    steps = np.diff(graph.indices)
    same_row = src[1:] == src[:-1]
    if np.any(steps[same_row] <= 0):
        raise ValueError("neighbor list not strictly increasing")
    fwd = np.sort(src * n + graph.indices)
    rev = np.sort(graph.indices.astype(np.int64) * n + src)
    if not np.array_equal(fwd, rev):
        raise ValueError("adjacency not symmetric")


@dataclass(frozen=True)
class GenReport:
    seed: int
    model: str
    edges_created: int
    self_loops_erased: int = 0
    multi_edges_erased: int = 0


@nb.njit(cache=True, inline="always")
def _r(u, code):
    if code == 0:
        return u if u < 1.0 else 1.0
    if code == 1:
        return u / (1.0 + u)
    return -math.expm1(-u)


@nb.njit(cache=True)
def _grow(arr, size):
    out = np.empty(max(2 * len(arr), size), dtype=arr.dtype)
    out[:len(arr)] = arr
    return out


@nb.njit(cache=True)
def _skip_sample(w, ids, inv_scale, code, seed, capacity):
    """Edges of a hidden-variable graph; ``w`` sorted in decreasing order.

    For fixed ``i`` the probabilities ``p(w_i, w_j)`` do not increase in ``j``,
    so candidates are proposed by geometric jumps at the current upper bound
    ``p`` and accepted with ratio ``q / p``. One counter stream per vertex.
    """
    n = len(w)
    src = np.empty(capacity, dtype=np.int64)
    dst = np.empty(capacity, dtype=np.int64)
    m = 0
    for i in range(n - 1):
        key = stream_key(seed, ids[i])
        ctr = 0
        j = i + 1
        p = _r(w[i] * w[j] * inv_scale, code)
        while j < n and p > 0.0:
            if p < 1.0:
                u = uniform(key, ctr)
                ctr += 1
                jump = math.floor(math.log(u) / math.log1p(-p))
                if jump >= n:  # guard float overflow before casting
                    break
                j += int(jump)
            if j < n:
                q = _r(w[i] * w[j] * inv_scale, code)
                u = uniform(key, ctr)
                ctr += 1
                if u * p < q:
                    if m == len(src):
                        src = _grow(src, m + 1)
                        dst = _grow(dst, m + 1)
                    src[m] = ids[i]
                    dst[m] = ids[j]
                    m += 1
                p = q
                j += 1
    return src[:m], dst[:m]


@nb.njit(cache=True)
def _naive_sample(h, inv_scale, code, seed):
    n = len(h)
    src = np.empty(16, dtype=np.int64)
    dst = np.empty(16, dtype=np.int64)
    m = 0
    for i in range(n - 1):
        key = stream_key(seed, i)
        for j in range(i + 1, n):
            if uniform(key, j) < _r(h[i] * h[j] * inv_scale, code):
                if m == len(src):
                    src = _grow(src, m + 1)
                    dst = _grow(dst, m + 1)
                src[m] = i
                dst[m] = j
                m += 1
    return src[:m], dst[:m]


def _check_budget(params: ModelParams, memory_budget: int | None):
    budget = DEFAULT_MEMORY_BUDGET if memory_budget is None else memory_budget
    # ~N<h>/2 edges; 4 int64 arrays of that length during CSR assembly, plus weights
    estimate = 8 * (4 * params.scale + 4 * params.N)
    if estimate > budget:
        raise ResourceError(f"N={params.N} needs ~{estimate / 2**20:.0f} MiB, budget {budget / 2**20:.0f} MiB")


def generate_hidden_variable(params: ModelParams, kernel: Kernel | str, seed: int,
                             hidden: np.ndarray | None = None,
                             memory_budget: int | None = None):
    """Sample a hidden-variable graph in expected ``O(N + m)`` time.

    Parameters
    ----------
    params, kernel
        Model and connection function.
    seed
        Master seed; weights and edges are both derived from it.
    hidden
        Optional fixed weights (length ``N``) instead of fresh draws.
    memory_budget
        Bytes; a ``ResourceError`` is raised if the graph would not fit.

    Returns
    -------
    (Graph, GenReport, ndarray)
        The graph, its report and the weight of every vertex.
    """
    kernel = Kernel.parse(kernel)
    _check_budget(params, memory_budget)
    h = sample_hidden(params, seed, params.N) if hidden is None else np.asarray(hidden, dtype=float)
    if len(h) != params.N:
        raise ParameterDomainError("hidden must have length N")
    order = np.argsort(-h, kind="stable")
    capacity = int(min(params.scale, 0.5 * params.N * (params.N - 1)) * 0.6) + 16
    src, dst = _skip_sample(h[order], order.astype(np.int64), 1.0 / params.scale,
                            kernel.code, np.uint64(seed), capacity)
    graph = Graph.from_edges(params.N, src, dst)
    return graph, GenReport(seed=seed, model="hidden", edges_created=graph.m), h


def generate_hidden_variable_naive(params: ModelParams, kernel: Kernel | str, seed: int,
                                   hidden: np.ndarray | None = None):
    """Reference generator testing every pair; meant for ``N <= 3000``."""
    kernel = Kernel.parse(kernel)
    h = sample_hidden(params, seed, params.N) if hidden is None else np.asarray(hidden, dtype=float)
    src, dst = _naive_sample(h, 1.0 / params.scale, kernel.code, np.uint64(seed))
    graph = Graph.from_edges(params.N, src, dst)
    return graph, GenReport(seed=seed, model="hidden", edges_created=graph.m), h


def expected_degree(params: ModelParams, kernel: Kernel | str, h: float) -> float:
    """``N * int rho(h') p(h, h') dh'`` over ``[1, h_c]``."""
    kernel = Kernel.parse(kernel)
    h = float(_check_weight(params, h))
    lo, hi = math.log(1.0), math.log(params.h_c)

    def integrand(u):
        x = math.exp(u)
        return params.norm_C * x ** (1.0 - params.tau) * kernel.r(h * x / params.scale)

    kink = math.log(params.scale / h)
    points = [kink] if lo < kink < hi else None
    val, _ = quad(integrand, lo, hi, points=points, epsabs=0.0, epsrel=1e-11, limit=200)
    return params.N * val


def sample_power_law_degrees(params: ModelParams, seed: int) -> np.ndarray:
    """``N`` i.i.d. degrees with ``P(d) ∝ d^-tau`` on ``{1, ..., floor(h_c)}``.

    An odd total is repaired by adding one to a uniformly chosen entry.
    """
    rng = make_rng(seed)
    deg = sample_discrete_power_law(params.tau, 1, params.N, rng, xmax=int(math.floor(params.h_c)))
    if deg.sum() % 2:
        deg[rng.integers(params.N)] += 1
    return deg


def generate_ecm(degrees, seed: int):
    """Configuration model by uniform stub matching, then erase loops and multi-edges.

    Returns
    -------
    (Graph, GenReport)
        ``edges_created`` counts matched stub pairs before erasure.
    """
    deg = np.asarray(degrees, dtype=np.int64)
    if np.any(deg < 0):
        raise ParameterDomainError("degrees must be nonnegative")
    if deg.sum() % 2:
        raise ParameterDomainError("degree sum must be even")
    n = len(deg)
    stubs = make_rng(seed).permutation(np.repeat(np.arange(n, dtype=np.int64), deg))
    u, v = stubs[0::2], stubs[1::2]
    loops = int(np.count_nonzero(u == v))
    keep = u != v
    key = np.minimum(u[keep], v[keep]) * np.int64(max(n, 1)) + np.maximum(u[keep], v[keep])
    distinct = len(np.unique(key))
    graph = Graph.from_edges(n, u, v)
    report = GenReport(seed=seed, model="ecm", edges_created=len(u), self_loops_erased=loops,
                       multi_edges_erased=int(len(key) - distinct))
    return graph, report
