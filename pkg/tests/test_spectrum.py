import itertools
import math

import networkx as nx
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from clusterspec.errors import ParameterDomainError
from clusterspec.graphgen import Graph, generate_hidden_variable, sample_power_law_degrees
from clusterspec.model import derive_params, make_rng
from clusterspec.spectrum import (
    SpectrumTable,
    clustering_spectrum,
    degree_ccdf,
    degree_ccdf_from_degrees,
    local_clustering,
    log_bin_spectrum,
    triangles_per_vertex,
)


def _graph(n, edges):
    u, v = zip(*edges) if edges else ((), ())
    return Graph.from_edges(n, list(u), list(v))


def test_k4_and_star():
    k4 = _graph(4, list(itertools.combinations(range(4), 2)))
    assert all(local_clustering(k4, v) == 1.0 for v in range(4))
    star = _graph(6, [(0, i) for i in range(1, 6)])
    assert local_clustering(star, 0) == 0.0
    assert local_clustering(star, 3) == 0.0  # degree 1
    with pytest.raises(IndexError):
        local_clustering(star, 6)


def test_hand_enumerated_vertex():
    # ids shifted to 0-based: vertex 3 -> 2, neighbors {0, 1, 3, 4}
    g = _graph(5, [(0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4)])
    assert local_clustering(g, 2) == pytest.approx(1 / 3, abs=1e-15)


def test_triangle_with_pendant():
    g = _graph(4, [(0, 1), (1, 2), (0, 2), (0, 3)])
    t = clustering_spectrum(g)
    assert t.k.tolist() == [2, 3]
    assert t.cbar.tolist() == [1.0, pytest.approx(1 / 3)]
    assert t.n_k.tolist() == [2, 1]
    assert t.total_triangles == 1


def test_edgeless_graph():
    t = clustering_spectrum(_graph(5, []))
    assert len(t) == 0 and t.total_triangles == 0


def _brute_triangles(n, adj):
    tri = np.zeros(n, dtype=np.int64)
    for a, b, c in itertools.combinations(range(n), 3):
        if adj[a, b] and adj[b, c] and adj[a, c]:
            tri[[a, b, c]] += 1
    return tri


@st.composite
def small_graphs(draw):
    n = draw(st.integers(1, 25))
    p = draw(st.floats(0.0, 1.0))
    seed = draw(st.integers(0, 2**32 - 1))
    rng = np.random.default_rng(seed)
    adj = np.triu(rng.random((n, n)) < p, 1)
    adj = adj | adj.T
    u, v = np.nonzero(np.triu(adj, 1))
    return Graph.from_edges(n, u, v), adj


@settings(max_examples=60, deadline=None)
@given(small_graphs())
def test_triangles_match_brute_force(data):
    g, adj = data
    tri = triangles_per_vertex(g)
    assert np.array_equal(tri, _brute_triangles(g.n, adj))
    t = clustering_spectrum(g)
    assert 3 * t.total_triangles == tri.sum()
    assert np.all((t.cbar >= 0) & (t.cbar <= 1)) and np.all(t.n_k >= 1)
    assert np.all(np.diff(t.k) > 0) and (len(t) == 0 or t.k[0] >= 2)


def test_matches_networkx_on_model_graph():
    g, _, _ = generate_hidden_variable(derive_params(4000, 2.3), "min", 2)
    ref = nx.Graph()
    ref.add_nodes_from(range(g.n))
    ref.add_edges_from(zip(*g.edges()))
    tri = nx.triangles(ref)
    assert np.array_equal(triangles_per_vertex(g), [tri[v] for v in range(g.n)])
    cl = nx.clustering(ref)
    for v in range(0, g.n, 11):
        assert local_clustering(g, v) == pytest.approx(cl[v], abs=1e-15)


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10**6))
def test_spectrum_relabel_invariant(seed):
    g, _, _ = generate_hidden_variable(derive_params(500, 2.4), "rational", seed)
    perm = make_rng(seed, 1).permutation(g.n)
    u, v = g.edges()
    h = Graph.from_edges(g.n, perm[u], perm[v])
    a, b = clustering_spectrum(g), clustering_spectrum(h)
    assert np.array_equal(a.k, b.k) and np.array_equal(a.n_k, b.n_k)
    np.testing.assert_allclose(a.cbar, b.cbar, rtol=1e-14)


def test_homogeneous_weights_flat_spectrum():
    p = derive_params(4000, 2.5)
    h = np.full(p.N, 8.0)
    from clusterspec.spectrum import SpectrumAccumulator
    acc = SpectrumAccumulator()
    for s in range(40):
        acc.add(generate_hidden_variable(p, "min", s, hidden=h)[0])
    t = acc.table()
    q = 64.0 / p.scale  # edge probability, also the expected clustering
    keep = t.n_k >= 2000
    assert keep.sum() >= 5
    # per-vertex clustering has variance ~ q / C(k,2); pooled means must sit near q
    se = np.sqrt(q / (t.k[keep] * (t.k[keep] - 1) / 2) / t.n_k[keep])
    assert np.all(np.abs(t.cbar[keep] - q) < 4 * se + 0.02 * q)


def test_log_binning_properties():
    k = np.arange(2, 200)
    n_k = (1000 * k**-2.0).astype(np.int64) + 1
    t = SpectrumTable(k=k, n_k=n_k, cbar=1.0 / k)
    b = log_bin_spectrum(t, 1.7)
    assert b.n_k.sum() == n_k.sum()
    assert np.all(np.diff(b.cbar) < 0)
    one = log_bin_spectrum(t, 1000.0)
    assert len(one) == 1
    assert one.cbar[0] == pytest.approx(np.average(t.cbar, weights=n_k), rel=1e-14)
    assert one.k[0] == pytest.approx(math.exp(np.average(np.log(k), weights=n_k)), rel=1e-14)
    with pytest.raises(ParameterDomainError):
        log_bin_spectrum(t, 1.0)


def test_ccdf_regular_graph():
    ring = _graph(10, [(i, (i + 1) % 10) for i in range(10)])
    c = degree_ccdf(ring)
    assert c.x.tolist() == [2] and c.p.tolist() == [0.0]
    assert c.at(1.5) == 1.0 and c.at(2) == 0.0 and c.at(7) == 0.0


def test_ccdf_power_law_deciles():
    p = derive_params(10**5, 2.5)
    d = sample_power_law_degrees(p, 3)
    c = degree_ccdf_from_degrees(d)
    assert np.all(np.diff(c.p) <= 0) and c.p[0] <= 1 and c.p[-1] == 0
    support = np.arange(1, int(p.h_c) + 1, dtype=float)
    pmf = support**-2.5 / np.sum(support**-2.5)
    tail = 1 - np.cumsum(pmf)
    for x in np.unique(np.quantile(d, np.linspace(0.1, 0.9, 9)).astype(int)):
        q = tail[x - 1]
        se = math.sqrt(q * (1 - q) / len(d))
        assert abs(c.at(x) - q) < 3 * se + 2e-5  # + parity repair
