import math

import networkx as nx
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from clusterspec.errors import ParameterDomainError, ResourceError
from clusterspec.fit import fit_degree_tail
from clusterspec.graphgen import (
    Graph,
    expected_degree,
    generate_ecm,
    generate_hidden_variable,
    generate_hidden_variable_naive,
    sample_power_law_degrees,
    validate_graph,
)
from clusterspec.model import connection_prob, derive_params
from clusterspec.spectrum import triangles_per_vertex

# N * int int rho rho p for N=1e4, tau=2.5, min kernel (nested quad, rtol 1e-11)
MEAN_DEGREE_1E4 = 2.8303078594868905
# expected degree of an h=5 vertex in the same model
EXPECTED_DEGREE_H5 = 4.887579040457571


@st.composite
def edge_arrays(draw):
    n = draw(st.integers(1, 40))
    m = draw(st.integers(0, 120))
    u = draw(st.lists(st.integers(0, n - 1), min_size=m, max_size=m))
    v = draw(st.lists(st.integers(0, n - 1), min_size=m, max_size=m))
    return n, u, v


@given(edge_arrays())
def test_from_edges_invariants(data):
    n, u, v = data
    g = Graph.from_edges(n, u, v)
    validate_graph(g)
    expected = {(min(a, b), max(a, b)) for a, b in zip(u, v) if a != b}
    eu, ev = g.edges()
    assert set(zip(eu.tolist(), ev.tolist())) == expected
    assert g.m == len(expected)


def test_graph_is_read_only_and_checks_ids():
    g = Graph.from_edges(3, [0, 1], [1, 2])
    with pytest.raises(ValueError):
        g.indices[0] = 2
    with pytest.raises(IndexError):
        g.neighbors(3)
    with pytest.raises(ValueError):
        Graph.from_edges(3, [0], [3])


def test_validate_graph_catches_asymmetry():
    bad = Graph(indptr=np.array([0, 1, 1]), indices=np.array([1]))
    with pytest.raises(ValueError):
        validate_graph(bad)
    loop = Graph(indptr=np.array([0, 1, 2]), indices=np.array([0, 1]))
    with pytest.raises(ValueError):
        validate_graph(loop)


def test_saturated_pair_always_connected():
    p = derive_params(2, 2.5)
    h = np.array([p.h_c, p.h_c])
    assert h[0] * h[1] >= p.scale
    for seed in range(20):
        g, rep, _ = generate_hidden_variable(p, "min", seed, hidden=h)
        assert g.m == 1
        assert rep.self_loops_erased == rep.multi_edges_erased == 0


def test_hidden_variable_determinism():
    p = derive_params(5000, 2.4)
    g1, _, h1 = generate_hidden_variable(p, "min", 3)
    g2, _, h2 = generate_hidden_variable(p, "min", 3)
    assert np.array_equal(g1.indices, g2.indices) and np.array_equal(h1, h2)
    g3, _, _ = generate_hidden_variable(p, "min", 4)
    assert not np.array_equal(g1.indptr, g3.indptr)


def test_mean_degree_matches_double_integral():
    p = derive_params(10**4, 2.5)
    means = [2 * generate_hidden_variable(p, "min", s)[0].m / p.N for s in range(50)]
    assert np.mean(means) == pytest.approx(MEAN_DEGREE_1E4, rel=0.05)


def test_pair_frequencies_match_connection_prob():
    p = derive_params(200, 2.5)
    h = np.geomspace(1.0, p.h_c, 200)
    pairs = [(i, j) for i, j in zip(range(0, 200, 10), range(199, 0, -10))]
    hits = np.zeros(len(pairs))
    reps = 1000
    for s in range(reps):
        g, _, _ = generate_hidden_variable(p, "rational", s, hidden=h)
        for k, (i, j) in enumerate(pairs):
            nb = g.neighbors(i)
            hits[k] += j in set(nb.tolist())
    for k, (i, j) in enumerate(pairs):
        q = connection_prob(p, "rational", h[i], h[j])
        se = math.sqrt(max(q * (1 - q), 1e-12) / reps)
        assert abs(hits[k] / reps - q) <= 3 * se + 1e-12


def test_skip_sampler_agrees_with_naive():
    # same weights, independent randomness: compare edge and triangle totals in distribution
    p = derive_params(1500, 2.5)
    fast_m, naive_m, fast_t, naive_t = [], [], [], []
    for s in range(120):
        h = np.sort(np.random.default_rng(1000 + s).uniform(1, 12, p.N))
        gf, _, _ = generate_hidden_variable(p, "exp", s, hidden=h)
        gn, _, _ = generate_hidden_variable_naive(p, "exp", s, hidden=h)
        fast_m.append(gf.m)
        naive_m.append(gn.m)
        fast_t.append(triangles_per_vertex(gf).sum() // 3)
        naive_t.append(triangles_per_vertex(gn).sum() // 3)
    for a, b in ((fast_m, naive_m), (fast_t, naive_t)):
        a, b = np.asarray(a, float), np.asarray(b, float)
        se = math.sqrt(a.var() / len(a) + b.var() / len(b))
        assert abs(a.mean() - b.mean()) < 4 * se


def test_memory_budget():
    p = derive_params(10**6, 2.5)
    with pytest.raises(ResourceError):
        generate_hidden_variable(p, "min", 0, memory_budget=1024)


def test_expected_degree():
    p = derive_params(10**4, 2.5)
    assert expected_degree(p, "min", 5.0) == pytest.approx(EXPECTED_DEGREE_H5, rel=1e-8)
    assert expected_degree(p, "min", 5.0) == pytest.approx(5.0, rel=0.05)
    assert expected_degree(p, "min", p.h_c) < p.N
    vals = [expected_degree(p, "exp", h) for h in np.geomspace(1, p.h_c, 25)]
    assert np.all(np.diff(vals) >= 0)
    with pytest.raises(ParameterDomainError):
        expected_degree(p, "min", 0.5)


def test_power_law_degrees():
    p = derive_params(10**5, 2.5)
    d = sample_power_law_degrees(p, 1)
    assert d.sum() % 2 == 0
    assert d.min() >= 1 and d.max() <= math.floor(p.h_c) + 1
    assert np.array_equal(d, sample_power_law_degrees(p, 1))
    assert fit_degree_tail(d).exponent_hat == pytest.approx(2.5, abs=0.1)


def test_ecm_small_cases():
    g, rep = generate_ecm([1, 1], 0)
    assert g.m == 1 and rep.self_loops_erased == 0 and rep.multi_edges_erased == 0
    with pytest.raises(ParameterDomainError):
        generate_ecm([1, 2], 0)


def test_ecm_two_double_stubs_frequencies():
    # 3 perfect matchings of stubs {a1,a2,b1,b2}: {a1a2,b1b2} gives two loops,
    # the other two give a double edge, so P(multi) = 2/3
    multi = 0
    reps = 6000
    for s in range(reps):
        g, rep = generate_ecm([2, 2], s)
        if rep.multi_edges_erased:
            assert g.m == 1 and rep.multi_edges_erased == 1 and rep.self_loops_erased == 0
            multi += 1
        else:
            assert g.m == 0 and rep.self_loops_erased == 2
    se = math.sqrt(2 / 9 / reps)
    assert abs(multi / reps - 2 / 3) < 4 * se


def test_ecm_degrees_bounded_and_small_erasure():
    p = derive_params(10**5, 2.3)
    d = sample_power_law_degrees(p, 4)
    g, rep = generate_ecm(d, 4)
    validate_graph(g)
    got = g.degrees()
    assert np.all(got <= d)
    assert (rep.self_loops_erased + rep.multi_edges_erased) < 0.05 * g.m


@settings(max_examples=30, deadline=None)
@given(st.lists(st.integers(0, 6), min_size=2, max_size=30), st.integers(0, 10**6))
def test_ecm_equality_without_erasure(deg, seed):
    if sum(deg) % 2:
        deg[0] += 1
    g, rep = generate_ecm(deg, seed)
    validate_graph(g)
    assert 2 * g.m == sum(deg) - 2 * rep.self_loops_erased - 2 * rep.multi_edges_erased
    if rep.self_loops_erased == rep.multi_edges_erased == 0:
        assert np.array_equal(g.degrees(), deg)


def test_networkx_adjacency_roundtrip():
    p = derive_params(3000, 2.6)
    g, _, _ = generate_hidden_variable(p, "min", 9)
    ref = nx.Graph()
    ref.add_nodes_from(range(g.n))
    ref.add_edges_from(zip(*g.edges()))
    assert ref.number_of_edges() == g.m
    assert all(sorted(ref[v]) == g.neighbors(v).tolist() for v in range(0, g.n, 7))
