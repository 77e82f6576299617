import numpy as np
from scipy import stats

from clusterspec.rng import uniforms


def test_uniform_distribution():
    u = uniforms(np.uint64(1), np.uint64(0), 200_000)
    assert u.min() > 0.0 and u.max() < 1.0
    assert stats.kstest(u, "uniform").pvalue > 0.01


def test_streams_are_distinct_and_reproducible():
    a = uniforms(np.uint64(1), np.uint64(5), 1000)
    b = uniforms(np.uint64(1), np.uint64(6), 1000)
    c = uniforms(np.uint64(2), np.uint64(5), 1000)
    assert np.array_equal(a, uniforms(np.uint64(1), np.uint64(5), 1000))
    assert abs(np.corrcoef(a, b)[0, 1]) < 0.1
    assert abs(np.corrcoef(a, c)[0, 1]) < 0.1


def test_counter_addressing_is_order_free():
    # draw i of a stream does not depend on how many draws precede it
    long = uniforms(np.uint64(9), np.uint64(3), 50)
    short = uniforms(np.uint64(9), np.uint64(3), 10)
    assert np.array_equal(long[:10], short)
