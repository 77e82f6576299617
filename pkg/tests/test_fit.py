import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from clusterspec.analytic import cbar_from_ch, slope_at_hc, slope_limit
from clusterspec.errors import ParameterDomainError
from clusterspec.fit import FitResult, fit_degree_tail, fit_spectrum_exponent, gof_pvalue, with_pvalue
from clusterspec.model import derive_params, make_rng, sample_discrete_power_law
from clusterspec.spectrum import SpectrumTable


def _power_law(exponent, n, seed):
    return sample_discrete_power_law(exponent, 1, n, make_rng(seed))


@pytest.mark.parametrize("exponent", [2.1, 2.5, 2.9])
def test_median_bias(exponent):
    est = [fit_degree_tail(_power_law(exponent, 10**5, s)).exponent_hat for s in range(7)]
    assert abs(np.median(est) - exponent) < 0.05
    if exponent == 2.5:
        assert all(2.40 <= e <= 2.60 for e in est)


def test_geometric_fits_worse_than_power_law():
    geo = np.random.default_rng(0).geometric(0.2, 10**4)
    pl = _power_law(2.5, 10**4, 0)
    assert fit_degree_tail(geo).ks_distance > 5 * fit_degree_tail(pl).ks_distance


def test_duplication_and_permutation_invariance():
    x = _power_law(2.3, 5000, 3)
    f = fit_degree_tail(x)
    assert fit_degree_tail(np.repeat(x, 2)).exponent_hat == pytest.approx(f.exponent_hat, abs=1e-6)
    assert fit_degree_tail(np.random.default_rng(1).permutation(x)) == f


def test_fit_result_fields_and_json():
    f = fit_degree_tail(_power_law(2.5, 2000, 9))
    assert f.exponent_hat > 1 and f.xmin >= 1 and f.n_tail >= 10 and 0 <= f.ks_distance <= 1
    g = with_pvalue(f, 0.4)
    assert FitResult.from_json(g.to_json()) == g
    assert json.loads(f.to_json())["gof_pvalue"] is None


@pytest.mark.parametrize("bad", [[3] * 100, [1, 2, 3], [0] + [2] * 60, [1.5] * 30 + [2] * 30])
def test_fit_rejects(bad):
    with pytest.raises(ParameterDomainError):
        fit_degree_tail(bad)


def test_pvalue_power_law_vs_lognormal():
    x = _power_law(2.5, 20000, 4)
    assert gof_pvalue(x, fit_degree_tail(x), 50, 0) > 0.10
    rejected = 0
    for s in range(5):
        y = np.maximum(1, np.round(make_rng(100, s).lognormal(1.0, 1.0, 10**5))).astype(int)
        rejected += gof_pvalue(y, fit_degree_tail(y), 50, s) < 0.10
    assert rejected >= 4


@settings(max_examples=10, deadline=None)
@given(st.integers(0, 10**6))
def test_pvalue_in_unit_interval(seed):
    x = np.random.default_rng(seed).zipf(2.2, 300)
    f = fit_degree_tail(x)
    p = gof_pvalue(x, f, 50, seed)
    assert 0.0 <= p <= 1.0
    assert p == gof_pvalue(x, f, 50, seed)


def test_pvalue_budget():
    x = _power_law(2.5, 1000, 0)
    with pytest.raises(ParameterDomainError):
        gof_pvalue(x, fit_degree_tail(x), replicates=49)


def test_spectrum_exponent_exact_and_scaled():
    k = np.arange(2, 300)
    t = SpectrumTable(k=k, n_k=np.ones_like(k), cbar=k**-1.5)
    assert fit_spectrum_exponent(t, 10) == pytest.approx(1.5, abs=1e-10)
    t2 = SpectrumTable(k=k, n_k=np.ones_like(k), cbar=0.01 * k**-1.5)
    assert fit_spectrum_exponent(t2, 10) == pytest.approx(1.5, abs=1e-10)
    with pytest.raises(ParameterDomainError):
        fit_spectrum_exponent(t, 296)


def test_spectrum_exponent_on_analytic_tail():
    p = derive_params(10**8, 2.5)
    k = np.unique(np.geomspace(p.h_s, p.h_c, 25).astype(int))
    table = SpectrumTable(k=k, n_k=np.ones_like(k), cbar=cbar_from_ch(p, "min", k))
    alpha = fit_spectrum_exponent(table, p.h_s)
    assert abs(alpha - abs(slope_at_hc(p))) < 0.15
    assert alpha < abs(slope_limit(2.5))
