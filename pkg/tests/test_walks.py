from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from melonlab import core, walks
from melonlab.sampler import make_rng, sample_simple_melon, sample_uniform_tree
from melonlab.series import TruncatedSeries


def test_elementary_first_return_leading_terms():
    for D in (2, 3, 4):
        p1 = walks.elementary_return_matrix(D, 6)
        # one step in, one step back: D parallel edges out of D+1
        assert p1.oo[2] == Fraction(1, D + 1)
        assert p1.oo[0] == 0 and p1.oo[1] == 0
        assert p1.ob[1] == 0
        assert p1.ob == p1.bo
        assert walks.first_return_matrix(core.elementary_tree(D), 6).as_tuple() \
            == p1.as_tuple()


@given(st.integers(2, 3), st.integers(1, 8), st.integers(0, 2**31))
@settings(max_examples=25, deadline=None)
def test_series_match_transfer_matrix(dim, n, seed):
    t = sample_uniform_tree(dim, n, make_rng(seed))
    t_max = 14
    P = walks.return_matrix(walks.first_return_matrix(t, t_max))
    g = core.build_melon_graph(t, closed=False)
    dist = walks.exact_walk_distribution(g, t_max, g.ext_in, exact=True)
    for tt in range(t_max + 1):
        assert P.oo[tt] == dist[tt][g.ext_in]
        assert P.ob[tt] == dist[tt][g.ext_out]


@given(st.integers(2, 4), st.integers(1, 10), st.integers(0, 2**31))
@settings(max_examples=25, deadline=None)
def test_first_return_symmetric(dim, n, seed):
    t = sample_uniform_tree(dim, n, make_rng(seed))
    p1 = walks.first_return_matrix(t, 12)
    assert p1.ob == p1.bo


@given(st.integers(2, 4), st.integers(1, 30), st.integers(0, 2**31))
@settings(max_examples=25, deadline=None)
def test_simple_melon_identities(dim, p, seed):
    t = sample_simple_melon(dim, p, make_rng(seed))
    p1 = walks.first_return_matrix(t, 10)
    # scalar structure a + b*sigma
    assert p1.oo == p1.bb and p1.ob == p1.bo
    lam = walks.lambda_simple(t, TruncatedSeries.x(10))
    assert lam == p1.oo + p1.ob
    assert walks.h_value(t) == (dim + 1) * p + 1


def test_exact_distribution_is_stochastic():
    t = sample_uniform_tree(2, 5, make_rng(4))
    g = core.build_melon_graph(t, closed=True)
    dist = walks.exact_walk_distribution(g, 10, 0, exact=True)
    for row in dist:
        assert sum(row) == 1
        assert all(p >= 0 for p in row)


def test_exact_distribution_float_agrees():
    t = sample_uniform_tree(2, 4, make_rng(9))
    g = core.build_melon_graph(t, closed=True)
    ex = walks.exact_walk_distribution(g, 8, 0, exact=True)
    fl = walks.exact_walk_distribution(g, 8, 0, exact=False)
    for tt in range(9):
        for v in range(g.n_vertices):
            assert float(ex[tt][v]) == pytest.approx(float(fl[tt][v]), abs=1e-12)


def test_lambda_simple_rejects_general_trees():
    t = core.grow_at(core.grow_at(core.elementary_tree(2), 0, 0), 0, 1)
    if not t.is_simple():
        with pytest.raises(ValueError):
            walks.lambda_simple(t, Fraction(1, 2))


def test_return_curve_deterministic_and_even():
    a = walks.simulate_return_curve(2, 256, 64, walkers=8, graphs=6, seed=5)
    b = walks.simulate_return_curve(2, 256, 64, walkers=8, graphs=6, seed=5)
    assert a.times == b.times and a.probs == b.probs and a.stderrs == b.stderrs
    assert all(t % 2 == 0 for t in a.times)
    assert a.probs[0] == 1.0
    assert all(0 <= p <= 1 for p in a.probs)


def test_return_curve_thread_invariant(monkeypatch):
    a = walks.simulate_return_curve(2, 256, 64, walkers=8, graphs=6, seed=5)
    monkeypatch.setenv("MELONLAB_THREADS", "3")
    b = walks.simulate_return_curve(2, 256, 64, walkers=8, graphs=6, seed=5)
    assert a.probs == b.probs and a.stderrs == b.stderrs


def test_synthetic_spectral_fits():
    times = list(range(0, 2050, 2))
    probs = [1.0] + [t ** (-2.0 / 3.0) for t in times[1:]]
    curve = walks.ReturnCurve(2, 64, "general", times, probs,
                              [0.0] * len(times), 1, 1)
    fit = walks.estimate_spectral_dimension(curve, window=(16, 1024))
    assert fit.d_s == pytest.approx(4.0 / 3.0, abs=1e-12)
    win = walks.auto_window(curve)
    assert win[1] >= 4 * win[0]


def test_estimate_requires_wide_window():
    times = list(range(0, 40, 2))
    probs = [1.0] + [t**-1.0 for t in times[1:]]
    curve = walks.ReturnCurve(2, 64, "general", times, probs,
                              [0.0] * len(times), 1, 1)
    with pytest.raises(ValueError):
        walks.estimate_spectral_dimension(curve, window=(16, 32))
