from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from melonlab import series, walks
from melonlab.sampler import make_rng, sample_simple_melon
from melonlab.series import TruncatedSeries


coeff_lists = st.lists(
    st.fractions(min_value=-50, max_value=50, max_denominator=20),
    min_size=1, max_size=8)


@given(coeff_lists, coeff_lists)
@settings(max_examples=80, deadline=None)
def test_ring_axioms(a, b):
    A, B = TruncatedSeries(a, 7), TruncatedSeries(b, 7)
    assert A + B == B + A
    assert A * B == B * A
    assert A - A == TruncatedSeries.constant(0, 7)
    assert A * TruncatedSeries.constant(1, 7) == A


@given(coeff_lists)
@settings(max_examples=60, deadline=None)
def test_inverse_round_trip(a):
    A = TruncatedSeries(a, 7)
    if A[0] == 0:
        with pytest.raises(ZeroDivisionError):
            A.inverse()
    else:
        assert A * A.inverse() == TruncatedSeries.constant(1, 7)


def test_pow_matches_repeated_multiplication():
    A = TruncatedSeries([1, 2, 3], 9)
    B = TruncatedSeries.constant(1, 9)
    for k in range(5):
        assert A**k == B
        B = B * A


def test_H_empty_fixed_point_and_counts():
    for D in (2, 3):
        H = series.solve_H_empty(D, 24)
        z = TruncatedSeries.x(24)
        assert H == 1 + z * H**D
        # coefficients are the D-ary Fuss-Catalan numbers
        from melonlab.core import count_simple_melons
        for n in range(1, 10):
            assert H[n] == count_simple_melons(D, n)


def test_weighted_H_coefficients():
    from melonlab.core import count_simple_melons
    D, p = 2, 2
    H = series.weighted_H(D, 12, p)
    for n in range(10):
        c = count_simple_melons(D, n) if n else 1
        assert H[n] == ((D + 1) * n + 1) ** p * c


def test_H1_matches_per_tree_sums():
    # sum over simple trees of the derivative weight, checked by enumeration
    from melonlab.core import enumerate_simple_melons

    D = 2
    H1 = series.solve_H1(D, 8)
    assert H1[0] == 0
    for n in range(1, 7):
        total = sum(series.per_tree_h_derivatives(t, 1)[1]
                    for t in enumerate_simple_melons(D, n))
        assert H1[n] == total


def test_per_tree_derivative_against_series_expansion():
    rng = make_rng(77)
    for _ in range(15):
        D = 2 if int(rng.integers(2)) else 3
        t = sample_simple_melon(D, int(rng.integers(1, 7)), rng)
        d0, d1 = series.per_tree_h_derivatives(t, 1)
        h1 = walks.h_value(t)
        assert d0 == h1
        eps = Fraction(1, 10**15)
        # forward difference of the exact rational h at 1; higher derivatives
        # stay far below 1/eps at these sizes
        h_eps = _h_at(t, 1 + eps)
        approx = (h_eps - h1) / eps
        assert abs(approx - d1) < Fraction(1, 10**6)


def _h_at(tree, y):
    D = tree.dim
    memo = {}
    for v in reversed(list(tree.preorder())):
        c = tree.colors[v]
        S = 0
        for k in range(D + 1):
            if k == c:
                continue
            u = tree.children[v][k]
            S += 1 if u == -1 else memo[u]
        memo[v] = (1 + y + S) / (1 + (1 - y) * S)
    return memo[0]


def test_singular_point_values():
    assert series.singular_point(2) == Fraction(1, 4)
    assert series.singular_point(3) == Fraction(4, 27)


def test_fit_recovers_known_exponent():
    # H_empty has a square-root singularity: exponent -1/2
    fit = series.fit_singularity(series.solve_H_empty(2, 200), 2)
    assert fit.exponent == pytest.approx(-0.5, abs=0.01)
    assert fit.u_exponent == -fit.exponent


def test_resummed_exponents_shift():
    a1 = series.fit_singularity(series.resummed_H(2, 200, (1,)), 2).exponent
    a2 = series.fit_singularity(series.resummed_H(2, 200, (2,)), 2).exponent
    assert a1 == pytest.approx(2.0, abs=0.1)
    assert a2 == pytest.approx(3.5, abs=0.1)


def test_q_pole_radius():
    ratio = series.ratio_radius_estimate(series.q_pole_series(2, 150))
    assert ratio == pytest.approx(4.0, rel=0.005)
