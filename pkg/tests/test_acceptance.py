"""Acceptance gate: one test per release criterion, at full scale.

The statistical criteria (4, 7, 11) run multi-minute Monte Carlo; the rest
are exact or near-instant.  Thresholds and scales are fixed here and in
melonlab.verify — do not loosen them to make a failing run pass.
"""

from melonlab import verify


def _assert_ok(result):
    assert result.ok, f"{result.name}: {result.detail}"


def test_criterion_01_worked_example_exact():
    _assert_ok(verify.check_worked_example())


def test_criterion_02_depth_vs_stack_table_exact():
    _assert_ok(verify.check_comparison_table())


def test_criterion_03_surjection_identity_and_matrix_inverse():
    _assert_ok(verify.check_surjection_identity(n_max=14, q_max=8, pascal_q=12))


def test_criterion_04_completion_density_exact_and_mc():
    _assert_ok(verify.check_lambda_exact())
    _assert_ok(verify.check_lambda_mc(n=10**6, reps=50, seed=2024))


def test_criterion_05_counting_oracles():
    _assert_ok(verify.check_counting(n_max=6))


def test_criterion_06_depth_oracle_and_pair_brackets():
    _assert_ok(verify.check_depth_oracle(trees=500, n_max=2000, pairs=10**4))


def test_criterion_07_depth_scaling_exponent_and_ratio():
    _assert_ok(verify.check_depth_scaling(dim=2, reps=200, k_lo=10, k_hi=16))


def test_criterion_08_walk_algebra_oracle():
    _assert_ok(verify.check_walk_algebra(trees=50, t_max=20))


def test_criterion_09_h_lambda_identities():
    _assert_ok(verify.check_h_lambda(melons=1000))


def test_criterion_10_series_exponents():
    _assert_ok(verify.check_series_exponents(order=512, tol=0.05))


def test_criterion_11_spectral_dimension():
    _assert_ok(verify.check_spectral_synthetic())
    _assert_ok(verify.check_spectral_mc(n=2**15, t_max=2048, walkers=100,
                                        graphs=1000))


def test_criterion_12_sampler_uniformity():
    _assert_ok(verify.check_uniformity())
