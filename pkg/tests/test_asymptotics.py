"""Regime classification and the leading-order moment/tail-ratio formulas."""

import math

import numpy as np
import pytest

from sawlen import (DomainError, FugacityPath, Regime, SawEnsemble,
                    ValidityError, asymptotic_mean, asymptotic_variance,
                    classify, conditional_normal_moments,
                    decay_exponent_literal, eta, h_n_asymptotic, log_h_n,
                    log_h_n_asymptotic)

CLASSIFY_TABLE = [
    ((-0.5, 0.0), Regime.LOW_TEMP),
    ((-0.99, 0.0), Regime.LOW_TEMP),
    ((-1.0, 0.25), Regime.LOW_TEMP_WINDOW),
    ((-3.0, 0.49), Regime.LOW_TEMP_WINDOW),
    ((1.0, 0.5), Regime.BOUNDARY),
    ((-2.0, 0.5), Regime.BOUNDARY),
    ((1.0, 0.75), Regime.CRITICAL_WINDOW),
    ((-5.0, 2.0), Regime.CRITICAL_WINDOW),
    ((0.0, 0.0), Regime.CRITICAL_WINDOW),
    ((0.0, 0.25), Regime.CRITICAL_WINDOW),
    ((0.0, 0.5), Regime.CRITICAL_WINDOW),
    ((2.0, 0.3), Regime.HIGH_TEMP_WINDOW),
    ((0.1, 0.49), Regime.HIGH_TEMP_WINDOW),
    ((2.0, 0.0), Regime.HIGH_TEMP),
    ((0.5, 0.0), Regime.HIGH_TEMP),
]


@pytest.mark.parametrize("ab,want", CLASSIFY_TABLE)
def test_classification_table(ab, want):
    assert classify(FugacityPath(*ab)) is want


def test_classification_is_total_and_exclusive():
    rng = np.random.default_rng(3)
    for _ in range(500):
        alpha = float(rng.uniform(-3, 3))
        beta = float(rng.uniform(0, 2))
        if beta == 0.0 and alpha <= -1.0:
            continue
        assert classify(FugacityPath(alpha, beta)) in Regime


def test_path_validation():
    with pytest.raises(ValidityError):
        FugacityPath(-1.0, 0.0)
    with pytest.raises(ValidityError):
        FugacityPath(-1.5, 0.0)
    with pytest.raises(DomainError):
        FugacityPath(1.0, -0.25)
    with pytest.raises(DomainError):
        FugacityPath(float("nan"), 0.0)
    with pytest.raises(DomainError):
        FugacityPath(float("inf"), 1.0)
    # beta > 0 tolerates any alpha at large n, but lam must stay positive
    path = FugacityPath(-4.0, 0.5)
    with pytest.raises(ValidityError):
        path.lam_at(4)  # lam = 1 - 4/2 = -1
    assert path.lam_at(10**4) == pytest.approx(0.96)


def test_path_ensemble_round_trip():
    path = FugacityPath(1.0, 0.25)
    n = 10**4
    lam = 1.0 + 10**-1
    assert path.lam_at(n) == pytest.approx(lam, rel=1e-15)
    assert path.z_at(n) == pytest.approx(1.0 / lam, rel=1e-15)
    ens = path.ensemble_at(n)
    assert isinstance(ens, SawEnsemble)
    assert ens.nu == pytest.approx(n * lam, rel=1e-15)


def test_asymptotic_mean_examples():
    assert asymptotic_mean(FugacityPath(-0.5, 0.0), 10**6) == 0.5e6
    assert asymptotic_mean(FugacityPath(0.0, 1.0), 10**4) == pytest.approx(
        math.sqrt(2.0 / math.pi) * 100.0, rel=1e-15)
    assert asymptotic_mean(FugacityPath(2.0, 0.0), 77) == 0.5
    # low-temp window and high-temp window scale rows
    assert asymptotic_mean(FugacityPath(-1.0, 0.25), 10**4) == pytest.approx(
        10**3, rel=1e-12)
    assert asymptotic_mean(FugacityPath(2.0, 0.25), 10**4) == pytest.approx(
        10.0 / 2.0, rel=1e-12)


def test_asymptotic_variance_examples():
    assert asymptotic_variance(FugacityPath(-0.5, 0.0), 10**6) == 0.5e6
    n = 81
    assert asymptotic_variance(FugacityPath(0.0, 0.5), n) == pytest.approx(
        (1.0 - 2.0 / math.pi) * n, rel=1e-15)
    assert asymptotic_variance(FugacityPath(1.0, 0.0), 4) == 2.0
    assert asymptotic_variance(FugacityPath(-1.0, 0.25), 50) == 50.0
    assert asymptotic_variance(FugacityPath(2.0, 0.25), 10**4) == pytest.approx(
        100.0 / 4.0, rel=1e-12)


def test_moment_formulas_positive():
    for alpha, beta in ((-0.9, 0.0), (-2.0, 0.4), (3.0, 0.5), (0.0, 0.7),
                        (0.2, 0.1), (9.0, 0.0)):
        path = FugacityPath(alpha, beta)
        for n in (2, 100, 10**6):
            assert asymptotic_mean(path, n) > 0.0
            assert asymptotic_variance(path, n) > 0.0
    with pytest.raises(DomainError):
        asymptotic_mean(FugacityPath(1.0, 0.0), 1)


def test_conditional_normal_moments_closed_forms():
    mean, var = conditional_normal_moments(0.0)
    assert mean == math.sqrt(2.0 / math.pi)
    assert var == 1.0 - 2.0 / math.pi
    # deep negative alpha: conditioning on X > alpha does nothing
    mean, var = conditional_normal_moments(-10.0)
    assert abs(mean) <= 1e-3
    assert var == pytest.approx(1.0, abs=1e-3)
    # far positive alpha: hazard-ratio route, mean just above alpha
    mean, var = conditional_normal_moments(40.0)
    assert 40.0 < mean < 40.1
    assert 0.0 < var < 1.0


def test_conditional_normal_moments_match_rejection_sampling():
    # 10^7 standard normals, keep the ones above alpha = 1
    rng = np.random.default_rng(20260821)
    draws = rng.standard_normal(10**7)
    kept = draws[draws > 1.0]
    want_mean, want_var = conditional_normal_moments(1.0)
    m = kept.size
    sample_mean = kept.mean()
    sample_var = kept.var(ddof=1)
    se_mean = math.sqrt(sample_var / m)
    assert abs(sample_mean - want_mean) <= 4.0 * se_mean
    # classical standard error of the sample variance
    centered = kept - sample_mean
    fourth = float(np.mean(centered ** 4))
    se_var = math.sqrt((fourth - sample_var ** 2) / m)
    assert abs(sample_var - want_var) <= 4.0 * se_var


def test_boundary_reduces_to_critical_at_alpha_zero():
    n = 10**4
    boundary = FugacityPath(0.0, 0.5)
    critical = FugacityPath(0.0, 1.0)
    # same floats, not merely close: the seam shares its evaluation
    assert asymptotic_mean(boundary, n) == asymptotic_mean(critical, n)
    assert asymptotic_variance(boundary, n) == asymptotic_variance(critical, n)


def test_tail_ratio_asymptotic_examples():
    # high temperature with both displayed corrections
    got = h_n_asymptotic(FugacityPath(1.0, 0.0), 10**3)
    assert got == pytest.approx(10**3 * (1.0 + 2e-3 - 6e-6), rel=1e-14)
    # critical window
    assert h_n_asymptotic(FugacityPath(0.0, 1.0), 10**4) == pytest.approx(
        math.sqrt(2.0 / math.pi) * 100.0, rel=1e-15)
    # low-temp window evaluates the pre-limit exponent form
    n, path = 10**4, FugacityPath(-0.5, 0.25)
    lam = 1.0 - 0.5 * n ** -0.25
    want = math.sqrt(n / (2 * math.pi)) * math.exp(-n * eta(lam) ** 2 / 2.0)
    assert h_n_asymptotic(path, n) == pytest.approx(want, rel=1e-12)


def test_tail_ratio_asymptotic_converges_to_exact():
    """1/H_n(n lam_n) against the leading-order formula: the ratio must
    move toward 1 when n doubles, in every regime."""
    paths = [FugacityPath(-0.5, 0.0), FugacityPath(-1.0, 0.25),
             FugacityPath(1.0, 0.5), FugacityPath(0.0, 1.0),
             FugacityPath(1.0, 0.25), FugacityPath(1.0, 0.0)]
    for path in paths:
        errs = []
        for n in (500, 1000, 2000):
            exact = math.exp(-log_h_n(n, n * path.lam_at(n)))
            errs.append(abs(exact / h_n_asymptotic(path, n) - 1.0))
        assert errs[2] < errs[0], (path, errs)
        assert errs[2] < 0.2


def test_log_form_matches_plain_form():
    path = FugacityPath(-0.8, 0.0)
    for n in (100, 1000):
        assert math.exp(log_h_n_asymptotic(path, n)) == pytest.approx(
            h_n_asymptotic(path, n), rel=1e-12)
    # deep low temperature: the plain value underflows, the log is fine
    assert h_n_asymptotic(path, 10**6) == 0.0
    assert log_h_n_asymptotic(path, 10**6) < -700_000


def test_decay_exponent_literal():
    # beta = 0: the literal exponent equals the pre-limit one exactly
    path = FugacityPath(-0.5, 0.0)
    n = 300
    want = -n * eta(0.5) ** 2 / 2.0
    assert decay_exponent_literal(path, n) == pytest.approx(want, rel=1e-12)
    # low-temp window: literal is the displayed leading term only
    path = FugacityPath(-2.0, 0.25)
    assert decay_exponent_literal(path, 10**4) == pytest.approx(
        -0.5 * 4.0 * math.sqrt(10**4), rel=1e-14)
    with pytest.raises(DomainError):
        decay_exponent_literal(FugacityPath(1.0, 0.0), 100)


def test_case_v_corrections_improve_over_bare_leading_order():
    # with the displayed corrections, the high-temp window formula should
    # beat plain alpha-scaling at moderate n
    path = FugacityPath(1.0, 0.25)
    n = 10**4
    exact = math.exp(-log_h_n(n, n * path.lam_at(n)))
    bare = 1.0 * n ** 0.75
    with_corrections = h_n_asymptotic(path, n)
    assert abs(with_corrections / exact - 1.0) < abs(bare / exact - 1.0)
