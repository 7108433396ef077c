"""The reference oracle has to be right before anything else can be."""

import math
from fractions import Fraction

import pytest

from sawlen import DomainError, SizeError
from sawlen.oracle import (PrecisionContext, brute_force_mean_variance,
                           brute_force_pmf, q_highprec)


def test_pmf_hand_enumeration():
    # n=2, z=2: one walk of length 0 and one of length 1, weights 1 and 1
    assert brute_force_pmf(2, 2) == [Fraction(1, 2), Fraction(1, 2)]
    # n=3, z=3: weights (1, 2, 2)
    assert brute_force_pmf(3, 3) == [Fraction(1, 5), Fraction(2, 5), Fraction(2, 5)]
    assert brute_force_pmf(1, 17) == [Fraction(1)]


def test_pmf_is_exact_probability_vector():
    for n, z in ((7, Fraction(1, 2)), (25, 1), (60, 5)):
        p = brute_force_pmf(n, z)
        assert len(p) == n
        assert sum(p) == 1
        assert all(pk > 0 for pk in p)


def test_float_fugacity_converts_exactly():
    assert brute_force_pmf(4, 0.5) == brute_force_pmf(4, Fraction(1, 2))


def test_mean_variance_hand_case():
    mean, var = brute_force_mean_variance(2, 2)
    assert mean == Fraction(1, 2)
    assert var == Fraction(1, 4)


def test_budgets_and_domains():
    with pytest.raises(SizeError):
        brute_force_pmf(501, 1)
    with pytest.raises(DomainError):
        brute_force_pmf(0, 1)
    with pytest.raises(DomainError):
        brute_force_pmf(5, 0)
    with pytest.raises(DomainError):
        brute_force_pmf(5, -2)


def test_q_highprec_single_term():
    # a=1: Q(1, x) = e^-x
    got = q_highprec(1, 2.0)
    assert float(got) == pytest.approx(math.exp(-2.0), rel=1e-15)
    assert float(q_highprec(0, 3.0)) == 0.0


def test_q_highprec_reference():
    assert float(q_highprec(10, 10.0)) == pytest.approx(
        0.4579297144718522083142, rel=1e-15)


def test_q_highprec_carries_working_precision():
    # cross-check against mpmath's own gammainc, a different algorithm
    import mpmath
    ctx = PrecisionContext(working_digits=60)
    got = q_highprec(10, 10.0, ctx)
    with mpmath.workdps(60):
        want = mpmath.gammainc(10, 10, regularized=True)
        assert abs(got - want) < mpmath.mpf(10) ** -55


def test_q_highprec_monotone_and_bounded():
    values_in_a = [float(q_highprec(a, 25.0)) for a in (5, 15, 25, 40)]
    assert all(b > a for a, b in zip(values_in_a, values_in_a[1:]))
    values_in_x = [float(q_highprec(20, x)) for x in (5.0, 15.0, 25.0, 40.0)]
    assert all(b < a for a, b in zip(values_in_x, values_in_x[1:]))
    assert all(0.0 <= v <= 1.0 for v in values_in_a + values_in_x)


def test_q_highprec_budget_and_domain():
    with pytest.raises(SizeError):
        q_highprec(10_001, 10.0)
    with pytest.raises(DomainError):
        q_highprec(5, -1.0)
    with pytest.raises(DomainError):
        q_highprec(-1, 1.0)


def test_precision_context_floor():
    with pytest.raises(DomainError):
        PrecisionContext(working_digits=20)
    assert PrecisionContext(working_digits=50).error_bound == 1e-40
