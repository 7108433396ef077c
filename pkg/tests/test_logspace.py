import math

import pytest

from sawlen import DomainError, LogScaleValue


def test_round_trip():
    # storing log(x) costs up to |log x| * eps of relative precision on
    # the way back, so the huge magnitudes get a looser tolerance
    for x in (1.0, -2.5, 1e-300, 3.7e250, -1e-12):
        v = LogScaleValue.from_value(x)
        assert v.value() == pytest.approx(x, rel=2e-13)
        assert float(v) == v.value()


def test_zero_is_normalized():
    z = LogScaleValue.zero()
    assert z.is_zero()
    assert z.value() == 0.0
    assert LogScaleValue.from_value(0.0) == z
    # a -inf magnitude with nonzero sign normalizes to the canonical zero
    assert LogScaleValue(float("-inf"), 1) == z


def test_multiplication_and_division():
    a = LogScaleValue.from_value(-3.0)
    b = LogScaleValue.from_value(0.5)
    assert (a * b).value() == pytest.approx(-1.5)
    assert (a / b).value() == pytest.approx(-6.0)
    assert (a * LogScaleValue.zero()).is_zero()
    assert (LogScaleValue.zero() / a).is_zero()


def test_products_beyond_double_range():
    # each factor is representable but the product is not; the log-scale
    # form keeps the magnitude while value() saturates honestly
    big = LogScaleValue.from_value(1e300)
    prod = big * big
    assert prod.log_magnitude == pytest.approx(2 * 300 * math.log(10), rel=1e-12)
    assert prod.value() == math.inf
    tiny = LogScaleValue.from_value(1e-300)
    assert (tiny * tiny).value() == 0.0
    assert (tiny * tiny / (tiny * tiny)).value() == 1.0


def test_sign_rules():
    neg = LogScaleValue.from_value(-2.0)
    assert (neg * neg).sign == 1
    assert (neg * neg * neg).sign == -1
    assert (neg / neg).value() == 1.0


def test_division_by_zero_raises():
    with pytest.raises(ZeroDivisionError):
        LogScaleValue.from_value(1.0) / LogScaleValue.zero()


def test_invalid_construction():
    with pytest.raises(DomainError):
        LogScaleValue(0.0, 2)
    with pytest.raises(DomainError):
        LogScaleValue(float("nan"), 1)
    with pytest.raises(DomainError):
        LogScaleValue(0.0, 0)  # zero sign demands -inf magnitude
    with pytest.raises(DomainError):
        LogScaleValue.from_value(float("inf"))
    with pytest.raises(DomainError):
        LogScaleValue.from_value(float("nan"))
