"""Reference implementations used to cross-check the fast numerics.

Nothing here is clever or quick.  brute_force_pmf builds the walk-length
law for small n straight from the model weights with exact rational
arithmetic, and q_highprec evaluates the integer-order regularized upper
gamma function by its finite Poisson sum in multiprecision floats.  Tests
compare the production code against these.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath

from .errors import DomainError, SizeError

_BRUTE_FORCE_MAX_N = 500
_Q_HIGHPREC_MAX_A = 10_000


@dataclass(frozen=True)
class PrecisionContext:
    """Working precision for the multiprecision oracle.

    error_bound is a deliberately loose cap on accumulated rounding: ten
    decimal digits of slack over the working precision.
    """

    working_digits: int = 50

    def __post_init__(self):
        if not isinstance(self.working_digits, int) or self.working_digits < 50:
            raise DomainError(
                f"working_digits must be an integer >= 50, "
                f"got {self.working_digits!r}")

    @property
    def error_bound(self) -> float:
        return 10.0 ** -(self.working_digits - 10)


def q_highprec(a: int, x: float,
               ctx: PrecisionContext = PrecisionContext()) -> mpmath.mpf:
    """Q(a, x) = e^-x sum_{j<a} x^j/j! for integer a >= 0, evaluated in
    multiprecision.  Returns an mpf carrying the full working precision."""
    if not isinstance(a, int) or a < 0:
        raise DomainError(f"a must be an integer >= 0, got {a!r}")
    if a > _Q_HIGHPREC_MAX_A:
        raise SizeError(f"multiprecision summation capped at "
                        f"a = {_Q_HIGHPREC_MAX_A}")
    if math.isnan(x) or math.isinf(x) or x < 0:
        raise DomainError(f"x must be finite and >= 0, got {x!r}")
    with mpmath.workdps(ctx.working_digits):
        if a == 0:
            return mpmath.mpf(0)
        xm = mpmath.mpf(x)
        term = mpmath.mpf(1)
        total = mpmath.mpf(1)
        for j in range(1, a):
            term = term * xm / j
            total += term
        return total * mpmath.exp(-xm)


def _weights(n: int, z) -> list[Fraction]:
    if not isinstance(n, int) or n < 1:
        raise DomainError(f"n must be an integer >= 1, got {n!r}")
    if n > _BRUTE_FORCE_MAX_N:
        raise SizeError(f"brute force capped at n = {_BRUTE_FORCE_MAX_N}")
    zf = Fraction(z)
    if zf <= 0:
        raise DomainError(f"z must be > 0, got {z!r}")
    step = zf / n
    weights = [Fraction(1)]
    for k in range(1, n):
        # one more step multiplies the walk count by n - k
        weights.append(weights[-1] * (n - k) * step)
    return weights


def brute_force_pmf(n: int, z) -> list[Fraction]:
    """Exact walk-length pmf on n vertices at fugacity z, as Fractions.

    Weight of length k is (n-1)!/(n-1-k)! * (z/n)^k; the list is indexed
    by k and sums to exactly 1.  z may be an int, Fraction, or a float
    (floats convert exactly, so 0.5 means 1/2).
    """
    weights = _weights(n, z)
    total = sum(weights)
    return [w / total for w in weights]


def brute_force_mean_variance(n: int, z) -> tuple[Fraction, Fraction]:
    """Exact mean and variance of the walk-length law, as Fractions."""
    p = brute_force_pmf(n, z)
    mean = sum(k * pk for k, pk in enumerate(p))
    second = sum(k * k * pk for k, pk in enumerate(p))
    return mean, second - mean * mean
