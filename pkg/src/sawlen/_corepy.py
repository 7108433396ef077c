"""Pure-Python twins of the compiled kernels.

Everything here is a tight scalar loop that sits at the bottom of every
higher-level sweep; sawlen._corecy holds the Cython build of the same four
routines, and sawlen.backend picks whichever is importable.  Both versions
must implement identical algorithms so results agree to rounding.

All Q routines return log Q(a, x), the log of the regularized upper
incomplete gamma function, because the callers need ratios of Q values
far below double underflow.
"""

from __future__ import annotations

import math

import numpy as np

_EPS = 1.0e-16
_TINY = 1.0e-300
_ITMAX = 1_000_000


def log_q_lower_series(a: float, x: float) -> float:
    """log Q via the lower-tail power series, for x < a + 1.

    P(a,x) = x^a e^-x / Gamma(a+1) * sum_k x^k / ((a+1)...(a+k)); the sum
    converges fast on this side of the transition and P stays far enough
    from 1 that log1p(-P) keeps full relative accuracy in Q.
    """
    if x == 0.0:
        return 0.0
    ap = a
    term = 1.0
    total = 1.0
    for _ in range(_ITMAX):
        ap += 1.0
        term *= x / ap
        total += term
        if abs(term) < abs(total) * _EPS:
            break
    else:
        raise ArithmeticError(f"lower series stalled at a={a}, x={x}")
    log_p = a * math.log(x) - x - math.lgamma(a + 1.0) + math.log(total)
    if log_p >= 0.0:  # P rounded to 1; x < a+1 keeps us away from this
        raise ArithmeticError(f"lower series lost Q at a={a}, x={x}")
    return math.log1p(-math.exp(log_p))


def log_q_upper_cf(a: float, x: float) -> float:
    """log Q via the continued fraction (modified Lentz), for x >= a + 1.

    Q(a,x) = x^a e^-x / Gamma(a) * 1/(x+1-a- 1(1-a)/(x+3-a- ...)).
    """
    b = x + 1.0 - a
    c = 1.0 / _TINY
    d = 1.0 / b if b != 0.0 else 1.0 / _TINY
    h = d
    for i in range(1, _ITMAX):
        an = -i * (i - a)
        b += 2.0
        d = an * d + b
        if abs(d) < _TINY:
            d = _TINY
        c = b + an / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _EPS:
            break
    else:
        raise ArithmeticError(f"continued fraction stalled at a={a}, x={x}")
    return a * math.log(x) - x - math.lgamma(a) + math.log(h)


def log_q_exact_sum(n: int, x: float) -> float:
    """log of the finite Poisson sum e^-x * sum_{j<n} x^j/j!, exact for
    integer n >= 1.

    The sum is accumulated outward from its largest term so no scaling is
    ever needed and small terms cannot swamp the accumulator.
    """
    if x == 0.0:
        return 0.0
    jmax = int(x)
    if jmax > n - 1:
        jmax = n - 1
    log_peak = jmax * math.log(x) - math.lgamma(jmax + 1.0)
    total = 1.0
    term = 1.0
    j = jmax
    while j > 0:
        term *= j / x
        total += term
        if term < total * 1.0e-18:
            break
        j -= 1
    term = 1.0
    j = jmax + 1
    while j < n:
        term *= x / j
        total += term
        if term < total * 1.0e-18:
            break
        j += 1
    return -x + log_peak + math.log(total)


def log_factorials(n: int) -> np.ndarray:
    """Array of log(j!) for j = 0 .. n-1."""
    out = np.empty(n, dtype=np.float64)
    lg = math.lgamma
    for j in range(n):
        out[j] = lg(j + 1.0)
    return out
