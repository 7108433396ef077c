# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twins of the kernels in sawlen._corepy.

Same algorithms, same tolerances; see that module for the math notes.
Results must agree with the pure versions to rounding, which the backend
test suite checks whenever this extension is importable.
"""

import numpy as np

from libc.math cimport fabs, lgamma, log, log1p, exp

cdef double _EPS = 1.0e-16
cdef double _TINY = 1.0e-300
cdef int _ITMAX = 1000000


def log_q_lower_series(double a, double x):
    cdef double ap, term, total, log_p
    cdef int i
    if x == 0.0:
        return 0.0
    ap = a
    term = 1.0
    total = 1.0
    for i in range(_ITMAX):
        ap += 1.0
        term *= x / ap
        total += term
        if fabs(term) < fabs(total) * _EPS:
            break
    else:
        raise ArithmeticError(f"lower series stalled at a={a}, x={x}")
    log_p = a * log(x) - x - lgamma(a + 1.0) + log(total)
    if log_p >= 0.0:
        raise ArithmeticError(f"lower series lost Q at a={a}, x={x}")
    return log1p(-exp(log_p))


def log_q_upper_cf(double a, double x):
    cdef double b, c, d, h, an, delta
    cdef int i
    b = x + 1.0 - a
    c = 1.0 / _TINY
    d = 1.0 / b if b != 0.0 else 1.0 / _TINY
    h = d
    for i in range(1, _ITMAX):
        an = -i * (i - a)
        b += 2.0
        d = an * d + b
        if fabs(d) < _TINY:
            d = _TINY
        c = b + an / c
        if fabs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        delta = d * c
        h *= delta
        if fabs(delta - 1.0) < _EPS:
            break
    else:
        raise ArithmeticError(f"continued fraction stalled at a={a}, x={x}")
    return a * log(x) - x - lgamma(a) + log(h)


def log_q_exact_sum(n, double x):
    cdef long nn = n
    cdef long jmax, j
    cdef double log_peak, total, term
    if x == 0.0:
        return 0.0
    jmax = <long> x
    if jmax > nn - 1:
        jmax = nn - 1
    log_peak = jmax * log(x) - lgamma(jmax + 1.0)
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
    while j < nn:
        term *= x / j
        total += term
        if term < total * 1.0e-18:
            break
        j += 1
    return -x + log_peak + log(total)


def log_factorials(n):
    cdef long nn = n
    out = np.empty(nn, dtype=np.float64)
    cdef double[::1] v = out
    cdef long j
    for j in range(nn):
        v[j] = lgamma(j + 1.0)
    return out
