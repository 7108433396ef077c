"""Regularized upper incomplete gamma machinery, built from scratch.

Everything downstream reduces to Q(a, x) = Gamma(a, x)/Gamma(a) and a few
companions, evaluated over a ridiculous range of scales (a up to ~1e8,
ratios of Q values below 1e-100000).  The layer here provides

  * reg_gamma_q / log_reg_gamma_q  -- strategy-dispatched Q(a, x)
  * eta                            -- the saddle coordinate
                                      sign(lam-1) * sqrt(2(lam - 1 - log lam))
  * gamma_star                     -- scaled Gamma:
                                      sqrt(n/2pi) e^n n^-n Gamma(n)
  * normal_tail / log_normal_tail  -- Phibar(x), upper standard normal tail
  * temme_uniform_q                -- uniform asymptotic Q for large a
  * tricomi_gamma_q                -- fixed-ratio asymptotic for
                                      Gamma(a) Q(a, x), log scale

Strategies for Q.  Exact Poisson summation when a is a small integer
(Q(n, x) = e^-x sum_{j<n} x^j/j!), the lower-tail power series for
x < a + 1, the upper continued fraction for x >= a + 1, and for very
large a the uniform asymptotic expansion

  Q(a, a*lam) = Phibar(sqrt(a) eta) + e^{-a eta^2/2} / sqrt(2 pi a)
                  * sum_k (-1)^k [ q_k(xi)/xi^{2k+1} - A_k/eta^{2k+1} ] a^-k

with xi = lam - 1, A_k = (2k-1)!!, and polynomials q_k fixed by requiring
each bracket to stay finite as xi -> 0.  Once sqrt(a)*eta is large the
Phibar term folds into the sum analytically and the expansion collapses to
the exponentially scaled form

  sqrt(2 pi a) e^{a eta^2/2} Q(a, a*lam) = sum_k (-1)^k q_k(xi) / (a^k xi^{2k+1}),

which is how tails far below double underflow stay computable: callers get
log Q and the exponential never has to be formed.

The brackets q_k(xi)/xi^{2k+1} - A_k/eta^{2k+1} cancel catastrophically as
xi -> 0, so near the diagonal they evaluate by frozen Taylor series in xi
(coefficients generated by tools/gen_series_coefficients.py and checked
against a 60-digit oracle).
"""

from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass, field
from fractions import Fraction

from .backend import core
from .config import DEFAULT, Thresholds
from .errors import DomainError, PrecisionWarning, ValidityError
from .logspace import LogScaleValue

_SQRT_2PI = math.sqrt(2.0 * math.pi)
_LOG_2PI = math.log(2.0 * math.pi)

# Relative truncation estimate above which asymptotic evaluations warn.
TRUNCATION_WARN_LEVEL = 1.0e-6


# ----------------------------------------------------------------------
# frozen expansion tables


def _double_factorial_odd(k: int) -> int:
    """(2k-1)!! with the empty-product convention for k = 0."""
    out = 1
    for j in range(1, k + 1):
        out *= 2 * j - 1
    return out


# Taylor coefficients in xi of the three Temme brackets
#   T_k(xi) = (-1)^k [ q_k(xi)/xi^{2k+1} - A_k/eta(1+xi)^{2k+1} ],
# valid on |xi| < 1; generated by tools/gen_series_coefficients.py.
_T0_SERIES = (
    -0.3333333333333333, 0.08333333333333333, -0.04259259259259259,
    0.027237654320987653, -0.01947751322751323, 0.01489620076425632,
    -0.011915478640015678, 0.009842230520037232, -0.008328093512180232,
    0.007180348385069859, -0.006284419272101214, 0.005568252617885114,
)
_T1_SERIES = (
    -0.001851851851851852, -0.003472222222222222, 0.0038029100529100527,
    -0.003429049088771311, 0.002988131981187537, -0.0025972581998334313,
    0.002270865542818775, -0.002001612631813119, 0.001778942744616595,
    -0.0015934139242758903, 0.001437430583748347, -0.001305075568638374,
)
_T2_SERIES = (
    0.004133597883597883, -0.0026813271604938273, 0.001665380658436214,
    -0.0010337630744170097, 0.0006389022577454934, -0.00038609516577918284,
    0.0002202535342409278, -0.000109183361550253, 3.3580519000456503e-05,
    1.8474582461357378e-05, -5.4551992134340815e-05, 7.95842560994561e-05,
)

# eta(1+xi)/xi Taylor coefficients (same generator).
_ETA_SERIES = (1.0, -1.0 / 3.0, 7.0 / 36.0, -73.0 / 540.0, 1331.0 / 12960.0)

# Scaled-gamma Stirling series Gamma*(n) ~ sum_k g_k n^-k.
_GAMMA_STAR_SERIES = (
    1.0,
    1.0 / 12.0,
    1.0 / 288.0,
    -139.0 / 51840.0,
    -571.0 / 2488320.0,
    163879.0 / 209018880.0,
)


@dataclass(frozen=True)
class ExpansionTables:
    """Coefficient tables for the asymptotic expansions.

    temme_a holds the q_k coefficient triangle (q_k(x) = sum_l a_kl x^l);
    k <= 1 and the constant of q_2 are classical, the rest of q_2 follows
    from consistency with the fixed-ratio expansion through the Stirling
    series of Gamma*.
    """

    temme_a: dict = field(default_factory=lambda: {
        (0, 0): Fraction(1),
        (1, 0): Fraction(1), (1, 1): Fraction(1), (1, 2): Fraction(1, 12),
        (2, 0): Fraction(3), (2, 1): Fraction(5), (2, 2): Fraction(25, 12),
        (2, 3): Fraction(1, 12), (2, 4): Fraction(1, 288),
    })
    gamma_star_series: tuple = _GAMMA_STAR_SERIES
    bracket_series: tuple = (_T0_SERIES, _T1_SERIES, _T2_SERIES)
    eta_series: tuple = _ETA_SERIES

    def normal_tail_coeff(self, k: int) -> int:
        """A_k = 2^k Gamma(k + 1/2)/Gamma(1/2) = (2k-1)!!."""
        if k < 0:
            raise DomainError("coefficient index must be >= 0")
        return _double_factorial_odd(k)

    def temme_q(self, k: int, xi: float) -> float:
        """The polynomial q_k(xi), degree 2k, k <= 2."""
        if k == 0:
            return 1.0
        if k == 1:
            return 1.0 + xi + xi * xi / 12.0
        if k == 2:
            return 3.0 + xi * (5.0 + xi * (25.0 / 12.0 + xi * (1.0 / 12.0 + xi / 288.0)))
        raise ValidityError(f"q_{k} coefficients are not tabulated (k <= 2)")

    def tricomi_b(self, k: int, r: float) -> float:
        """b_k(r) of the fixed-ratio expansion, r = a/x, k <= 2."""
        u = 1.0 - r
        if k == 0:
            return 1.0 / u
        if k == 1:
            return -1.0 / u ** 3
        if k == 2:
            return (r + 2.0) / u ** 5
        raise ValidityError(f"b_{k} is not tabulated (k <= 2)")


TABLES = ExpansionTables()


class EvalStrategy(enum.Enum):
    AUTO = "auto"
    EXACT_SUM = "exact_sum"
    LOWER_SERIES = "lower_series"
    UPPER_CF = "upper_cf"
    TEMME_UNIFORM = "temme_uniform"


# ----------------------------------------------------------------------
# elementary pieces


def _polyval(coeffs, x: float) -> float:
    out = 0.0
    for c in reversed(coeffs):
        out = out * x + c
    return out


def eta(lam: float, thresholds: Thresholds = DEFAULT) -> float:
    """Saddle coordinate eta(lam) = sign(lam-1) sqrt(2 (lam - 1 - log lam)).

    Monotone increasing on (0, inf), zero at lam = 1, and satisfying
    eta^2/2 = lam - 1 - log(lam) identically.  Near lam = 1 the direct
    form loses everything to cancellation, so |lam - 1| below the
    configured cutoff switches to the Taylor form
    eta = xi (1 - xi/3 + 7 xi^2/36 - 73 xi^3/540 + ...).
    """
    if not (lam > 0.0) or math.isinf(lam):
        raise DomainError(f"eta requires finite lam > 0, got {lam!r}")
    xi = lam - 1.0
    if abs(xi) < thresholds.eta_taylor_cutoff:
        return xi * (1.0 + xi * (_ETA_SERIES[1] + xi * (_ETA_SERIES[2] + xi * _ETA_SERIES[3])))
    t = xi - math.log1p(xi)
    return math.copysign(math.sqrt(2.0 * t), xi)


def _log_gamma_star_direct(n: float) -> float:
    return 0.5 * math.log(n / (2.0 * math.pi)) + n - n * math.log(n) + math.lgamma(n)


def gamma_star_minus_one(n: float) -> float:
    """Gamma*(n) - 1, kept at full relative accuracy.

    For n >= 128 the Stirling series 1/(12n) + 1/(288n^2) - ... is both
    cheaper and far more accurate than exponentiating the log form, whose
    absolute error grows like n log(n) * eps.
    """
    if not (n > 0.0):
        raise DomainError(f"gamma_star requires n > 0, got {n!r}")
    if n >= 128.0:
        inv = 1.0 / n
        out = 0.0
        for g in reversed(_GAMMA_STAR_SERIES[1:]):
            out = (out + g) * inv
        return out
    return math.expm1(_log_gamma_star_direct(n))


def gamma_star(n: float) -> float:
    """Scaled gamma function Gamma*(n) = sqrt(n/2pi) e^n n^-n Gamma(n).

    Decreases monotonically to 1 and equals 1 + 1/(12n) + O(n^-2).
    """
    return 1.0 + gamma_star_minus_one(n)


def log_gamma_star(n: float) -> float:
    return math.log1p(gamma_star_minus_one(n))


def normal_pdf(x: float) -> float:
    return math.exp(-0.5 * x * x) / _SQRT_2PI


def _tail_asymptotic_factor(x: float) -> float:
    """sum_k (-1)^k A_k / x^2k truncated at its smallest term, x > 8."""
    inv2 = 1.0 / (x * x)
    term = 1.0
    total = 1.0
    prev = 1.0
    for k in range(1, 80):
        term *= -(2 * k - 1) * inv2
        if abs(term) >= prev:
            break
        total += term
        prev = abs(term)
        if prev <= 1.0e-18 * abs(total):
            break
    return total


def normal_tail(x: float) -> float:
    """Upper standard normal tail Phibar(x) = P(N(0,1) > x).

    erfc carries |x| <= 8 at full precision; beyond that the large-argument
    expansion Phibar(x) = phi(x)/x sum_k (-1)^k A_k x^-2k (A_k = (2k-1)!!)
    is truncated at its smallest term, which at x = 8 already reaches
    machine precision.
    """
    if math.isnan(x) or math.isinf(x):
        raise DomainError(f"normal_tail requires finite x, got {x!r}")
    if x > 8.0:
        return normal_pdf(x) / x * _tail_asymptotic_factor(x)
    if x < -8.0:
        return 1.0 - normal_tail(-x)
    return 0.5 * math.erfc(x / math.sqrt(2.0))


def log_normal_tail(x: float) -> float:
    """log Phibar(x), accurate into the far upper tail."""
    if math.isnan(x) or math.isinf(x):
        raise DomainError(f"log_normal_tail requires finite x, got {x!r}")
    if x <= 8.0:
        return math.log(normal_tail(x))
    return -0.5 * x * x - 0.5 * _LOG_2PI - math.log(x) + math.log(_tail_asymptotic_factor(x))


# ----------------------------------------------------------------------
# uniform asymptotic expansion (large a)


def _brackets(xi: float, thresholds: Thresholds) -> tuple:
    """T_0, T_1, T_2 at xi; Taylor form near 0, direct formula otherwise."""
    if abs(xi) < thresholds.temme_xi_series_cutoff:
        return (_polyval(_T0_SERIES, xi),
                _polyval(_T1_SERIES, xi),
                _polyval(_T2_SERIES, xi))
    e = eta(1.0 + xi, thresholds)
    e3 = e * e * e
    e5 = e3 * e * e
    x3 = xi * xi * xi
    x5 = x3 * xi * xi
    return (1.0 / xi - 1.0 / e,
            1.0 / e3 - TABLES.temme_q(1, xi) / x3,
            TABLES.temme_q(2, xi) / x5 - 3.0 / e5)


def _temme_log_q(a: float, x: float, n_terms: int,
                 thresholds: Thresholds) -> tuple:
    """log Q(a, x) by the uniform expansion; returns (log_q, trunc_estimate).

    trunc_estimate is the relative size of the first omitted term,
    extrapolated geometrically from the last two kept terms (the k = 3
    coefficients are not tabulated).
    """
    lam = x / a
    e = eta(lam, thresholds)
    z = math.sqrt(a) * e
    xi = lam - 1.0

    if z > thresholds.temme_eta_switch:
        # Exponentially scaled form: every retained piece is O(1/xi).
        w = a * xi * xi
        terms = [1.0]
        if n_terms >= 2:
            terms.append(-TABLES.temme_q(1, xi) / w)
        if n_terms >= 3:
            terms.append(TABLES.temme_q(2, xi) / (w * w))
        shat = math.fsum(terms)
        if len(terms) >= 2:
            ratio = abs(terms[-1]) / abs(terms[-2]) if terms[-2] != 0.0 else 1.0
            estimate = abs(terms[-1]) * min(1.0, ratio) / abs(shat)
        else:
            estimate = 1.0 / w
        log_q = -0.5 * a * e * e - 0.5 * math.log(2.0 * math.pi * a) \
            + math.log(shat) - math.log(xi)
        return log_q, estimate

    phibar = normal_tail(z)
    try:
        w = math.exp(-0.5 * a * e * e) / math.sqrt(2.0 * math.pi * a)
    except OverflowError:
        w = 0.0
    t = _brackets(xi, thresholds)
    terms = [t[k] / a ** k for k in range(n_terms)]
    corr = math.fsum(terms)
    q = phibar + w * corr
    if len(terms) >= 2 and terms[-2] != 0.0:
        nxt = abs(terms[-1]) * min(1.0, abs(terms[-1]) / abs(terms[-2]))
    else:
        nxt = abs(terms[0]) / a
    estimate = w * nxt / q if q > 0.0 else math.inf
    return math.log(q), estimate


def temme_uniform_q(a: float, x: float, n_terms: int = 3,
                    thresholds: Thresholds = DEFAULT) -> float:
    """Q(a, x) by the uniform large-a expansion with n_terms corrections.

    Valid for a >= 10 and any x >= 0; relative accuracy improves like
    a^-n_terms uniformly in x/a.  Emits PrecisionWarning when the estimated
    truncation error exceeds 1e-6.  Underflows to 0 for extreme upper
    tails; use log_reg_gamma_q for those.
    """
    _check_temme_args(a, x, n_terms)
    if x == 0.0:
        return 1.0
    log_q, estimate = _temme_log_q(a, x, n_terms, thresholds)
    if estimate > TRUNCATION_WARN_LEVEL:
        warnings.warn(
            f"uniform expansion truncation ~{estimate:.2e} at a={a}, x={x}",
            PrecisionWarning, stacklevel=2)
    try:
        return math.exp(log_q)
    except OverflowError:  # pragma: no cover - log Q <= 0 always
        raise ArithmeticError("log Q came out positive")


def _check_temme_args(a: float, x: float, n_terms: int) -> None:
    if not (a >= 10.0):
        raise ValidityError(f"uniform expansion requires a >= 10, got a={a!r}")
    if not (x >= 0.0) or math.isnan(x) or math.isinf(x):
        raise DomainError(f"x must be finite and >= 0, got {x!r}")
    if n_terms not in (1, 2, 3):
        raise ValidityError(f"n_terms must be 1, 2, or 3, got {n_terms!r}")


def temme_scaled_sum(a: float, xi: float, n_terms: int = 3) -> float:
    """The scaled tail sum with the leading 1/xi factored out:

        Shat = 1 - q_1(xi)/(a xi^2) + q_2(xi)/(a xi^2)^2

    so that sqrt(2 pi a) e^{a eta^2/2} Q(a, a(1+xi)) = Shat/xi.  Exposed for
    callers that need the Poisson-tail ratio H_n without ever forming the
    exponential factors (mean/variance assembly at large n).
    """
    if xi <= 0.0:
        raise ValidityError("scaled tail sum requires xi > 0")
    return 1.0 + temme_scaled_sum_tail(a, xi, n_terms)


def temme_scaled_sum_tail(a: float, xi: float, n_terms: int = 3) -> float:
    """Shat - 1, kept separate so callers combining it with other small
    corrections (Gamma*(n) - 1) never round through the leading 1."""
    w = a * xi * xi
    out = 0.0
    if n_terms >= 2:
        out -= TABLES.temme_q(1, xi) / w
    if n_terms >= 3:
        out += TABLES.temme_q(2, xi) / (w * w)
    return out


# ----------------------------------------------------------------------
# fixed-ratio asymptotic expansion (x/a bounded away from 1)


def tricomi_gamma_q(a: float, x: float, n_terms: int = 3,
                    thresholds: Thresholds = DEFAULT) -> LogScaleValue:
    """Gamma(a) Q(a, x) = x^{a-1} e^-x [ b_0(a/x) + b_1(a/x)/x + ... ]
    on the log scale, for x/a >= 1.05 (configurable).

    b_0(r) = 1/(1-r), b_1(r) = -1/(1-r)^3, b_2(r) = (r+2)/(1-r)^5.  This is
    an expansion in 1/x at fixed ratio, so accuracy needs x large as well
    as the ratio bound; the truncation estimate warns when it looks coarse.
    """
    if not (a > 0.0) or not (x > 0.0):
        raise DomainError(f"fixed-ratio expansion requires a > 0 and x > 0, "
                          f"got a={a!r}, x={x!r}")
    if n_terms not in (1, 2, 3):
        raise ValidityError(f"n_terms must be 1, 2, or 3, got {n_terms!r}")
    ratio = x / a
    if ratio < thresholds.tricomi_min_ratio:
        raise ValidityError(
            f"x/a = {ratio:.6g} below the validity cutoff "
            f"{thresholds.tricomi_min_ratio}")
    r = a / x
    terms = [TABLES.tricomi_b(k, r) / x ** k for k in range(n_terms)]
    total = math.fsum(terms)
    if len(terms) >= 2 and terms[-2] != 0.0:
        estimate = abs(terms[-1]) * min(1.0, abs(terms[-1]) / abs(terms[-2]))
    else:
        estimate = abs(terms[0]) / x
    if total <= 0.0:
        raise ValidityError(
            f"expansion diverged at a={a}, x={x} (x too small)")
    if estimate / total > TRUNCATION_WARN_LEVEL:
        warnings.warn(
            f"fixed-ratio expansion truncation ~{estimate / total:.2e} "
            f"at a={a}, x={x}", PrecisionWarning, stacklevel=2)
    return LogScaleValue((a - 1.0) * math.log(x) - x + math.log(total), 1)


# ----------------------------------------------------------------------
# strategy dispatch


def _auto_log_q(a: float, x: float, thresholds: Thresholds) -> float:
    if a <= thresholds.exact_sum_max_a and a == math.floor(a):
        return core.log_q_exact_sum(int(a), x)
    if a > thresholds.cf_max_a:
        return _temme_log_q(a, x, 3, thresholds)[0]
    if x < a + 1.0:
        return core.log_q_lower_series(a, x)
    return core.log_q_upper_cf(a, x)


def log_reg_gamma_q(a: float, x: float,
                    strategy: EvalStrategy = EvalStrategy.AUTO,
                    n_terms: int = 3,
                    thresholds: Thresholds = DEFAULT) -> float:
    """log Q(a, x); -inf when a = 0 (the Q(0, x > 0) := 0 convention)."""
    _check_q_domain(a, x)
    if a == 0.0:
        return float("-inf")
    if x == 0.0:
        return 0.0
    if strategy is EvalStrategy.AUTO:
        return _auto_log_q(a, x, thresholds)
    if strategy is EvalStrategy.EXACT_SUM:
        if a != math.floor(a):
            raise ValidityError(f"exact summation needs integer a, got {a!r}")
        return core.log_q_exact_sum(int(a), x)
    if strategy is EvalStrategy.LOWER_SERIES:
        return core.log_q_lower_series(a, x)
    if strategy is EvalStrategy.UPPER_CF:
        return core.log_q_upper_cf(a, x)
    if strategy is EvalStrategy.TEMME_UNIFORM:
        _check_temme_args(a, x, n_terms)
        log_q, estimate = _temme_log_q(a, x, n_terms, thresholds)
        if estimate > TRUNCATION_WARN_LEVEL:
            warnings.warn(
                f"uniform expansion truncation ~{estimate:.2e} at a={a}, x={x}",
                PrecisionWarning, stacklevel=2)
        return log_q
    raise DomainError(f"unknown strategy {strategy!r}")


def reg_gamma_q(a: float, x: float,
                strategy: EvalStrategy = EvalStrategy.AUTO,
                n_terms: int = 3,
                thresholds: Thresholds = DEFAULT) -> float:
    """Regularized upper incomplete gamma Q(a, x) in [0, 1].

    Q(a, 0) = 1, Q is strictly decreasing in x and increasing in a, and
    Q(0, x > 0) = 0 by convention (empty Poisson sum).  Strategy AUTO picks
    exact summation for integer a <= 64, the lower series for x < a + 1,
    the continued fraction for x >= a + 1 up to a = 1e4, and the uniform
    asymptotic expansion beyond; all cutoffs live in config.Thresholds.
    """
    lq = log_reg_gamma_q(a, x, strategy, n_terms, thresholds)
    if lq == float("-inf"):
        return 0.0
    return math.exp(min(lq, 0.0))


def _check_q_domain(a: float, x: float) -> None:
    if math.isnan(a) or math.isnan(x) or math.isinf(a) or math.isinf(x):
        raise DomainError(f"arguments must be finite, got a={a!r}, x={x!r}")
    if a < 0.0:
        raise DomainError(f"a must be >= 0, got {a!r}")
    if x < 0.0:
        raise DomainError(f"x must be >= 0, got {x!r}")
    if a == 0.0 and x == 0.0:
        raise DomainError("Q(0, 0) is undefined")
