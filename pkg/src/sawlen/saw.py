"""Exact walk-length law on the complete graph.

With n vertices and fugacity z > 0 per step, a variable-length
self-avoiding walk from a fixed root has probability proportional to
(z/n)^L(w) for a walk w of length L(w).  There are (n-1)!/(n-1-k)! walks
of length k, which collapses the length law to a conditioned Poisson:
writing nu = n/z and J = n - 1 - L,

    P(L = n - 1 - j) = e^-nu nu^j / ( j! * Q(n, nu) ),   0 <= j <= n - 1,

where Q(n, nu) = e^-nu sum_{j<n} nu^j/j! is the regularized upper
incomplete gamma function at integer first argument.  Tail probabilities
telescope to ratios of Q values,

    P(L > x) = Q(n - floor(x) - 1, nu) / Q(n, nu),   0 <= x < n - 1,

and moments come from the normalized tail ratio

    H_n(nu) = Gamma(n) Q(n, nu) / (nu^n e^-nu),
    E L   = n - 1 - nu + 1/H_n(nu),
    var L = nu + (nu - n)/H_n(nu) - 1/H_n(nu)^2.

Those closed forms hide violent cancellation when nu >> n (both sides are
~ nu - n with an O(1) answer), so the moment evaluators prefer summing the
model weights w_k = (n-1)(n-2)...(n-k)/nu^k directly: the weights are
positive, W = sum w_k equals nu/H_n exactly, and they decay inside
O(sqrt(n)) terms whenever the Poisson peak sits at or above the support
top.  The Q-based closed forms take over in the low-temperature zone where
the correction 1/H_n is negligible anyway.  Everything is carried in log
space so n ~ 1e8 works.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .backend import core
from .config import DEFAULT, Thresholds
from .errors import DomainError, SizeError
from .gamma import eta, log_gamma_star, log_reg_gamma_q, temme_scaled_sum
from .logspace import LogScaleValue

_LOG_2PI = math.log(2.0 * math.pi)

# Truncated weight summation stops once the running tail is provably below
# this relative level; _WEIGHT_SUM_BUDGET caps how many terms it may touch
# before falling back to the closed forms.
_WEIGHT_TAIL_LOG = -50.0
_WEIGHT_SUM_BUDGET = 4_000_000


@dataclass(frozen=True)
class SawEnsemble:
    """The (n, z) ensemble: complete graph on n vertices, fugacity z."""

    n: int
    z: float

    def __post_init__(self):
        if not isinstance(self.n, int) or isinstance(self.n, bool) or self.n < 1:
            raise DomainError(f"n must be an integer >= 1, got {self.n!r}")
        z = self.z
        if not isinstance(z, (int, float)) or isinstance(z, bool) \
                or math.isnan(z) or math.isinf(z) or z <= 0:
            raise DomainError(f"z must be a finite positive number, got {z!r}")

    @property
    def nu(self) -> float:
        """The conditioned-Poisson rate nu = n/z."""
        return self.n / self.z


def walk_count(n: int, k: int) -> LogScaleValue:
    """Number of self-avoiding walks of length k from a fixed root,
    (n-1)!/(n-1-k)!, on the log scale."""
    if not isinstance(n, int) or not isinstance(k, int):
        raise DomainError("walk_count takes integers")
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    if k < 0 or k > n - 1:
        raise DomainError(f"length {k} outside the support [0, {n - 1}]")
    return LogScaleValue(math.lgamma(n) - math.lgamma(n - k), 1)


# ----------------------------------------------------------------------
# pointwise pmf / tail


def pmf(ens: SawEnsemble, k: int, thresholds: Thresholds = DEFAULT) -> float:
    """P(L = k) for the walk-length law of the ensemble."""
    if k != math.floor(k):
        raise DomainError(f"k must be an integer, got {k!r}")
    return math.exp(log_pmf(ens, int(k), thresholds))


def log_pmf(ens: SawEnsemble, k: int, thresholds: Thresholds = DEFAULT) -> float:
    """log P(L = k); the conditioned-Poisson form keeps this finite
    everywhere on the support."""
    if k < 0 or k > ens.n - 1:
        raise DomainError(f"length {k} outside the support [0, {ens.n - 1}]")
    nu = ens.nu
    j = ens.n - 1 - k
    log_q = log_reg_gamma_q(ens.n, nu, thresholds=thresholds)
    return -nu + j * math.log(nu) - math.lgamma(j + 1.0) - log_q


def tail(ens: SawEnsemble, x: float, thresholds: Thresholds = DEFAULT) -> float:
    """P(L > x) = Q(n - floor(x) - 1, nu) / Q(n, nu).

    Both Q values can sit far below double underflow; the ratio is taken
    in log space, so this stays accurate at n ~ 1e8.
    """
    if math.isnan(x):
        raise DomainError("x is NaN")
    if x < 0.0:
        return 1.0
    if x >= ens.n - 1:
        return 0.0
    nu = ens.nu
    upper = log_reg_gamma_q(ens.n - int(math.floor(x)) - 1, nu,
                            thresholds=thresholds)
    lower = log_reg_gamma_q(ens.n, nu, thresholds=thresholds)
    return math.exp(min(upper - lower, 0.0))


# ----------------------------------------------------------------------
# truncated summation over the model weights

def _weight_term_estimate(n: int, nu: float) -> float:
    """Rough count of weight terms needed before the rest is negligible.

    The weights peak at k* = n - 1 - nu (or at 0 when nu >= n), spread
    ~ sqrt(nu) around the peak, and beyond it fall at least geometrically
    with ratio n/nu.
    """
    peak = max(0.0, (n - 1) - nu)
    spread = 12.0 * math.sqrt(max(nu, 16.0)) + 128.0
    if nu > n:
        geometric = 50.0 / math.log(nu / n) + 64.0
        spread = min(spread, geometric)
    return peak + spread


def _log_weights(n: int, nu: float, max_terms: int):
    """log w_k for k = 0 .. m-1 where w_k = (n-1)...(n-k)/nu^k, with m
    chosen so the omitted terms are negligible (or m = n, the full
    support).  None when that would take more than max_terms terms."""
    est = _weight_term_estimate(n, nu)
    if min(est, n) > max_terms:
        return None
    m = int(min(n, est))
    while True:
        ks = np.arange(1, m, dtype=np.float64)
        log_w = np.concatenate((
            [0.0], np.cumsum(np.log(n - ks) - math.log(nu))))
        if m >= n or log_w[-1] - log_w.max() <= _WEIGHT_TAIL_LOG:
            return log_w
        if m * 4 > max_terms:
            return None
        m = min(n, m * 4)


def _summed_moments(n: int, nu: float, max_terms: int, force: bool = False):
    """(log W, mean, variance) of the walk-length law by direct summation
    of w_k = (n-1)...(n-k)/nu^k, or None when the closed forms are the
    better tool.

    Every term is positive, so nothing cancels; the result is exact to a
    few ulps.  W = sum_k w_k relates to the tail ratio by W = nu/H_n(nu).
    Worth doing when the weight peak k* = n - 1 - nu sits within a few
    standard deviations of k = 0 (then only O(sqrt(n)) terms matter) or
    when n is small enough to sum outright; once the peak is deep inside
    the support, 1/H_n is exponentially negligible and the closed forms
    are exact on their own, so long noisy sums buy nothing.  force skips
    that economy judgement (for callers who asked for the sum by name)
    but never the term budget.
    """
    if not force and nu < n - 8.0 * math.sqrt(n) and n > 100_000:
        return None
    log_w = _log_weights(n, nu, max_terms)
    if log_w is None:
        return None
    shift = log_w.max()
    w = np.exp(log_w - shift)
    total = float(w.sum())
    k_all = np.arange(log_w.size, dtype=np.float64)
    mean = float(np.dot(w, k_all)) / total
    var = float(np.dot(w, (k_all - mean) ** 2)) / total
    return shift + math.log(total), mean, var


# ----------------------------------------------------------------------
# normalized tail ratio H_n


def log_h_n(n: int, nu: float, thresholds: Thresholds = DEFAULT,
            form: str = "auto") -> float:
    """log H_n(nu), H_n = Gamma(n) Q(n, nu) / (nu^n e^-nu).

    form selects the assembly:

      "direct"  the definition, via lgamma(n) and log Q(n, nu);
      "eta"     H_n(n lam) = sqrt(2 pi/n) e^{n eta(lam)^2/2} Gamma*(n)
                Q(n, n lam), whose exponent is well conditioned near
                lam = 1 (and collapses analytically against the scaled
                expansion of Q once sqrt(n) eta is large);
      "sum"     log(W/nu) with W the weight sum, exact but only cheap
                when the Poisson peak is near or above the support top;
      "auto"    "sum" when cheap, else "eta" for 0.5 <= nu/n <= 2,
                else "direct".

    All forms agree to within their documented accuracy; tests pin the
    eta/direct pair against each other and against "sum".
    """
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    if not (nu > 0.0) or math.isinf(nu):
        raise DomainError(f"nu must be finite and > 0, got {nu!r}")
    lam = nu / n
    if form == "auto":
        got = _summed_moments(n, nu, _WEIGHT_SUM_BUDGET)
        if got is not None:
            return got[0] - math.log(nu)
        form = "eta" if 0.5 <= lam <= 2.0 else "direct"
    if form == "sum":
        got = _summed_moments(n, nu, _WEIGHT_SUM_BUDGET, force=True)
        if got is None:
            raise SizeError(
                f"weight summation for n={n}, nu={nu} exceeds the "
                f"{_WEIGHT_SUM_BUDGET}-term budget")
        return got[0] - math.log(nu)
    if form == "eta":
        e = eta(lam, thresholds)
        if n > thresholds.cf_max_a and math.sqrt(n) * e > thresholds.temme_eta_switch:
            # the e^{n eta^2/2} factor cancels against the uniform
            # expansion of Q analytically; use the scaled sum directly
            xi = lam - 1.0
            shat = temme_scaled_sum(n, xi)
            return log_gamma_star(n) + math.log(shat / xi) - math.log(n)
        log_q = log_reg_gamma_q(n, nu, thresholds=thresholds)
        return 0.5 * (_LOG_2PI - math.log(n)) + 0.5 * n * e * e \
            + log_gamma_star(n) + log_q
    if form == "direct":
        log_q = log_reg_gamma_q(n, nu, thresholds=thresholds)
        return math.lgamma(n) + log_q - n * math.log(nu) + nu
    raise DomainError(f"unknown form {form!r}")


def h_n(n: int, nu: float, thresholds: Thresholds = DEFAULT,
        form: str = "auto") -> float:
    """H_n(nu) as a plain float (overflows to inf deep in the low-
    temperature regime, where log_h_n still works)."""
    lh = log_h_n(n, nu, thresholds, form)
    try:
        return math.exp(lh)
    except OverflowError:
        return math.inf


# ----------------------------------------------------------------------
# closed-form moments


def exact_mean(ens: SawEnsemble, thresholds: Thresholds = DEFAULT) -> float:
    """E L = n - 1 - nu + 1/H_n(nu), evaluated by weight summation when
    that is cheap and by the closed form otherwise."""
    got = _summed_moments(ens.n, ens.nu, _WEIGHT_SUM_BUDGET)
    if got is not None:
        return got[1]
    # Poisson peak far below the top: 1/H_n is exponentially small and
    # the closed form has no cancellation left in it.
    u = _inverse_h(ens.n, ens.nu, thresholds)
    return (ens.n - 1) - ens.nu + u


def exact_variance(ens: SawEnsemble, thresholds: Thresholds = DEFAULT) -> float:
    """var L = nu + (nu - n)/H_n(nu) - 1/H_n(nu)^2, same route split as
    exact_mean."""
    got = _summed_moments(ens.n, ens.nu, _WEIGHT_SUM_BUDGET)
    if got is not None:
        return got[2]
    u = _inverse_h(ens.n, ens.nu, thresholds)
    return ens.nu + u * ((ens.nu - ens.n) - u)


def _inverse_h(n: int, nu: float, thresholds: Thresholds) -> float:
    try:
        return math.exp(-log_h_n(n, nu, thresholds))
    except OverflowError:
        return math.inf


def exact_moment(ens: SawEnsemble, m: int,
                 thresholds: Thresholds = DEFAULT) -> float:
    """E L^m by direct summation over the support (needs n within the
    summation budget)."""
    if not isinstance(m, int) or m < 0:
        raise DomainError(f"moment order must be an integer >= 0, got {m!r}")
    if m == 0:
        return 1.0
    dist = distribution(ens, thresholds)
    lp = dist.log_pmf[1:]  # k = 0 contributes nothing for m >= 1
    k = np.arange(1, ens.n, dtype=np.float64)
    terms = lp + m * np.log(k)
    peak = terms.max()
    return float(math.exp(peak) * np.exp(terms - peak).sum())


# ----------------------------------------------------------------------
# whole-support table


@dataclass(frozen=True)
class LengthDistribution:
    """The full walk-length law tabulated over its support.

    log_pmf[k] = log P(L = k) for k = 0 .. n-1, and normalizer is the
    Poisson partition sum sum_{j<n} nu^j/j! = e^nu Q(n, nu) on the log
    scale (the quantity the pmf divides by before the e^-nu weight).
    """

    n: int
    nu: float
    log_pmf: np.ndarray
    normalizer: LogScaleValue

    @cached_property
    def pmf_values(self) -> np.ndarray:
        return np.exp(self.log_pmf)

    def mean(self) -> float:
        return float(np.dot(self.pmf_values, np.arange(self.n)))

    def variance(self) -> float:
        k = np.arange(self.n, dtype=np.float64)
        mu = self.mean()
        return float(np.dot(self.pmf_values, (k - mu) ** 2))

    def cdf_values(self) -> np.ndarray:
        return np.cumsum(self.pmf_values)


def distribution(ens: SawEnsemble,
                 thresholds: Thresholds = DEFAULT) -> LengthDistribution:
    """Tabulate the length law; O(n) time and memory."""
    if ens.n > thresholds.summation_max_n:
        raise SizeError(
            f"n = {ens.n} exceeds the summation budget "
            f"{thresholds.summation_max_n}")
    n, nu = ens.n, ens.nu
    log_q = log_reg_gamma_q(n, nu, thresholds=thresholds)
    log_fact = core.log_factorials(n)
    j = np.arange(n - 1, -1, -1, dtype=np.float64)  # j = n - 1 - k
    log_pmf = -nu + j * math.log(nu) - log_fact[::-1] - log_q
    return LengthDistribution(n=n, nu=nu, log_pmf=log_pmf,
                              normalizer=LogScaleValue(nu + log_q, 1))
