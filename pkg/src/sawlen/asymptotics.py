"""Leading-order behavior of the walk-length law along fugacity paths.

A path fixes a pair (alpha, beta) and runs the per-step fugacity with the
system size as z_n = 1/lam_n, lam_n = 1 + alpha * n^-beta.  How the mean
walk length grows then depends only on which of six regimes the pair
falls in, ranging from ballistic (|alpha| n, deep low temperature) down
to bounded (1/alpha, deep high temperature) with square-root behavior in
the critical window between.  This module classifies paths, evaluates the
closed-form leading-order mean and variance per regime, and evaluates the
sharper expansions available for 1/H_n, the normalizing tail ratio from
the exact law.

Conventions used throughout: X is a standard normal random variable,
phi / Phi-bar its density and upper tail, and r(a) = phi(a)/Phi-bar(a)
the hazard ratio, so that E(X | X > a) = r(a) and
var(X | X > a) = 1 + r(a)(a - r(a)).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .config import DEFAULT, Thresholds
from .errors import DomainError, ValidityError
from .gamma import eta, log_normal_tail, normal_pdf, normal_tail
from .saw import SawEnsemble

_LOG_2PI = math.log(2.0 * math.pi)

# Above this the linear ratio phi/Phi-bar risks denormals; switch to logs.
_HAZARD_LOG_SWITCH = 30.0


@dataclass(frozen=True)
class FugacityPath:
    """Fugacity schedule z_n = 1/(1 + alpha * n^-beta)."""

    alpha: float
    beta: float

    def __post_init__(self):
        a, b = self.alpha, self.beta
        if not isinstance(a, (int, float)) or isinstance(a, bool) \
                or math.isnan(a) or math.isinf(a):
            raise DomainError(f"alpha must be a finite real, got {a!r}")
        if not isinstance(b, (int, float)) or isinstance(b, bool) \
                or math.isnan(b) or math.isinf(b) or b < 0:
            raise DomainError(f"beta must be a finite real >= 0, got {b!r}")
        if b == 0 and a <= -1:
            raise ValidityError(
                f"beta = 0 requires alpha > -1 (alpha = {a} makes the "
                f"activity ratio nonpositive)")

    def lam_at(self, n: int) -> float:
        """Activity ratio lam_n = 1 + alpha n^-beta (must be positive)."""
        _require_size(n, minimum=1)
        lam = 1.0 + self.alpha * float(n) ** -self.beta
        if lam <= 0.0:
            raise ValidityError(
                f"path (alpha={self.alpha}, beta={self.beta}) gives "
                f"nonpositive activity ratio at n = {n}")
        return lam

    def z_at(self, n: int) -> float:
        return 1.0 / self.lam_at(n)

    def nu_at(self, n: int) -> float:
        return n * self.lam_at(n)

    def ensemble_at(self, n: int) -> SawEnsemble:
        return SawEnsemble(n, self.z_at(n))


class Regime(enum.Enum):
    LOW_TEMP = "low-temp"
    LOW_TEMP_WINDOW = "low-temp-window"
    BOUNDARY = "boundary"
    CRITICAL_WINDOW = "critical-window"
    HIGH_TEMP_WINDOW = "high-temp-window"
    HIGH_TEMP = "high-temp"


def classify(path: FugacityPath) -> Regime:
    """Map a path to its unique regime.

    alpha = 0 always lands in the critical window regardless of beta: the
    activity ratio is identically 1, so every such path runs the same
    ensemble sequence and must classify the same way.
    """
    a, b = path.alpha, path.beta
    if a == 0 or b > 0.5:
        return Regime.CRITICAL_WINDOW
    if b == 0.5:
        return Regime.BOUNDARY
    if b == 0:
        return Regime.HIGH_TEMP if a > 0 else Regime.LOW_TEMP
    return Regime.HIGH_TEMP_WINDOW if a > 0 else Regime.LOW_TEMP_WINDOW


def conditional_normal_moments(alpha: float) -> tuple[float, float]:
    """(mean, variance) of a standard normal conditioned to exceed alpha.

    mean = r(alpha) = phi(alpha)/Phi-bar(alpha), variance =
    1 + r (alpha - r).  The ratio moves to log space once alpha is large
    enough for the linear tail to flirt with underflow.
    """
    if math.isnan(alpha) or math.isinf(alpha):
        raise DomainError(f"alpha must be finite, got {alpha!r}")
    if alpha <= _HAZARD_LOG_SWITCH:
        r = normal_pdf(alpha) / normal_tail(alpha)
    else:
        log_pdf = -0.5 * alpha * alpha - 0.5 * _LOG_2PI
        r = math.exp(log_pdf - log_normal_tail(alpha))
    return r, 1.0 + r * (alpha - r)


# Shared evaluation of the critical-window coefficients: the boundary
# formulas at alpha = 0 must coincide bit for bit with the critical-window
# ones, so both go through conditional_normal_moments(0).  The values are
# sqrt(2/pi) and 1 - 2/pi.
_CRITICAL_MEAN_COEFF, _CRITICAL_VAR_COEFF = conditional_normal_moments(0.0)


def _require_size(n, minimum: int = 2) -> None:
    if not isinstance(n, int) or isinstance(n, bool) or n < minimum:
        raise DomainError(f"n must be an integer >= {minimum}, got {n!r}")


def asymptotic_mean(path: FugacityPath, n: int) -> float:
    """Leading-order E L_n along the path."""
    _require_size(n)
    a, b = path.alpha, path.beta
    regime = classify(path)
    if regime is Regime.LOW_TEMP:
        return abs(a) * n
    if regime is Regime.LOW_TEMP_WINDOW:
        return abs(a) * float(n) ** (1.0 - b)
    if regime is Regime.BOUNDARY:
        r, _ = conditional_normal_moments(a)
        return (r - a) * math.sqrt(n)
    if regime is Regime.CRITICAL_WINDOW:
        return _CRITICAL_MEAN_COEFF * math.sqrt(n)
    if regime is Regime.HIGH_TEMP_WINDOW:
        return float(n) ** b / a
    return 1.0 / a


def asymptotic_variance(path: FugacityPath, n: int) -> float:
    """Leading-order var L_n along the path."""
    _require_size(n)
    a, b = path.alpha, path.beta
    regime = classify(path)
    if regime is Regime.LOW_TEMP:
        return (1.0 + a) * n
    if regime is Regime.LOW_TEMP_WINDOW:
        return float(n)
    if regime is Regime.BOUNDARY:
        _, v = conditional_normal_moments(a)
        return v * n
    if regime is Regime.CRITICAL_WINDOW:
        return _CRITICAL_VAR_COEFF * n
    if regime is Regime.HIGH_TEMP_WINDOW:
        return float(n) ** (2.0 * b) / (a * a)
    return (1.0 + a) / (a * a)


def log_h_n_asymptotic(path: FugacityPath, n: int,
                       thresholds: Thresholds = DEFAULT) -> float:
    """log of h_n_asymptotic, finite even where the low-temperature decay
    underflows a double."""
    _require_size(n)
    a, b = path.alpha, path.beta
    regime = classify(path)
    if regime in (Regime.LOW_TEMP, Regime.LOW_TEMP_WINDOW):
        # pre-limit form sqrt(n/2pi) e^{-n eta^2/2}: the exact exponent of
        # the proof, asymptotically equivalent to the displayed one
        e = eta(path.lam_at(n), thresholds)
        return 0.5 * (math.log(n) - _LOG_2PI) - 0.5 * n * e * e
    if regime is Regime.BOUNDARY:
        r, _ = conditional_normal_moments(a)
        return math.log(r) + 0.5 * math.log(n)
    if regime is Regime.CRITICAL_WINDOW:
        return math.log(_CRITICAL_MEAN_COEFF) + 0.5 * math.log(n)
    if regime is Regime.HIGH_TEMP_WINDOW:
        bracket = 1.0 + float(n) ** (2.0 * b - 1.0) / (a * a) \
            - 2.0 * float(n) ** (4.0 * b - 2.0) / a ** 4
        if b <= 1.0 / 3.0:
            bracket += float(n) ** (b - 1.0) / a
        return _log_of_expansion(a * float(n) ** (1.0 - b), bracket, n)
    bracket = 1.0 + (1.0 + a) / (a * a * n) \
        - (1.0 + a) * (2.0 + a) / (a ** 4 * float(n) ** 2)
    return _log_of_expansion(a * n, bracket, n)


def _log_of_expansion(scale: float, bracket: float, n: int) -> float:
    if bracket <= 0.0:
        raise DomainError(
            f"correction terms overwhelm the leading order at n = {n}; "
            f"the expansion is out of its asymptotic range")
    return math.log(scale) + math.log(bracket)


def h_n_asymptotic(path: FugacityPath, n: int,
                   thresholds: Thresholds = DEFAULT) -> float:
    """Leading-order 1/H_n(n lam_n) along the path, with every displayed
    correction term included.

    Low-temperature cases decay like e^{-const n^(1-2 beta)} and are
    evaluated through the pre-limit exponent -n eta^2/2 (see
    decay_exponent_literal for the displayed limit exponent); the deep
    high-temperature case carries its 1/n and 1/n^2 corrections, the
    high-temperature window its three displayed correction terms.  The
    result can underflow to 0.0 deep in the low-temperature regimes;
    log_h_n_asymptotic stays finite there.
    """
    lg = log_h_n_asymptotic(path, n, thresholds)
    try:
        return math.exp(lg)
    except OverflowError:
        return math.inf


def decay_exponent_literal(path: FugacityPath, n: int) -> float:
    """The displayed low-temperature decay exponent, for reporting.

    LowTemp: -n (alpha - log(1+alpha)); LowTempWindow: -(alpha^2/2)
    n^{1-2 beta}.  These are the n -> infinity limits of the pre-limit
    exponent -n eta^2/2 that h_n_asymptotic actually uses.
    """
    _require_size(n)
    regime = classify(path)
    a, b = path.alpha, path.beta
    if regime is Regime.LOW_TEMP:
        return -n * (a - math.log1p(a))
    if regime is Regime.LOW_TEMP_WINDOW:
        return -0.5 * a * a * float(n) ** (1.0 - 2.0 * b)
    raise DomainError(
        f"no literal decay exponent outside the low-temperature regimes "
        f"(path classifies as {regime.value})")
