"""Distributional limits of the standardized walk length.

Each regime comes with a standardization kappa_n(y) mapping the limit
variable's axis onto the walk-length axis, and a limit law: suitably
centered and scaled, the length converges to a standard normal (low
temperature), a normal conditioned to exceed alpha (boundary), a
half-normal (critical window), a mean-1 exponential (high-temperature
window), or, for the length plus one, a geometric with mean 1 + 1/alpha
(deep high temperature).  ks_distance quantifies the convergence by
comparing the exact standardized CDF against the limit CDF over a
quantile-spanning grid.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .asymptotics import FugacityPath, Regime, classify
from .config import DEFAULT, Thresholds
from .errors import DomainError, GridError
from .gamma import log_normal_tail, normal_tail
from .saw import tail

_LOG_HALF = math.log(0.5)
_QUANTILE_LOW = 1.0e-3
_MIN_GRID_POINTS = 200
_MAX_LATTICE_POINTS = 4000


class LimitLaw:
    """Base class; concrete laws implement nothing beyond their fields,
    evaluation lives in limit_cdf."""

    def cdf(self, y: float) -> float:
        return limit_cdf(self, y)


@dataclass(frozen=True)
class StandardNormal(LimitLaw):
    pass


@dataclass(frozen=True)
class TruncatedNormal(LimitLaw):
    """Standard normal conditioned to exceed alpha."""

    alpha: float

    def __post_init__(self):
        if math.isnan(self.alpha) or math.isinf(self.alpha):
            raise DomainError(f"alpha must be finite, got {self.alpha!r}")


@dataclass(frozen=True)
class HalfNormal(LimitLaw):
    """|X| for standard normal X; identical to TruncatedNormal(0)."""


@dataclass(frozen=True)
class UnitExponential(LimitLaw):
    pass


@dataclass(frozen=True)
class ShiftedGeometric(LimitLaw):
    """Support {1, 2, ...}, P(W > y) = (1+alpha)^-floor(y), mean 1+1/alpha."""

    alpha: float

    def __post_init__(self):
        if not (self.alpha > 0) or math.isinf(self.alpha):
            raise DomainError(
                f"geometric limit needs alpha > 0, got {self.alpha!r}")


def _truncated_normal_cdf(alpha: float, y: float) -> float:
    if y <= alpha:
        return 0.0
    # 1 - Phi-bar(y)/Phi-bar(alpha), taken through logs so deep truncation
    # (alpha >> 0) keeps full precision
    return -math.expm1(log_normal_tail(y) - log_normal_tail(alpha))


def limit_cdf(law: LimitLaw, y: float) -> float:
    """CDF of a limit law at y."""
    if math.isnan(y):
        raise DomainError("y is NaN")
    if isinstance(law, StandardNormal):
        return normal_tail(-y)
    if isinstance(law, TruncatedNormal):
        return _truncated_normal_cdf(law.alpha, y)
    if isinstance(law, HalfNormal):
        return _truncated_normal_cdf(0.0, y)
    if isinstance(law, UnitExponential):
        return -math.expm1(-y) if y >= 0.0 else 0.0
    if isinstance(law, ShiftedGeometric):
        if y < 1.0:
            return 0.0
        return -math.expm1(-math.floor(y) * math.log1p(law.alpha))
    raise DomainError(f"unknown limit law {law!r}")


def law_for_regime(regime: Regime, alpha: float) -> LimitLaw:
    """The limiting law attached to a regime (alpha feeds the boundary
    and deep high-temperature laws)."""
    if regime in (Regime.LOW_TEMP, Regime.LOW_TEMP_WINDOW):
        return StandardNormal()
    if regime is Regime.BOUNDARY:
        return TruncatedNormal(alpha)
    if regime is Regime.CRITICAL_WINDOW:
        return HalfNormal()
    if regime is Regime.HIGH_TEMP_WINDOW:
        return UnitExponential()
    return ShiftedGeometric(alpha)


def quantile(law: LimitLaw, p: float) -> float:
    """Generalized inverse CDF by bracketing bisection."""
    if not (0.0 < p < 1.0):
        raise DomainError(f"quantile level must be in (0, 1), got {p!r}")
    lo, hi = -1.0, 1.0
    for _ in range(200):
        if limit_cdf(law, lo) <= p:
            break
        lo = 2.0 * lo - 1.0
    for _ in range(200):
        if limit_cdf(law, hi) >= p:
            break
        hi = 2.0 * hi + 1.0
    for _ in range(100):
        mid = 0.5 * (lo + hi)
        if limit_cdf(law, mid) < p:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


# ----------------------------------------------------------------------
# standardizations


def kappa(path: FugacityPath, n: int, y: float) -> float:
    """The walk-length level kappa_n(y) whose exceedance matches the limit
    variable exceeding y."""
    _require_n(n)
    a, b = path.alpha, path.beta
    regime = classify(path)
    if regime is Regime.LOW_TEMP:
        return abs(a) * n + y * math.sqrt((1.0 + a) * n)
    if regime is Regime.LOW_TEMP_WINDOW:
        return abs(a) * float(n) ** (1.0 - b) + y * math.sqrt(n)
    if regime is Regime.BOUNDARY:
        return (y - a) * math.sqrt(n)
    if regime is Regime.CRITICAL_WINDOW:
        return y * math.sqrt(n)
    if regime is Regime.HIGH_TEMP_WINDOW:
        return y * float(n) ** b / a
    return y - 1.0


def kappa_inverse(path: FugacityPath, n: int, level: float) -> float:
    """y such that kappa(path, n, y) = level; kappa is affine in y."""
    _require_n(n)
    a, b = path.alpha, path.beta
    regime = classify(path)
    if regime is Regime.LOW_TEMP:
        return (level - abs(a) * n) / math.sqrt((1.0 + a) * n)
    if regime is Regime.LOW_TEMP_WINDOW:
        return (level - abs(a) * float(n) ** (1.0 - b)) / math.sqrt(n)
    if regime is Regime.BOUNDARY:
        return level / math.sqrt(n) + a
    if regime is Regime.CRITICAL_WINDOW:
        return level / math.sqrt(n)
    if regime is Regime.HIGH_TEMP_WINDOW:
        return level * a / float(n) ** b
    return level + 1.0


def exact_standardized_cdf(path: FugacityPath, n: int, y: float,
                           thresholds: Thresholds = DEFAULT) -> float:
    """P(limit variable's finite-n stand-in <= y), computed exactly as
    1 - P(L_n > kappa_n(y))."""
    ens = path.ensemble_at(n)
    return 1.0 - tail(ens, kappa(path, n, y), thresholds)


# ----------------------------------------------------------------------
# Kolmogorov-Smirnov measurement


@dataclass(frozen=True)
class KsReport:
    n: int
    regime: Regime
    ks_distance: float
    grid: str

    def __post_init__(self):
        if not (0.0 <= self.ks_distance <= 1.0):
            raise DomainError(
                f"ks_distance must lie in [0, 1], got {self.ks_distance!r}")


def _require_n(n) -> None:
    if not isinstance(n, int) or isinstance(n, bool) or n < 2:
        raise DomainError(f"n must be an integer >= 2, got {n!r}")


def _default_grid(path: FugacityPath, n: int, law: LimitLaw):
    """Uniform y-grid spanning the limit law's 1e-3..1-1e-3 quantiles,
    refined at walk-length lattice preimages (where the exact CDF jumps;
    for the geometric limit these are also the limit CDF's own jumps)."""
    lo = quantile(law, _QUANTILE_LOW)
    hi = quantile(law, 1.0 - _QUANTILE_LOW)
    base = np.linspace(lo, hi, _MIN_GRID_POINTS + 1)
    j_lo = math.ceil(kappa(path, n, lo))
    j_hi = math.floor(kappa(path, n, hi))
    extras = []
    count = j_hi - j_lo + 1
    if 0 < count <= _MAX_LATTICE_POINTS:
        eps = 1.0e-9 * max(hi - lo, 1.0)
        for j in range(j_lo, j_hi + 1):
            yj = kappa_inverse(path, n, float(j))
            extras.extend((yj - eps, yj))
    ys = np.unique(np.concatenate((base, np.asarray(extras))))
    desc = (f"{ys.size} points in [{lo:.6g}, {hi:.6g}], quantile span "
            f"{_QUANTILE_LOW:g}..{1 - _QUANTILE_LOW:g}")
    if extras:
        desc += f", lattice-refined at {count} levels"
    return ys, desc


def ks_distance(path: FugacityPath, n: int, grid=None,
                thresholds: Thresholds = DEFAULT) -> KsReport:
    """Sup-norm distance between the exact standardized CDF and the
    regime's limit CDF over a finite y-grid.

    The default grid spans the limit law's central 1 - 2e-3 mass with
    at least 200 points plus lattice refinement; a custom grid must also
    offer 200 distinct finite points.
    """
    regime = classify(path)
    law = law_for_regime(regime, path.alpha)
    if grid is None:
        ys, desc = _default_grid(path, n, law)
    else:
        ys = np.unique(np.asarray(grid, dtype=np.float64))
        if ys.size == 0:
            raise GridError("empty KS grid")
        if not np.all(np.isfinite(ys)):
            raise GridError("KS grid contains non-finite points")
        if ys.size < _MIN_GRID_POINTS:
            raise GridError(
                f"KS grid needs at least {_MIN_GRID_POINTS} distinct "
                f"points, got {ys.size}")
        desc = f"{ys.size} user-supplied points in [{ys[0]:.6g}, {ys[-1]:.6g}]"
    worst = 0.0
    for y in ys:
        gap = abs(exact_standardized_cdf(path, n, float(y), thresholds)
                  - limit_cdf(law, float(y)))
        if gap > worst:
            worst = gap
    return KsReport(n=n, regime=regime, ks_distance=worst, grid=desc)
