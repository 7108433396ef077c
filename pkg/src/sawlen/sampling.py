"""Exact random sampling from the walk-length law.

The length is n - 1 - K with K Poisson(nu) conditioned on K < n, so the
default sampler draws Poisson variates and rejects the few that land at
n or above.  When the acceptance probability Q(n, nu) drops below the
configured threshold (deep high temperature, where nearly every raw
Poisson draw is too large), it switches to inverse-CDF lookup on the
exact pmf instead: O(n) setup at worst, binary search per draw, and in
practice only the O(sqrt(n)) top weights matter there.

Randomness comes from numpy's PCG64, seeded explicitly, so streams are
reproducible across platforms.  For parallel chains split the seed with
numpy.random.SeedSequence(seed).spawn(k) and give each worker one child
(spawn_rngs does exactly that); never share one Generator across threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .config import DEFAULT, Thresholds
from .errors import DomainError
from .gamma import reg_gamma_q
from .saw import SawEnsemble, _log_weights, distribution

_TABLE_TERM_BUDGET = 4_000_000
_REJECTION_BATCH_CAP = 8_000_000


@dataclass(frozen=True)
class SampleStats:
    """Summary of a Monte Carlo run; std_error_of_mean =
    sqrt(variance/count)."""

    count: int
    mean: float
    variance: float
    std_error_of_mean: float


def _rng(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed)))


def spawn_rngs(seed, k: int) -> list[np.random.Generator]:
    """k independent generators for parallel chains, split from one seed."""
    if not isinstance(k, int) or k < 1:
        raise DomainError(f"need a positive stream count, got {k!r}")
    children = np.random.SeedSequence(seed).spawn(k)
    return [np.random.Generator(np.random.PCG64(c)) for c in children]


def _cdf_table(ens: SawEnsemble, thresholds: Thresholds) -> np.ndarray:
    """Cumulative probabilities over lengths 0..m-1 for inverse-CDF
    draws.  The inverse path only triggers when nu >> n, where the
    weights decay from k = 0 and a short table holds all the mass."""
    log_w = _log_weights(ens.n, ens.nu, _TABLE_TERM_BUDGET)
    if log_w is None:
        log_w = distribution(ens, thresholds).log_pmf
    w = np.exp(log_w - log_w.max())
    cdf = np.cumsum(w)
    return cdf / cdf[-1]


def sample_lengths(ens: SawEnsemble, count: int, seed,
                   thresholds: Thresholds = DEFAULT) -> np.ndarray:
    """count independent walk lengths, as an int64 array."""
    if not isinstance(count, int) or count < 1:
        raise DomainError(f"count must be a positive integer, got {count!r}")
    rng = _rng(seed)
    n, nu = ens.n, ens.nu
    accept = reg_gamma_q(n, nu, thresholds=thresholds)
    if accept >= thresholds.sampler_min_accept:
        out = np.empty(count, dtype=np.int64)
        filled = 0
        while filled < count:
            need = count - filled
            batch = min(int(need / accept * 1.2) + 64, _REJECTION_BATCH_CAP)
            draws = rng.poisson(nu, size=batch)
            kept = draws[draws < n]
            take = min(need, kept.size)
            out[filled:filled + take] = kept[:take]
            filled += take
        return (n - 1) - out
    cdf = _cdf_table(ens, thresholds)
    idx = np.searchsorted(cdf, rng.random(count), side="right")
    return np.minimum(idx, cdf.size - 1).astype(np.int64)


def sample_length(ens: SawEnsemble, seed,
                  thresholds: Thresholds = DEFAULT) -> int:
    """One walk length."""
    return int(sample_lengths(ens, 1, seed, thresholds)[0])


def sample_walk(ens: SawEnsemble, seed,
                thresholds: Thresholds = DEFAULT) -> np.ndarray:
    """A full walk: vertex 0, then L distinct uniformly ordered vertices
    from {1, ..., n-1}.

    All length-L walks are equally likely under the model, so a walk is
    its length plus an ordered uniform sample without replacement; the
    selection is a partial Fisher-Yates shuffle over a virtual array,
    O(L) time and memory even for huge n.
    """
    rng = _rng(seed)
    length = int(sample_lengths(ens, 1, rng, thresholds)[0])
    walk = np.empty(length + 1, dtype=np.int64)
    walk[0] = 0
    swaps: dict[int, int] = {}
    for i in range(length):
        j = int(rng.integers(i, ens.n - 1))
        walk[i + 1] = swaps.get(j, j + 1)
        swaps[j] = swaps.get(i, i + 1)
    return walk


def mc_moments(ens: SawEnsemble, samples: int, seed,
               thresholds: Thresholds = DEFAULT) -> SampleStats:
    """Monte Carlo mean/variance of the walk length with standard error."""
    if not isinstance(samples, int) or samples < 2:
        raise DomainError(
            f"need at least 2 samples for a variance, got {samples!r}")
    lengths = sample_lengths(ens, samples, seed, thresholds)
    mean = float(lengths.mean())
    var = float(lengths.var(ddof=1))
    return SampleStats(count=samples, mean=mean, variance=var,
                       std_error_of_mean=math.sqrt(var / samples))


# ----------------------------------------------------------------------
# fidelity checks used by the verification suite


@dataclass(frozen=True)
class ChiSquareReport:
    statistic: float
    dof: int
    p_value: float


def chi_square_gof(ens: SawEnsemble, lengths: np.ndarray,
                   min_expected: float = 5.0,
                   thresholds: Thresholds = DEFAULT) -> ChiSquareReport:
    """Pearson chi-square of sampled lengths against the exact pmf.

    Adjacent support points are pooled until each bin expects at least
    min_expected counts (the usual validity rule); the p-value comes from
    the chi-square upper tail Q(dof/2, statistic/2).
    """
    lengths = np.asarray(lengths)
    if lengths.size < 2:
        raise DomainError("need at least 2 samples")
    if lengths.min() < 0 or lengths.max() > ens.n - 1:
        raise DomainError("lengths fall outside the support")
    total = lengths.size
    expected_all = distribution(ens, thresholds).pmf_values * total
    observed_all = np.bincount(lengths, minlength=ens.n).astype(np.float64)
    obs_bins, exp_bins = [], []
    acc_obs = acc_exp = 0.0
    for o, e in zip(observed_all, expected_all):
        acc_obs += o
        acc_exp += e
        if acc_exp >= min_expected:
            obs_bins.append(acc_obs)
            exp_bins.append(acc_exp)
            acc_obs = acc_exp = 0.0
    if acc_exp > 0.0:
        if exp_bins:
            obs_bins[-1] += acc_obs
            exp_bins[-1] += acc_exp
        else:
            obs_bins.append(acc_obs)
            exp_bins.append(acc_exp)
    if len(exp_bins) < 2:
        raise DomainError("too few occupied bins for a chi-square test")
    obs = np.asarray(obs_bins)
    exp = np.asarray(exp_bins)
    stat = float(((obs - exp) ** 2 / exp).sum())
    dof = len(exp_bins) - 1
    p = reg_gamma_q(dof / 2.0, stat / 2.0, thresholds=thresholds)
    return ChiSquareReport(statistic=stat, dof=dof, p_value=p)


def two_sample_ks(first: np.ndarray, second: np.ndarray,
                  significance: float = 1.0e-3) -> tuple[float, float]:
    """(KS statistic, critical value) for two empirical samples.

    Critical value is the large-sample Smirnov bound
    sqrt(-ln(significance/2)/2) * sqrt((n+m)/(n m)).
    """
    first = np.sort(np.asarray(first, dtype=np.float64))
    second = np.sort(np.asarray(second, dtype=np.float64))
    if first.size == 0 or second.size == 0:
        raise DomainError("both samples must be non-empty")
    if not (0.0 < significance < 1.0):
        raise DomainError(f"significance must be in (0, 1), got {significance!r}")
    merged = np.concatenate((first, second))
    cdf1 = np.searchsorted(first, merged, side="right") / first.size
    cdf2 = np.searchsorted(second, merged, side="right") / second.size
    d = float(np.abs(cdf1 - cdf2).max())
    m, k = first.size, second.size
    crit = math.sqrt(-math.log(significance / 2.0) / 2.0) \
        * math.sqrt((m + k) / (m * k))
    return d, crit
