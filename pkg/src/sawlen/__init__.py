"""Walk-length laws for self-avoiding walks on complete graphs.

A variable-length self-avoiding walk on the complete graph with n vertices,
weighted by fugacity z per step, has a walk-length law with a closed
conditioned-Poisson form: n - 1 - L is Poisson(nu), nu = n/z, conditioned
to stay below n.  This package computes that law exactly at any scale,
its six-regime asymptotics along fugacity paths z_n = 1/(1 + alpha n^-beta),
the matching distributional limits, exact samplers, and a high-precision
oracle used to verify all of it.

Some performance-critical kernels are implemented in Cython with a
pure-Python fallback selected at import time (see sawlen.backend).
"""

from .asymptotics import (FugacityPath, Regime, asymptotic_mean,
                          asymptotic_variance, classify,
                          conditional_normal_moments, decay_exponent_literal,
                          h_n_asymptotic, log_h_n_asymptotic)
from .backend import backend_name
from .config import DEFAULT, Thresholds, load_config, parse_config_text
from .errors import (DomainError, GridError, PrecisionWarning, SizeError,
                     ValidityError)
from .gamma import (TABLES, EvalStrategy, eta, gamma_star,
                    gamma_star_minus_one, log_normal_tail, log_reg_gamma_q,
                    normal_pdf, normal_tail, reg_gamma_q, temme_uniform_q,
                    tricomi_gamma_q)
from .limits import (HalfNormal, KsReport, LimitLaw, ShiftedGeometric,
                     StandardNormal, TruncatedNormal, UnitExponential,
                     exact_standardized_cdf, kappa, kappa_inverse,
                     ks_distance, law_for_regime, limit_cdf, quantile)
from .logspace import LogScaleValue
from .sampling import (ChiSquareReport, SampleStats, chi_square_gof,
                       mc_moments, sample_length, sample_lengths, sample_walk,
                       spawn_rngs, two_sample_ks)
from .saw import (LengthDistribution, SawEnsemble, distribution, exact_mean,
                  exact_moment, exact_variance, h_n, log_h_n, log_pmf, pmf,
                  tail, walk_count)

__version__ = "0.1.0"

__all__ = [
    "ChiSquareReport", "DEFAULT", "DomainError", "EvalStrategy",
    "FugacityPath", "GridError", "HalfNormal", "KsReport",
    "LengthDistribution", "LimitLaw", "LogScaleValue", "PrecisionWarning",
    "Regime", "SampleStats", "SawEnsemble", "ShiftedGeometric", "SizeError",
    "StandardNormal", "TABLES", "Thresholds", "TruncatedNormal",
    "UnitExponential", "ValidityError", "asymptotic_mean",
    "asymptotic_variance", "backend_name", "chi_square_gof", "classify",
    "conditional_normal_moments", "decay_exponent_literal", "distribution",
    "eta", "exact_mean", "exact_moment", "exact_standardized_cdf",
    "exact_variance", "gamma_star", "gamma_star_minus_one", "h_n",
    "h_n_asymptotic", "kappa", "kappa_inverse", "ks_distance",
    "law_for_regime", "limit_cdf", "load_config", "log_h_n",
    "log_h_n_asymptotic", "log_normal_tail", "log_pmf", "log_reg_gamma_q",
    "mc_moments", "normal_pdf", "normal_tail", "parse_config_text", "pmf",
    "quantile",
    "reg_gamma_q", "sample_length", "sample_lengths", "sample_walk",
    "spawn_rngs", "tail", "temme_uniform_q", "tricomi_gamma_q",
    "two_sample_ks", "walk_count",
]
