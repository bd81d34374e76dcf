"""Moment-based information measures.

Differential entropy and mutual information computed purely from moments via
the polynomial-MMSE representation in the Gaussian channel, plus the
supporting machinery: Hankel moment matrices, the exact rational form of
pmmse_n(X, t), conditional-expectation derivatives, and a benchmark harness.
"""

from ._momentinfo import (
    ConfigurationError,
    DegenerateSupportError,
    EmptyAfterFilterError,
    InternalConsistencyError,
    QuadratureFailureError,
    c_r,
    channel_pmmse,
    channel_rational,
    cond_exp,
    cond_exp_derivative,
    entropy,
    entropy_from_moments,
    entropy_multivariate,
    enumerate_partition_count,
    exact_moments,
    gaussian_moment,
    ground_truth,
    hankel_det,
    mutual_information,
    run_experiment,
    sample,
    sample_moments,
    selftest,
    standardize,
)

__all__ = [
    "ConfigurationError",
    "DegenerateSupportError",
    "EmptyAfterFilterError",
    "InternalConsistencyError",
    "QuadratureFailureError",
    "c_r",
    "channel_pmmse",
    "channel_rational",
    "cond_exp",
    "cond_exp_derivative",
    "entropy",
    "entropy_from_moments",
    "entropy_multivariate",
    "enumerate_partition_count",
    "exact_moments",
    "gaussian_moment",
    "ground_truth",
    "hankel_det",
    "mutual_information",
    "run_experiment",
    "sample",
    "sample_moments",
    "selftest",
    "standardize",
]

__version__ = "0.1.0"
