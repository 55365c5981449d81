"""Bootstrap HEGY seasonal unit-root tests for quarterly time series."""

from ._core import (
    ConfigurationError,
    DataError,
    HegyStatistics,
    QuarterlySeries,
    __version__,
    ar_recursion,
    augmented_hegy,
    block_bootstrap_test,
    empirical_rejection,
    generate_series,
    hegy_transform,
    iid_bootstrap_test,
    multiply_polynomials,
    seasonal_difference,
    tilde_gamma,
    unaugmented_hegy,
)

__all__ = [
    "ConfigurationError",
    "DataError",
    "HegyStatistics",
    "QuarterlySeries",
    "__version__",
    "ar_recursion",
    "augmented_hegy",
    "block_bootstrap_test",
    "empirical_rejection",
    "generate_series",
    "hegy_transform",
    "iid_bootstrap_test",
    "multiply_polynomials",
    "seasonal_difference",
    "tilde_gamma",
    "unaugmented_hegy",
]
