"""Branching random walk simulation and limit-theorem checks."""

from ._core import (
    BudgetExceeded,
    ClusterLaw,
    InvalidArgument,
    InvalidLaw,
    NumericalInconsistency,
    Overflow,
    __version__,
    decomposition_check,
    derivative_check,
    eval_W,
    exact_black_law,
    expected_path_length,
    gaf_covariance,
    gw_panel,
    kolmogorov_pvalue,
    ks_cdf,
    ks_normal,
    model_params,
    moment_product,
    path_lengths,
    polya_limit,
    polya_proportions,
    prediction_interval,
    sample_gaf,
    simulate,
    truncation_order,
    verdict,
    yule_times,
)

__all__ = [name for name in dir() if not name.startswith("_")] + ["__version__"]
