"""Huber M-estimation with robust information-complexity subset selection."""

from ._core import (
    CRITERIA,
    K_C0,
    K_HUBER,
    DataError,
    DomainError,
    NumericalError,
    RicompError,
    c0,
    c0_rho_h,
    c0_rho_h_identity,
    c1,
    criteria,
    erf,
    fit,
    huber_psi,
    huber_rho,
    huber_weight,
    lower_incomplete_gamma,
    mad_scale,
    normal_quantile,
    read_csv,
    regularized_lower_gamma,
    regularized_upper_gamma,
    run,
    select,
    simulate_mae,
    simulate_select,
    tune_k,
    upper_incomplete_gamma,
)

__all__ = [name for name in dir() if not name.startswith("_")]
