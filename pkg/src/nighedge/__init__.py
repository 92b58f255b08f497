"""Quadratic hedging of European calls under exponential NIG models.

The library computes locally risk minimizing and mean-variance hedging
ratios from closed-form Levy-exponent transforms and Fourier inversion of
the characteristic function under the minimal martingale measure.
"""

from .hedging import (
    HedgeRecord,
    PricePath,
    doleans_series,
    hedge_series,
    lrm_xi,
    mvh_theta,
)
from .mmm import (
    CharQuery,
    MmmComponents,
    MmmScalars,
    char_exponent,
    char_fn,
    envelope_C,
    mmm_components,
    mmm_scalars,
    theta,
)
from .nig_core import (
    AuxTerms,
    DampedArg,
    NigParams,
    ValidationReport,
    aux_terms,
    bessel_k1,
    levy_density,
    levy_mean,
    nig_char,
    validate_params,
    w_transform,
)
from .quad import (
    FftBatch,
    QuadConfig,
    TruncationBound,
    TruncationError,
    batch_fft,
    compute_H,
    compute_I,
    integrand_I,
    min_upper_limit,
    realized_tail,
)
from .simulate import SimConfig, sample_ig, simulate_path

__version__ = "0.1.0"

__all__ = [
    "AuxTerms",
    "CharQuery",
    "DampedArg",
    "FftBatch",
    "HedgeRecord",
    "MmmComponents",
    "MmmScalars",
    "NigParams",
    "PricePath",
    "QuadConfig",
    "SimConfig",
    "TruncationBound",
    "TruncationError",
    "ValidationReport",
    "aux_terms",
    "batch_fft",
    "bessel_k1",
    "char_exponent",
    "char_fn",
    "compute_H",
    "compute_I",
    "doleans_series",
    "envelope_C",
    "hedge_series",
    "integrand_I",
    "levy_density",
    "levy_mean",
    "lrm_xi",
    "min_upper_limit",
    "mmm_components",
    "mmm_scalars",
    "mvh_theta",
    "nig_char",
    "realized_tail",
    "sample_ig",
    "simulate_path",
    "theta",
    "validate_params",
    "w_transform",
]
