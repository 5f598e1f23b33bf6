"""Minimax diagonal filtering in the Gaussian sequence model.

Observations ``y_j = x_j + epsilon * sigma_j * xi_j`` are filtered
coordinatewise by ``x_hat_j = lambda_j * y_j``.  The package constructs the
weight families that are exactly or asymptotically optimal over
tail-energy balls and Sobolev-type ellipsoids, evaluates their exact,
worst-case (via an exact linear program), asymptotic and Monte-Carlo
risks, and provides rate and maxiset diagnostics plus a Gaussian
quadratic-form tail bound.
"""

from .concentration import (
    DiagonalQuadraticForm,
    TailCheckResult,
    mc_tail_check,
    quad_form_tail_threshold,
)
from .estimators import (
    AsymptoticMinimaxFilter,
    DiagonalWeights,
    MinimaxFilter,
    PinskerConfig,
    PinskerFilter,
    apply_weights,
    asymptotic_weights,
    minimax_weights,
    pinsker_mu,
    pinsker_weights,
    quadratic_penalty,
)
from .exceptions import (
    BracketError,
    FlaggedConstantError,
    InvalidConfigError,
    InvalidDataError,
    InvalidSequenceError,
    SeqMinimaxError,
    SingularSpectrumError,
    TruncationInsufficientError,
)
from .geometry import (
    Ball,
    DecaySequence,
    SobolevEllipsoid,
    is_member,
    sample_ball_member,
    sobolev_norm_sq,
    tail_ratio_norm,
    worst_case_signal,
)
from .lp import chain_lp_maximize, dense_simplex_maximize
from .model import (
    AssumptionReport,
    NoiseProfile,
    OperatorSpectrum,
    SequenceModelConfig,
    effective_noise,
    sample_observation,
    to_direct_model,
    validate_assumptions,
)
from .risk import (
    InverseAsymptote,
    MaxisetPoint,
    PinskerMinimaxResult,
    RateFit,
    RiskAsymptote,
    RiskReport,
    asymptotic_minimax_risk,
    bayes_gaussian_risk,
    default_truncation,
    exact_risk,
    exponential_spectrum_risk_asymptote,
    maxiset_diagnostic,
    mc_risk,
    minimax_linear_risk,
    pinsker_minimax_risk,
    pinsker_risk_asymptote,
    polynomial_spectrum_risk_asymptote,
    rate_exponent,
    sup_risk_over_ball,
    weighted_gap_series,
)

__version__ = "0.1.0"

__all__ = [
    "AssumptionReport",
    "AsymptoticMinimaxFilter",
    "Ball",
    "BracketError",
    "DecaySequence",
    "DiagonalQuadraticForm",
    "DiagonalWeights",
    "FlaggedConstantError",
    "InvalidConfigError",
    "InvalidDataError",
    "InvalidSequenceError",
    "InverseAsymptote",
    "MaxisetPoint",
    "MinimaxFilter",
    "NoiseProfile",
    "OperatorSpectrum",
    "PinskerConfig",
    "PinskerFilter",
    "PinskerMinimaxResult",
    "RateFit",
    "RiskAsymptote",
    "RiskReport",
    "SeqMinimaxError",
    "SequenceModelConfig",
    "SingularSpectrumError",
    "SobolevEllipsoid",
    "TailCheckResult",
    "TruncationInsufficientError",
    "apply_weights",
    "asymptotic_minimax_risk",
    "asymptotic_weights",
    "bayes_gaussian_risk",
    "chain_lp_maximize",
    "default_truncation",
    "dense_simplex_maximize",
    "effective_noise",
    "exact_risk",
    "exponential_spectrum_risk_asymptote",
    "is_member",
    "maxiset_diagnostic",
    "mc_risk",
    "mc_tail_check",
    "minimax_linear_risk",
    "minimax_weights",
    "pinsker_minimax_risk",
    "pinsker_mu",
    "pinsker_risk_asymptote",
    "pinsker_weights",
    "polynomial_spectrum_risk_asymptote",
    "quad_form_tail_threshold",
    "quadratic_penalty",
    "rate_exponent",
    "sample_ball_member",
    "sample_observation",
    "sobolev_norm_sq",
    "sup_risk_over_ball",
    "tail_ratio_norm",
    "to_direct_model",
    "validate_assumptions",
    "weighted_gap_series",
    "worst_case_signal",
]
