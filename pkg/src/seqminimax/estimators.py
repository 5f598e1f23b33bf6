"""Diagonal linear filters and their weight families.

A diagonal filter estimates the signal coordinatewise as
``x_hat_j = lambda_j * y_j``.  Three named weight families are provided:

* ``minimax``: exactly optimal among linear filters over the
  tail-energy ball ``B(a, p0)``:
  ``lambda_j = p0*(a_j - a_{j+1}) / (p0*(a_j - a_{j+1}) + eps^2 sigma_j^2)``.
* ``asymptotic``: its power-law large-index form,
  ``lambda_j = 2*alpha*p0*j^{-2*alpha-1} / (... + eps^2 sigma_j^2)``.
* ``pinsker``: ``lambda_j = (1 - mu * j^beta)_+`` with the capacity
  parameter ``mu`` solving
  ``eps^2 * sum_j b_j^2 ((mu b_j)^{-1} - 1)_+ = radius``, ``b_j = j^beta``.

The same families are exposed as scikit-learn compatible transformers so
they compose with pipelines and ``clone``/``get_params``.
"""

import warnings
from dataclasses import dataclass

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.exceptions import NotFittedError

from .exceptions import InvalidConfigError, TruncationInsufficientError
from .geometry import Ball
from .model import NoiseProfile, _a2_first_violation
from .validation import as_vector, check_nonnegative, check_positive, check_positive_int

_NAMED_FAMILIES = ("minimax", "asymptotic", "pinsker")


@dataclass(frozen=True)
class DiagonalWeights:
    """A finite diagonal filter ``lambda_1..lambda_n`` with a provenance tag."""

    values: np.ndarray
    family: str = "custom"
    mu: float = None
    beta: float = None
    warning: str = None

    def __post_init__(self):
        vals = as_vector("weights", self.values)
        object.__setattr__(self, "values", vals)
        if self.family in _NAMED_FAMILIES:
            if np.any(vals < -1e-12) or np.any(vals > 1.0 + 1e-12):
                raise InvalidConfigError(
                    f"{self.family} weights must lie in [0, 1]"
                )

    def __len__(self):
        return self.values.size


def minimax_weights(ball, noise, epsilon, n):
    """Weights exactly minimax for linear filtering over the ball.

    The monotone-gap condition behind the optimality guarantee is checked;
    a failure is attached as a warning (the formula stays well defined,
    only exact optimality is lost).
    """
    check_positive("epsilon", epsilon)
    n = check_positive_int("n", n)
    gaps = ball.a.gaps(n)
    s2 = noise.sigmas(n) ** 2
    if np.min(s2) <= 0.0:
        raise InvalidConfigError("noise variances must be positive")
    num = ball.p0 * gaps
    lam = num / (num + epsilon**2 * s2)
    message = None
    if n >= 2:
        bad = _a2_first_violation(ball.a.values(n + 1), s2)
        if bad is not None:
            message = (
                f"gap-ratio condition fails first at j={bad}; weights are well "
                "defined but exact optimality among linear filters is not guaranteed"
            )
            warnings.warn(message, stacklevel=2)
    return DiagonalWeights(values=lam, family="minimax", warning=message)


def asymptotic_weights(alpha, p0, noise, epsilon, n):
    """Power-law weights ``2*alpha*p0*j^{-2*alpha-1} / (... + eps^2 sigma_j^2)``."""
    alpha = check_positive("alpha", alpha)
    p0 = check_positive("p0", p0)
    check_positive("epsilon", epsilon)
    n = check_positive_int("n", n)
    j = np.arange(1, n + 1, dtype=float)
    num = 2.0 * alpha * p0 * j ** (-2.0 * alpha - 1.0)
    lam = num / (num + epsilon**2 * noise.sigmas(n) ** 2)
    return DiagonalWeights(values=lam, family="asymptotic")


@dataclass(frozen=True)
class PinskerConfig:
    """Parameters of the Pinsker filter: exponent, ellipsoid radius, noise level, truncation."""

    beta: float
    radius: float
    epsilon: float
    n: int

    def __post_init__(self):
        check_positive("beta", self.beta)
        check_positive("radius", self.radius)
        check_positive("epsilon", self.epsilon)
        check_positive_int("n", self.n)


def _pinsker_lhs(mu, b, epsilon):
    """eps^2 * sum_j b_j^2 ((mu*b_j)^{-1} - 1)_+ ; strictly decreasing in mu while active."""
    return epsilon**2 * float(np.sum(np.maximum(b / mu - b * b, 0.0)))


def pinsker_mu(cfg):
    """Solve the capacity equation for ``mu`` by bisection.

    The left-hand side is strictly decreasing on ``(0, 1/b_1)``; the root is
    bracketed in ``[1/b_n, 1/b_1]``.  If even ``mu = 1/b_n`` leaves the
    left side below the radius, the active set extends past the truncation
    level and a :class:`TruncationInsufficientError` is raised.
    """
    if cfg.n < 2:
        raise InvalidConfigError("pinsker_mu needs n >= 2")
    b = np.arange(1, cfg.n + 1, dtype=float) ** cfg.beta
    lo, hi = 1.0 / b[-1], 1.0 / b[0]
    lhs_lo = _pinsker_lhs(lo, b, cfg.epsilon)
    lhs_hi = _pinsker_lhs(hi, b, cfg.epsilon)
    if not lhs_lo >= lhs_hi:
        raise InvalidConfigError("capacity equation bracket is not monotone")
    if lhs_lo < cfg.radius:
        raise TruncationInsufficientError(
            f"truncation n={cfg.n} too small: capacity at mu=1/b_n is "
            f"{lhs_lo:.6g} < radius {cfg.radius:.6g}"
        )
    tol = 1e-10 * max(cfg.radius, 1.0)
    mu = 0.5 * (lo + hi)
    for _ in range(400):
        mu = 0.5 * (lo + hi)
        val = _pinsker_lhs(mu, b, cfg.epsilon)
        if abs(val - cfg.radius) <= tol:
            break
        if val > cfg.radius:
            lo = mu
        else:
            hi = mu
    return mu


def pinsker_weights(beta, mu, n):
    """Thresholded polynomial weights ``(1 - mu * j^beta)_+``."""
    check_positive("beta", beta)
    mu = check_nonnegative("mu", mu)
    n = check_positive_int("n", n)
    j = np.arange(1, n + 1, dtype=float)
    lam = np.maximum(0.0, 1.0 - mu * j**beta)
    return DiagonalWeights(values=lam, family="pinsker", mu=mu, beta=float(beta))


def apply_weights(weights, y):
    """Coordinatewise product; the shorter of (weights, y) is zero-padded."""
    lam = weights.values if isinstance(weights, DiagonalWeights) else as_vector("weights", weights)
    y = as_vector("y", y)
    n = max(lam.size, y.size)
    out = np.zeros(n)
    m = min(lam.size, y.size)
    out[:m] = lam[:m] * y[:m]
    return out


def quadratic_penalty(x, ball, noise, variant="gap", alpha=None):
    """Quadratic penalty whose penalized least-squares fit is the named filter.

    ``variant="gap"``:
        ``p0^{-1} * sum_j (a_j - a_{j+1})^{-1} sigma_j^2 x_j^2``
    ``variant="power"`` (requires ``alpha``):
        ``(2*alpha*p0)^{-1} * sum_j j^{1+2*alpha} sigma_j^2 x_j^2``
    """
    x = as_vector("x", x)
    if x.size == 0:
        return 0.0
    s2 = noise.sigmas(x.size) ** 2
    if variant == "gap":
        gaps = ball.a.gaps(x.size)
        zero = gaps == 0.0
        if np.any(zero):
            j = int(np.argmax(zero)) + 1
            raise InvalidConfigError(f"zero gap a_{j} - a_{j + 1}; penalty undefined at index {j}")
        return float(np.sum(s2 * x * x / gaps) / ball.p0)
    if variant == "power":
        alpha = check_positive("alpha", alpha)
        j = np.arange(1, x.size + 1, dtype=float)
        return float(np.sum(j ** (1.0 + 2.0 * alpha) * s2 * x * x) / (2.0 * alpha * ball.p0))
    raise InvalidConfigError(f"unknown penalty variant {variant!r}")


# ---------------------------------------------------------------------------
# scikit-learn facade


def _as_noise(sigma):
    if isinstance(sigma, NoiseProfile):
        return sigma
    return NoiseProfile.constant(float(sigma))


class _DiagonalFilterBase(TransformerMixin, BaseEstimator):
    """Shared transform/predict logic: multiply observations by fitted weights."""

    def _check_fitted(self):
        if not hasattr(self, "weights_"):
            raise NotFittedError(
                f"this {type(self).__name__} instance is not fitted yet; call fit first"
            )

    def transform(self, X):
        """Apply the fitted weights along the last axis of X (1-D or 2-D)."""
        self._check_fitted()
        arr = np.asarray(X, dtype=float)
        lam = self.weights_.values
        if arr.ndim == 1:
            return apply_weights(self.weights_, arr)
        if arr.ndim == 2:
            out = np.zeros((arr.shape[0], max(arr.shape[1], lam.size)))
            m = min(arr.shape[1], lam.size)
            out[:, :m] = arr[:, :m] * lam[:m]
            return out
        raise InvalidConfigError("expected a 1-D observation or a 2-D batch")

    def predict(self, X):
        return self.transform(X)


class MinimaxFilter(_DiagonalFilterBase):
    """Exactly minimax linear filter over the tail-energy ball.

    Parameters mirror the ball (``alpha``, ``p0``), the noise model
    (``sigma`` as a scalar or :class:`NoiseProfile`, noise level
    ``epsilon``) and the truncation level ``n``.
    """

    def __init__(self, alpha=1.0, p0=1.0, sigma=1.0, epsilon=0.1, n=512):
        self.alpha = alpha
        self.p0 = p0
        self.sigma = sigma
        self.epsilon = epsilon
        self.n = n

    def fit(self, X=None, y=None):
        ball = Ball.power(self.alpha, self.p0)
        self.ball_ = ball
        self.weights_ = minimax_weights(ball, _as_noise(self.sigma), self.epsilon, self.n)
        return self


class AsymptoticMinimaxFilter(_DiagonalFilterBase):
    """Power-law filter asymptotically minimax over the ball as the noise vanishes."""

    def __init__(self, alpha=1.0, p0=1.0, sigma=1.0, epsilon=0.1, n=512):
        self.alpha = alpha
        self.p0 = p0
        self.sigma = sigma
        self.epsilon = epsilon
        self.n = n

    def fit(self, X=None, y=None):
        self.weights_ = asymptotic_weights(
            self.alpha, self.p0, _as_noise(self.sigma), self.epsilon, self.n
        )
        return self


class PinskerFilter(_DiagonalFilterBase):
    """Pinsker filter ``(1 - mu_ * j^beta)_+`` with ``mu_`` from the capacity equation."""

    def __init__(self, beta=1.0, radius=1.0, epsilon=0.1, n=512):
        self.beta = beta
        self.radius = radius
        self.epsilon = epsilon
        self.n = n

    def fit(self, X=None, y=None):
        cfg = PinskerConfig(beta=self.beta, radius=self.radius, epsilon=self.epsilon, n=self.n)
        self.mu_ = pinsker_mu(cfg)
        self.weights_ = pinsker_weights(self.beta, self.mu_, self.n)
        return self
