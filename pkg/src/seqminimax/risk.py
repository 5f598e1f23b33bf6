"""Risk evaluation for diagonal filters.

Four evaluation routes are provided and cross-checked against each other:
exact summation for a known signal, an exact linear program for the
worst case over the tail-energy ball, closed-form asymptotic displays, and
seeded Monte Carlo.  Every truncated value carries an analytic bound on the
omitted tail so truncation error stays visible.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .estimators import DiagonalWeights, pinsker_weights
from .exceptions import FlaggedConstantError, InvalidConfigError, InvalidDataError
from .lp import chain_lp_maximize
from .model import NoiseProfile
from .rng import standard_normals
from .search import minimize_log_scale
from .validation import as_vector, check_positive, check_positive_int


@dataclass(frozen=True)
class RiskReport:
    """A risk value with its variance/bias decomposition and truncation audit.

    ``value = variance_term + bias_term`` for the exact and linear-program
    methods; Monte-Carlo reports carry a standard error instead.
    ``tail_bound`` bounds the contribution of indices beyond ``n``.
    """

    value: float
    variance_term: float
    bias_term: float
    n: int
    tail_bound: float
    method: str
    stderr: float = None
    reps: int = None

    def __post_init__(self):
        if self.tail_bound < 0.0:
            raise InvalidConfigError("tail_bound must be nonnegative")

    def to_dict(self):
        out = {
            "value": self.value,
            "variance_term": self.variance_term,
            "bias_term": self.bias_term,
            "n": self.n,
            "tail_bound": self.tail_bound,
            "method": self.method,
        }
        if self.stderr is not None:
            out["stderr"] = self.stderr
        if self.reps is not None:
            out["reps"] = self.reps
        return out


@dataclass(frozen=True)
class RateFit:
    """Least-squares fit of log(risk) against log(epsilon)."""

    points: tuple
    slope: float
    intercept: float
    r_squared: float

    def to_dict(self):
        return {
            "slope": self.slope,
            "intercept": self.intercept,
            "r_squared": self.r_squared,
            "points": [{"epsilon": e, "risk": r} for e, r in self.points],
        }


def default_truncation(epsilon, smoothness):
    """Truncation level for rate experiments: generous cover of the active range."""
    check_positive("epsilon", epsilon)
    check_positive("smoothness", smoothness)
    return max(512, math.ceil(20.0 * float(epsilon) ** (-2.0 / (1.0 + 2.0 * smoothness))))


def _padded(weights, x):
    lam = weights.values if isinstance(weights, DiagonalWeights) else as_vector("weights", weights)
    x = as_vector("x", x)
    n = max(lam.size, x.size)
    lam_p = np.zeros(n)
    lam_p[: lam.size] = lam
    x_p = np.zeros(n)
    x_p[: x.size] = x
    return lam_p, x_p, n


def exact_risk(weights, x, noise, epsilon):
    """Mean squared error of the filter at a known, finitely supported signal.

    ``eps^2 * sum lambda_j^2 sigma_j^2 + sum (1 - lambda_j)^2 x_j^2`` over
    the materialized range; the omitted tail is exactly zero for finitely
    supported signals.
    """
    check_positive("epsilon", epsilon)
    lam, x_p, n = _padded(weights, x)
    s2 = noise.sigmas(n) ** 2
    variance = float(epsilon**2 * np.sum(lam * lam * s2))
    bias = float(np.sum((1.0 - lam) ** 2 * x_p * x_p))
    return RiskReport(
        value=variance + bias,
        variance_term=variance,
        bias_term=bias,
        n=n,
        tail_bound=0.0,
        method="exact",
    )


def bayes_gaussian_risk(theta_sq, noise, epsilon):
    """Risk of the optimal filter under an independent Gaussian prior.

    ``eps^2 * sum_j theta_j^2 sigma_j^2 / (theta_j^2 + eps^2 sigma_j^2)``;
    coordinatewise it is the best achievable among diagonal filters at
    second-moment profile ``theta_sq``.
    """
    check_positive("epsilon", epsilon)
    t2 = as_vector("theta_sq", theta_sq)
    if np.any(t2 < 0.0):
        raise InvalidConfigError("theta_sq must be nonnegative")
    if t2.size == 0:
        return 0.0
    s2 = noise.sigmas(t2.size) ** 2
    e2 = epsilon**2
    return float(e2 * np.sum(t2 * s2 / (t2 + e2 * s2)))


def minimax_linear_risk(ball, noise, epsilon, n):
    """Worst-case risk of the best linear filter over the ball, truncated at n.

    Each omitted term is at most ``p0 * (a_j - a_{j+1})``, so the omitted
    tail telescopes to at most ``p0 * a_{n+1}``.
    """
    check_positive("epsilon", epsilon)
    n = check_positive_int("n", n)
    a = ball.a.values(n + 1)
    gaps = a[:-1] - a[1:]
    s2 = noise.sigmas(n) ** 2
    e2 = epsilon**2
    num = ball.p0 * gaps
    lam = num / (num + e2 * s2)
    variance = float(e2 * np.sum(lam * lam * s2))
    bias = float(np.sum((1.0 - lam) ** 2 * num))
    return RiskReport(
        value=variance + bias,
        variance_term=variance,
        bias_term=bias,
        n=n,
        tail_bound=float(ball.p0 * a[-1]),
        method="formula",
    )


def asymptotic_minimax_risk(alpha, p0, noise, epsilon, n):
    """Leading-order minimax risk with power-law gaps, truncated at n.

    ``eps^2 * sum_j 2 a p0 j^{-2a-1} sigma_j^2 / (2 a p0 j^{-2a-1} + eps^2 sigma_j^2)``
    without the vanishing correction factor; the omitted tail is bounded by
    ``p0 * n^{-2a}``.
    """
    alpha = check_positive("alpha", alpha)
    p0 = check_positive("p0", p0)
    check_positive("epsilon", epsilon)
    n = check_positive_int("n", n)
    j = np.arange(1, n + 1, dtype=float)
    t2 = 2.0 * alpha * p0 * j ** (-2.0 * alpha - 1.0)
    s2 = noise.sigmas(n) ** 2
    e2 = epsilon**2
    lam = t2 / (t2 + e2 * s2)
    variance = float(e2 * np.sum(lam * lam * s2))
    bias = float(np.sum((1.0 - lam) ** 2 * t2))
    return RiskReport(
        value=variance + bias,
        variance_term=variance,
        bias_term=bias,
        n=n,
        tail_bound=float(p0 * n ** (-2.0 * alpha)),
        method="formula",
    )


def sup_risk_over_ball(weights, ball, noise, epsilon, n=None):
    """Exact worst-case risk of an arbitrary diagonal filter over the ball.

    Solves, exactly, the linear program in the squared coordinates
    ``v_j = x_j^2``:

        maximize sum_{j<=n} (1-lambda_j)^2 v_j  + (tail beyond n)
        s.t. v >= 0,  sum_{j>=k} v_j <= p0 * a_k  for every k,

    where the tail beyond the filter window carries bias coefficient 1 and
    is reported separately as ``tail_bound`` (the worst-case omitted bias),
    not folded into ``value``.  Ties are resolved toward the fully
    telescoping worst case, so for any filter with nondecreasing
    ``(1-lambda_j)^2`` the returned maximizer is the boundary signal with
    ``v_j = p0 * (a_j - a_{j+1})``.

    Returns ``(report, maximizer)`` with ``maximizer_j = sqrt(v_j)``.
    """
    check_positive("epsilon", epsilon)
    lam = weights.values if isinstance(weights, DiagonalWeights) else as_vector("weights", weights)
    if n is None:
        n = lam.size
    else:
        n = check_positive_int("n", n)
        padded = np.zeros(n)
        padded[: min(n, lam.size)] = lam[: min(n, lam.size)]
        lam = padded
    if n == 0:
        raise InvalidConfigError("empty weight vector")
    coeffs = np.append((1.0 - lam) ** 2, 1.0)  # virtual coordinate for the unfiltered tail
    caps = ball.p0 * ball.a.values(n + 1)
    _, v, _ = chain_lp_maximize(coeffs, caps)
    s2 = noise.sigmas(n) ** 2
    variance = float(epsilon**2 * np.sum(lam * lam * s2))
    bias = float(np.dot(coeffs[:n], v[:n]))
    report = RiskReport(
        value=variance + bias,
        variance_term=variance,
        bias_term=bias,
        n=n,
        tail_bound=float(v[n]),
        method="lp",
    )
    return report, np.sqrt(v[:n])


@dataclass(frozen=True)
class PinskerMinimaxResult:
    """Outcome of tuning the Pinsker filter against its worst case on the ball."""

    value: float
    mu: float
    epsilon: float
    n: int
    report: RiskReport = field(repr=False, default=None)


def pinsker_minimax_risk(beta, ball, epsilon, n):
    """Best worst-case risk of the Pinsker family over the ball (unit noise profile).

    Minimizes ``mu -> sup-risk of (1 - mu j^beta)_+`` by a log-scale scan
    plus golden section on a bracket spanning from "all weights active"
    (``mu = 1/n^beta``) to "all weights zero" (``mu = 1``).
    """
    check_positive("beta", beta)
    check_positive("epsilon", epsilon)
    n = check_positive_int("n", n, minimum=2)
    unit = NoiseProfile.constant(1.0)
    caps = ball.p0 * ball.a.values(n + 1)
    gaps = caps[:-1] - caps[1:]
    j = np.arange(1, n + 1, dtype=float)
    b = j ** float(beta)
    e2 = epsilon**2

    def objective(mu):
        lam = np.maximum(0.0, 1.0 - mu * b)
        # worst case over the ball: every tail constraint binds (the bias
        # coefficients (1-lam)^2 are nondecreasing), value excludes the tail
        return float(e2 * np.sum(lam * lam) + np.sum((1.0 - lam) ** 2 * gaps))

    mu, _ = minimize_log_scale(objective, n ** (-float(beta)), 1.0)
    report, _ = sup_risk_over_ball(pinsker_weights(beta, mu, n), ball, unit, epsilon)
    return PinskerMinimaxResult(value=report.value, mu=mu, epsilon=float(epsilon), n=n, report=report)


@dataclass(frozen=True)
class RiskAsymptote:
    """A printed closed-form asymptote: leading constant, power and log power."""

    value: float
    eps_exponent: float
    log_power: float
    constant: float
    c1: float = None
    c1_tail_bound: float = None


def weighted_gap_series(alpha, beta, rel_tol=1e-12, max_terms=4_000_000):
    """``sum_j j^{2 beta} (j^{-2 alpha} - (j+1)^{-2 alpha})`` for alpha > beta.

    Summed in blocks until the analytic tail bound
    ``(alpha/(alpha-beta)) * J^{-2(alpha-beta)}`` (terms decay like
    ``2 alpha j^{2 beta - 2 alpha - 1}``) is negligible; returns
    ``(value, tail_bound)``.
    """
    alpha = check_positive("alpha", alpha)
    beta = check_positive("beta", beta)
    if alpha <= beta:
        raise InvalidConfigError("series converges only for alpha > beta")
    total = 0.0
    start = 1
    block = 100_000
    while True:
        j = np.arange(start, min(start + block, max_terms + 1), dtype=float)
        total += float(np.sum(j ** (2.0 * beta) * (j ** (-2.0 * alpha) - (j + 1.0) ** (-2.0 * alpha))))
        start += j.size
        tail = (alpha / (alpha - beta)) * float(start - 1) ** (-2.0 * (alpha - beta))
        if tail <= rel_tol * total or start > max_terms:
            return total, tail


def pinsker_risk_asymptote(alpha, beta, p0, epsilon):
    """Closed-form asymptote of the tuned Pinsker worst-case risk on the ball.

    Three regimes: filter exponent above, below, or matching the ball
    exponent; the matching case carries an extra ``|2 ln eps|`` power.
    Constants converge slowly, so callers should gate rates on
    ``eps_exponent`` and ``log_power`` and treat ``constant`` as a report.
    """
    alpha = check_positive("alpha", alpha)
    beta = check_positive("beta", beta)
    p0 = check_positive("p0", p0)
    epsilon = check_positive("epsilon", epsilon)
    c = 2.0 * alpha**2 / ((1.0 + alpha) * (1.0 + 2.0 * alpha))
    c1 = c1_tail = None
    if abs(alpha - beta) <= 1e-12:
        expo = 4.0 * alpha / (1.0 + 2.0 * alpha)
        log_power = 1.0 / (1.0 + 2.0 * alpha)
        constant = (
            ((2.0 * alpha**2) ** (1.0 / (1.0 + 2.0 * alpha))
             + 2.0 ** (-2.0 * alpha / (1.0 + 2.0 * alpha))
             * alpha ** ((1.0 - 2.0 * alpha) / (1.0 + 2.0 * alpha)))
            * (1.0 + 2.0 * alpha) ** (-1.0 / (1.0 + 2.0 * alpha))
            * p0 ** (1.0 / (1.0 + 2.0 * alpha))
            * c ** (2.0 * alpha / (1.0 + 2.0 * alpha))
        )
    elif alpha < beta:
        expo = 4.0 * alpha / (1.0 + 2.0 * alpha)
        log_power = 0.0
        c1 = beta / (beta - alpha) * p0
        constant = (
            c ** (2.0 * alpha / (1.0 + 2.0 * alpha))
            * c1 ** (1.0 / (1.0 + 2.0 * alpha))
            * ((2.0 * alpha) ** (-2.0 * alpha / (1.0 + 2.0 * alpha))
               + (2.0 * alpha) ** (1.0 / (1.0 + 2.0 * alpha)))
        )
    else:
        expo = 4.0 * beta / (1.0 + 2.0 * beta)
        log_power = 0.0
        c1, c1_tail = weighted_gap_series(alpha, beta)
        constant = (
            c ** (2.0 * beta / (1.0 + 2.0 * beta))
            * c1 ** (1.0 / (1.0 + 2.0 * beta))
            * ((2.0 * beta) ** (-2.0 * beta / (1.0 + 2.0 * beta))
               + (2.0 * beta) ** (1.0 / (1.0 + 2.0 * beta)))
        )
    value = constant * epsilon**expo
    if log_power:
        value *= abs(2.0 * math.log(epsilon)) ** log_power
    return RiskAsymptote(
        value=value,
        eps_exponent=expo,
        log_power=log_power,
        constant=constant,
        c1=c1,
        c1_tail_bound=c1_tail,
    )


@dataclass(frozen=True)
class InverseAsymptote:
    """Printed risk asymptote for an ill-posed observation operator."""

    value: float
    eps_exponent: float
    log_exponent: float


def polynomial_spectrum_risk_asymptote(alpha, gamma, p0, c, epsilon):
    """Risk asymptote when the singular values decay like ``C * j^{-gamma}``.

    The rate exponent is ``4 alpha / (1 + 2 alpha + 2 gamma)``.  The printed
    leading constant contains ``sin(pi (2 gamma + 1) / (2 alpha))``; outside
    ``(0, pi)`` the sine argument makes the constant meaningless and a
    :class:`FlaggedConstantError` (carrying the exponent) is raised.
    """
    alpha = check_positive("alpha", alpha)
    gamma = check_positive("gamma", gamma)
    p0 = check_positive("p0", p0)
    c = check_positive("C", c)
    epsilon = check_positive("epsilon", epsilon)
    expo = 4.0 * alpha / (1.0 + 2.0 * alpha + 2.0 * gamma)
    arg = math.pi * (2.0 * gamma + 1.0) / (2.0 * alpha)
    if not 0.0 < arg < math.pi:
        raise FlaggedConstantError(
            f"sine argument pi(2 gamma + 1)/(2 alpha) = {arg:.6g} lies outside (0, pi); "
            "the printed constant is unreliable (rate exponent is still valid)",
            eps_exponent=expo,
            log_exponent=0.0,
        )
    value = (
        epsilon**expo
        * math.pi / (2.0 * alpha * math.sin(arg))
        * (2.0 * alpha * p0) ** ((2.0 * gamma + 1.0) / (2.0 * gamma + 2.0 * alpha + 1.0))
        * c ** (-2.0 * alpha / (2.0 * gamma + 2.0 * alpha + 1.0))
    )
    return InverseAsymptote(value=value, eps_exponent=expo, log_exponent=0.0)


def exponential_spectrum_risk_asymptote(alpha, gamma, b, p0, epsilon):
    """Risk asymptote when the singular values decay like ``C j^{-kappa} exp(-B j^gamma)``.

    Only logarithmic rates survive: ``p0 * B^{2 alpha/gamma} |ln eps|^{-2 alpha/gamma}``.
    """
    alpha = check_positive("alpha", alpha)
    gamma = check_positive("gamma", gamma)
    b = check_positive("B", b)
    p0 = check_positive("p0", p0)
    epsilon = check_positive("epsilon", epsilon)
    if epsilon == 1.0:
        raise InvalidConfigError("epsilon = 1 has |ln epsilon| = 0; asymptote undefined")
    log_exp = -2.0 * alpha / gamma
    value = p0 * b ** (2.0 * alpha / gamma) * abs(math.log(epsilon)) ** log_exp
    return InverseAsymptote(value=value, eps_exponent=0.0, log_exponent=log_exp)


def mc_risk(weights, x, noise, epsilon, reps, seed):
    """Monte-Carlo estimate of the filter's mean squared error at signal x.

    Replicate r draws its Gaussian deviates from stream r of the seeded
    counter-based generator (exactly the observations
    ``sample_observation(x, cfg, seed, stream=r)``), so the estimate is a
    pure function of (seed, reps) no matter how replicates are scheduled.
    """
    check_positive("epsilon", epsilon)
    reps = check_positive_int("reps", reps, minimum=2)
    lam, x_p, n = _padded(weights, x)
    sig = noise.sigmas(n)
    scale = epsilon * sig
    vals = np.empty(reps)
    for r in range(reps):
        xi = standard_normals(seed, r, n)
        err = lam * (x_p + scale * xi) - x_p
        vals[r] = err @ err
    mean = float(np.mean(vals))
    stderr = float(np.std(vals, ddof=1) / math.sqrt(reps))
    return RiskReport(
        value=mean,
        variance_term=None,
        bias_term=None,
        n=n,
        tail_bound=0.0,
        method="mc",
        stderr=stderr,
        reps=reps,
    )


def rate_exponent(points):
    """Ordinary least squares of log(risk) on log(epsilon).

    Needs at least three points with distinct positive epsilon and positive
    risks; returns slope, intercept and r^2.
    """
    pts = [(float(e), float(r)) for e, r in points]
    if len(pts) < 3:
        raise InvalidDataError("rate fit needs at least 3 points")
    eps = np.array([e for e, _ in pts])
    risks = np.array([r for _, r in pts])
    if np.any(eps <= 0.0) or len(set(eps.tolist())) != eps.size:
        raise InvalidDataError("epsilon values must be positive and distinct")
    if np.any(risks <= 0.0):
        raise InvalidDataError("risks must be positive for a log-log fit")
    lx = np.log(eps)
    ly = np.log(risks)
    slope, intercept = np.polyfit(lx, ly, 1)
    fitted = slope * lx + intercept
    ss_res = float(np.sum((ly - fitted) ** 2))
    ss_tot = float(np.sum((ly - np.mean(ly)) ** 2))
    r_squared = 1.0 if ss_tot == 0.0 else 1.0 - ss_res / ss_tot
    return RateFit(points=tuple(pts), slope=float(slope), intercept=float(intercept), r_squared=r_squared)


@dataclass(frozen=True)
class MaxisetPoint:
    """One grid point of the rate-normalized tuned-filter risk at a fixed signal."""

    epsilon: float
    n: int
    mu: float
    risk: float
    normalized: float


def maxiset_diagnostic(signal, beta, eps_grid, n_rule=None):
    """Rate-normalized best Pinsker risk at a fixed signal along a noise grid.

    For each epsilon the risk ``inf_mu exact_risk((1 - mu j^beta)_+, x)`` is
    found by a log-scale search and multiplied by
    ``epsilon^{-4 beta/(1+2 beta)}``.  Whether the resulting sequence stays
    bounded (signal inside the critical ellipsoid class) or grows is left
    to the caller.

    ``signal`` maps an index array ``j = 1..n`` to coordinates; ``n_rule``
    maps epsilon to the truncation level (default
    :func:`default_truncation` with smoothness beta).
    """
    beta = check_positive("beta", beta)
    grid = [check_positive("epsilon", e) for e in eps_grid]
    if len(grid) < 1 or np.any(np.diff(grid) >= 0.0):
        raise InvalidConfigError("eps_grid must be positive and strictly decreasing")
    if n_rule is None:
        n_rule = lambda e: default_truncation(e, beta)
    norm_exp = -4.0 * beta / (1.0 + 2.0 * beta)
    out = []
    for eps in grid:
        n = check_positive_int("n", n_rule(eps))
        j = np.arange(1, n + 1, dtype=float)
        x = as_vector("signal values", signal(j))
        if x.size != n:
            raise InvalidConfigError(
                f"signal generator returned {x.size} values for n = {n}"
            )
        x_sq = x * x
        b = j ** float(beta)
        e2 = eps**2

        def objective(mu):
            lam = np.maximum(0.0, 1.0 - mu * b)
            return float(e2 * np.sum(lam * lam) + np.sum((1.0 - lam) ** 2 * x_sq))

        mu, best = minimize_log_scale(objective, n ** (-float(beta)), 1.0)
        out.append(
            MaxisetPoint(epsilon=eps, n=n, mu=mu, risk=best, normalized=best * eps**norm_exp)
        )
    return out
