"""Tail bound for Gaussian quadratic forms with diagonal coefficient matrix.

For ``Q = sum_i d_i xi_i^2`` with independent standard Gaussians and
``d_i >= 0``, the exceedance probability of

    tr + 2 * sqrt(tr2 * t) + 2 * max(d) * t,   tr = sum d_i, tr2 = sum d_i^2

is at most ``exp(-t)``; the Monte-Carlo check verifies this empirically
with deterministic seeded streams.
"""

import math
from dataclasses import dataclass

import numpy as np

from .exceptions import InvalidConfigError
from .rng import generator
from .validation import as_vector, check_nonnegative, check_positive_int

_CHUNK_ROWS = 20_000


@dataclass(frozen=True)
class DiagonalQuadraticForm:
    """Nonnegative eigenvalues of the quadratic form (at least one positive)."""

    diag: np.ndarray

    def __post_init__(self):
        d = as_vector("diag", self.diag)
        if d.size == 0 or np.any(d < 0.0) or not np.any(d > 0.0):
            raise InvalidConfigError("diag must be nonnegative with at least one positive entry")
        object.__setattr__(self, "diag", d)

    @classmethod
    def identity(cls, dim):
        return cls(diag=np.ones(check_positive_int("dim", dim)))

    @property
    def trace(self):
        return float(np.sum(self.diag))

    @property
    def trace_sq(self):
        return float(np.sum(self.diag**2))

    @property
    def operator_norm(self):
        return float(np.max(self.diag))


def quad_form_tail_threshold(form, t):
    """``tr + 2*sqrt(tr2 * t) + 2*||diag||_inf * t``, monotone in t and in every entry."""
    t = check_nonnegative("t", t)
    return form.trace + 2.0 * math.sqrt(form.trace_sq * t) + 2.0 * form.operator_norm * t


@dataclass(frozen=True)
class TailCheckResult:
    empirical_prob: float
    bound: float
    threshold: float
    passed: bool
    reps: int

    def to_dict(self):
        return {
            "empirical_prob": self.empirical_prob,
            "bound": self.bound,
            "threshold": self.threshold,
            "pass": bool(self.passed),
            "reps": self.reps,
        }


def mc_tail_check(form, t, reps, seed):
    """Empirical exceedance probability of the threshold versus the exp(-t) bound.

    Passes when ``empirical <= exp(-t) + 3*sqrt(exp(-t)/reps)`` (three
    binomial standard deviations of slack).  Deterministic in
    (form, t, reps, seed).
    """
    t = check_nonnegative("t", t)
    reps = check_positive_int("reps", reps, minimum=10_000)
    threshold = quad_form_tail_threshold(form, t)
    gen = generator(seed, stream=0)
    dim = form.diag.size
    exceed = 0
    done = 0
    while done < reps:
        rows = min(_CHUNK_ROWS, reps - done)
        xi = gen.standard_normal((rows, dim))
        q = (xi * xi) @ form.diag
        exceed += int(np.count_nonzero(q > threshold))
        done += rows
    empirical = exceed / reps
    bound = math.exp(-t)
    passed = empirical <= bound + 3.0 * math.sqrt(bound / reps)
    return TailCheckResult(
        empirical_prob=empirical, bound=bound, threshold=threshold, passed=passed, reps=reps
    )
