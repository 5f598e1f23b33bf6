"""Geometry of the signal classes.

The central set is the ball ``B(a, P0)`` of square-summable sequences whose
tail energy is controlled by a decaying sequence ``a``:

    B(a, P0) = { x : sup_k  a_k^{-1} * sum_{j>=k} x_j^2  <=  P0 },

together with the classical Sobolev-type ellipsoids
``{ x : sum_j j^{2*beta} x_j^2 <= P }``.
"""

from dataclasses import dataclass, field

import numpy as np

from .exceptions import InvalidConfigError, InvalidSequenceError
from .rng import standard_normals
from .validation import as_vector, check_positive, check_positive_int

#: relative slack used by membership tests to avoid boundary flapping
MEMBERSHIP_SLACK = 1e-12


@dataclass(frozen=True)
class DecaySequence:
    """Strictly positive, strictly decreasing sequence ``a_1 > a_2 > ... > 0``.

    Two kinds are supported: the power law ``a_k = k**(-2*alpha)`` (defined
    for every k) and an explicit finite table.
    """

    kind: str
    alpha: float = None
    table: tuple = field(default=None, repr=False)

    @classmethod
    def power(cls, alpha):
        return cls(kind="power", alpha=check_positive("alpha", alpha))

    @classmethod
    def from_table(cls, values):
        arr = as_vector("decay table", values)
        if arr.size < 1:
            raise InvalidSequenceError("decay table must contain at least one value")
        if np.any(arr <= 0.0):
            k = int(np.argmax(arr <= 0.0)) + 1
            raise InvalidSequenceError(f"decay sequence must be positive; a_{k} = {arr[k - 1]}")
        if np.any(np.diff(arr) >= 0.0):
            k = int(np.argmax(np.diff(arr) >= 0.0)) + 1
            raise InvalidSequenceError(
                f"decay sequence must be strictly decreasing; violated at a_{k + 1}"
            )
        return cls(kind="table", table=tuple(float(v) for v in arr))

    @property
    def n_max(self):
        """Largest materializable index (None when unbounded)."""
        return None if self.kind == "power" else len(self.table)

    def values(self, n):
        """Array ``a_1 .. a_n``."""
        n = check_positive_int("n", n)
        if self.kind == "power":
            k = np.arange(1, n + 1, dtype=float)
            return k ** (-2.0 * self.alpha)
        if n > len(self.table):
            raise InvalidConfigError(
                f"decay table has {len(self.table)} entries; {n} requested"
            )
        return np.asarray(self.table[:n], dtype=float)

    def gaps(self, n):
        """Array of successive differences ``a_j - a_{j+1}`` for j = 1..n (needs a_{n+1})."""
        a = self.values(n + 1)
        return a[:-1] - a[1:]


@dataclass(frozen=True)
class Ball:
    """The set of sequences with tail energy profile bounded by ``p0 * a_k``."""

    a: DecaySequence
    p0: float

    def __post_init__(self):
        check_positive("p0", self.p0)

    @classmethod
    def power(cls, alpha, p0):
        return cls(a=DecaySequence.power(alpha), p0=float(p0))


@dataclass(frozen=True)
class SobolevEllipsoid:
    """Sequences with ``sum_j j^{2*beta} x_j^2 <= radius`` (radius None = whole space)."""

    beta: float
    radius: float = None

    def __post_init__(self):
        check_positive("beta", self.beta)
        if self.radius is not None:
            check_positive("radius", self.radius)


def tail_ratio_norm(x, a):
    """sup over k of ``a_k^{-1} * sum_{j>=k} x_j^2``, exact for finitely supported x.

    Computed with a single backward pass over tail sums.
    """
    x = as_vector("x", x)
    if x.size == 0:
        return 0.0
    tails = np.cumsum((x * x)[::-1])[::-1]
    return float(np.max(tails / a.values(x.size)))


def is_member(x, ball):
    """Membership in the ball, with a small relative slack for floating error."""
    return tail_ratio_norm(x, ball.a) <= ball.p0 * (1.0 + MEMBERSHIP_SLACK)


def worst_case_signal(ball, n):
    """The boundary signal with ``x_j^2 = p0 * (a_j - a_{j+1})``, positive roots.

    Its tail sums telescope to ``p0 * (a_k - a_{n+1})``, so every truncation
    is a member of the ball; signs are immaterial for every quadratic risk.
    """
    n = check_positive_int("n", n)
    return np.sqrt(ball.p0 * ball.a.gaps(n))


def sobolev_norm_sq(x, beta):
    """``sum_{j<=len(x)} j^{2*beta} x_j^2``."""
    check_positive("beta", beta)
    x = as_vector("x", x)
    if x.size == 0:
        return 0.0
    j = np.arange(1, x.size + 1, dtype=float)
    return float(np.sum(j ** (2.0 * beta) * x * x))


def sample_ball_member(ball, n, seed, t):
    """Random element of the ball with tail-ratio norm exactly ``t * p0``.

    Draws a nonnegative direction by squaring independent Gaussian deviates,
    then rescales; the norm is homogeneous of degree 2, so the target norm is
    hit exactly. Deterministic in (seed, t).
    """
    n = check_positive_int("n", n)
    t = float(t)
    if not 0.0 <= t <= 1.0:
        raise InvalidConfigError(f"t must lie in [0, 1], got {t}")
    if t == 0.0:
        return np.zeros(n)
    stream = 0
    while True:
        direction = standard_normals(seed, stream, n) ** 2
        norm = tail_ratio_norm(direction, ball.a)
        if norm > 0.0:
            break
        stream += 1  # probability-zero resample path
    return direction * np.sqrt(t * ball.p0 / norm)
