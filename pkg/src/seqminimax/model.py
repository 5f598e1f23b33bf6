"""The Gaussian sequence observation model.

Observations are ``y_j = x_j + epsilon * sigma_j * xi_j`` with known noise
profile ``sigma`` and independent standard Gaussian ``xi_j``.  A diagonal
linear operator with singular values ``r_j`` reduces to the same model by
dividing through, which inflates the noise profile to ``sigma_j / |r_j|``.
"""

from dataclasses import dataclass, field

import numpy as np

from .exceptions import InvalidConfigError, SingularSpectrumError
from .rng import standard_normals
from .validation import as_vector, check_positive, check_positive_int


@dataclass(frozen=True)
class NoiseProfile:
    """Per-coordinate noise scales ``sigma_j > 0``.

    Kinds: ``constant`` (sigma_j = sigma0), ``power`` (sigma_j = c * j**p)
    and ``table`` (explicit finite list).
    """

    kind: str
    sigma0: float = None
    c: float = None
    p: float = None
    table: tuple = field(default=None, repr=False)

    @classmethod
    def constant(cls, sigma0):
        return cls(kind="constant", sigma0=check_positive("sigma0", sigma0))

    @classmethod
    def power(cls, c, p):
        return cls(kind="power", c=check_positive("c", c), p=float(p))

    @classmethod
    def from_table(cls, values):
        # zeros are representable so the noise-floor check can report them;
        # operations needing positivity validate it themselves
        arr = as_vector("noise table", values)
        if arr.size < 1:
            raise InvalidConfigError("noise table must contain at least one value")
        if np.any(arr < 0.0):
            j = int(np.argmax(arr < 0.0)) + 1
            raise InvalidConfigError(f"noise values must be nonnegative; sigma_{j} = {arr[j - 1]}")
        return cls(kind="table", table=tuple(float(v) for v in arr))

    @property
    def n_max(self):
        return None if self.kind in ("constant", "power") else len(self.table)

    def sigmas(self, n):
        """Array ``sigma_1 .. sigma_n``."""
        n = check_positive_int("n", n)
        if self.kind == "constant":
            return np.full(n, self.sigma0)
        if self.kind == "power":
            j = np.arange(1, n + 1, dtype=float)
            return self.c * j**self.p
        if n > len(self.table):
            raise InvalidConfigError(f"noise table has {len(self.table)} entries; {n} requested")
        return np.asarray(self.table[:n], dtype=float)


@dataclass(frozen=True)
class SequenceModelConfig:
    """Noise level, noise profile and truncation level of the observation model."""

    epsilon: float
    noise: NoiseProfile
    n: int

    def __post_init__(self):
        check_positive("epsilon", self.epsilon)
        check_positive_int("n", self.n)


@dataclass(frozen=True)
class OperatorSpectrum:
    """Singular values of a diagonal operator.

    Kinds: ``power`` (|r_j| = C * j**(-gamma)), ``exp``
    (|r_j| = C * j**(-kappa) * exp(-B * j**gamma)) and ``table``.
    An optional sign sequence flips individual values (default all +1).
    """

    kind: str
    c: float = None
    gamma: float = None
    kappa: float = None
    b: float = None
    table: tuple = field(default=None, repr=False)
    signs: tuple = field(default=None, repr=False)

    @classmethod
    def power(cls, c, gamma, signs=None):
        return cls(
            kind="power",
            c=check_positive("C", c),
            gamma=float(gamma),
            signs=_as_signs(signs),
        )

    @classmethod
    def exponential(cls, c, kappa, b, gamma, signs=None):
        return cls(
            kind="exp",
            c=check_positive("C", c),
            kappa=float(kappa),
            b=check_positive("B", b),
            gamma=check_positive("gamma", gamma),
            signs=_as_signs(signs),
        )

    @classmethod
    def from_table(cls, values, signs=None):
        arr = as_vector("spectrum table", values)
        return cls(kind="table", table=tuple(float(v) for v in arr), signs=_as_signs(signs))

    def values(self, n):
        """Signed singular values ``r_1 .. r_n``; raises at the first zero."""
        n = check_positive_int("n", n)
        j = np.arange(1, n + 1, dtype=float)
        if self.kind == "power":
            r = self.c * j ** (-self.gamma)
        elif self.kind == "exp":
            r = self.c * j ** (-self.kappa) * np.exp(-self.b * j**self.gamma)
        else:
            if n > len(self.table):
                raise InvalidConfigError(
                    f"spectrum table has {len(self.table)} entries; {n} requested"
                )
            r = np.asarray(self.table[:n], dtype=float)
        if self.signs is not None:
            s = np.asarray(self.signs[:n], dtype=float)
            if s.size < n:
                raise InvalidConfigError("sign sequence shorter than requested length")
            r = r * s
        if np.any(r == 0.0) or not np.all(np.isfinite(r)):
            idx = int(np.argmax((r == 0.0) | ~np.isfinite(r))) + 1
            raise SingularSpectrumError(idx)
        return r


def _as_signs(signs):
    if signs is None:
        return None
    arr = as_vector("signs", signs)
    if np.any(np.abs(arr) != 1.0):
        raise InvalidConfigError("signs must be +1 or -1")
    return tuple(float(v) for v in arr)


def sample_observation(x, cfg, seed, stream=0):
    """Draw ``y_j = x_j + epsilon * sigma_j * xi_j`` for j = 1..cfg.n.

    The Gaussian deviates are a pure function of (seed, stream, j), so the
    same inputs always produce bit-identical output; Monte-Carlo replicates
    should vary ``stream``.
    """
    x = as_vector("x", x)
    if x.size > cfg.n:
        raise InvalidConfigError(f"signal has {x.size} coordinates but cfg.n = {cfg.n}")
    xi = standard_normals(seed, stream, cfg.n)
    padded = np.zeros(cfg.n)
    padded[: x.size] = x
    return padded + cfg.epsilon * cfg.noise.sigmas(cfg.n) * xi


def effective_noise(spectrum, noise, n):
    """Noise profile after dividing observations by the spectrum: sigma_j / |r_j|."""
    r = spectrum.values(n)
    return NoiseProfile.from_table(noise.sigmas(n) / np.abs(r))


def to_direct_model(z, spectrum, cfg):
    """Divide indirect observations by the spectrum.

    Returns ``(y, noise')`` where ``y_j = z_j / r_j`` and
    ``noise'_j = sigma_j / |r_j|``; downstream estimators consume the pair
    unchanged.
    """
    z = as_vector("z", z)
    n = z.size
    if n > cfg.n:
        raise InvalidConfigError(f"observation has {n} coordinates but cfg.n = {cfg.n}")
    r = spectrum.values(max(n, 1))
    return z / r[:n], effective_noise(spectrum, cfg.noise, cfg.n)


@dataclass(frozen=True)
class AssumptionCheck:
    passed: bool
    witness: float = None
    first_violation: int = None

    def to_dict(self):
        out = {"passed": bool(self.passed)}
        if self.witness is not None:
            out["witness"] = float(self.witness)
        if self.first_violation is not None:
            out["first_violation"] = int(self.first_violation)
        return out


@dataclass(frozen=True)
class AssumptionReport:
    """Results of the three structural checks behind the optimality guarantees."""

    a1: AssumptionCheck
    a2: AssumptionCheck
    b1: AssumptionCheck

    def to_dict(self):
        return {"a1": self.a1.to_dict(), "a2": self.a2.to_dict(), "b1": self.b1.to_dict()}


def _a2_first_violation(a_values, sigma_sq):
    """First j in 2..n with sigma_j^2*(a_{j-1}-a_j) <= sigma_{j-1}^2*(a_j-a_{j+1}), else None."""
    n = sigma_sq.size
    lhs = sigma_sq[1:n] * (a_values[: n - 1] - a_values[1:n])
    rhs = sigma_sq[: n - 1] * (a_values[1:n] - a_values[2 : n + 1])
    bad = lhs <= rhs
    if np.any(bad):
        return int(np.argmax(bad)) + 2
    return None


def validate_assumptions(a, noise, alpha, n, j0=1):
    """Check the noise floor (a1) and the two monotonicity conditions (a2, b1).

    a1: min over j <= n of sigma_j^2 is positive (the minimum is the witness).
    a2: sigma_j^2 (a_{j-1} - a_j) > sigma_{j-1}^2 (a_j - a_{j+1}) for 2 <= j <= n.
    b1: sigma_j^2 j^{2*alpha+1} strictly increases for j0 < j <= n.
    """
    n = check_positive_int("n", n, minimum=2)
    j0 = check_positive_int("j0", j0)
    check_positive("alpha", alpha)
    av = a.values(n + 1)
    s2 = noise.sigmas(n) ** 2

    min_s2 = float(np.min(s2))
    a1 = AssumptionCheck(
        passed=min_s2 > 0.0,
        witness=min_s2,
        first_violation=None if min_s2 > 0.0 else int(np.argmin(s2)) + 1,
    )

    bad_a2 = _a2_first_violation(av, s2)
    a2 = AssumptionCheck(passed=bad_a2 is None, first_violation=bad_a2)

    j = np.arange(1, n + 1, dtype=float)
    seq = s2 * j ** (2.0 * alpha + 1.0)
    b1_bad = None
    if j0 < n:
        inc = seq[j0:] > seq[j0 - 1 : -1]
        if not np.all(inc):
            b1_bad = int(np.argmax(~inc)) + j0 + 1
    b1 = AssumptionCheck(passed=b1_bad is None, first_violation=b1_bad)

    return AssumptionReport(a1=a1, a2=a2, b1=b1)
