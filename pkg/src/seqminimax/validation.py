"""Small input-validation helpers used throughout the package."""

import numpy as np

from .exceptions import InvalidConfigError


def check_positive(name, value):
    """Require a finite scalar > 0 and return it as float."""
    v = float(value)
    if not np.isfinite(v) or v <= 0.0:
        raise InvalidConfigError(f"{name} must be a finite positive number, got {value!r}")
    return v


def check_nonnegative(name, value):
    v = float(value)
    if not np.isfinite(v) or v < 0.0:
        raise InvalidConfigError(f"{name} must be a finite nonnegative number, got {value!r}")
    return v


def check_positive_int(name, value, minimum=1):
    v = int(value)
    if v != value or v < minimum:
        raise InvalidConfigError(f"{name} must be an integer >= {minimum}, got {value!r}")
    return v


def as_vector(name, x):
    """Coerce to a finite 1-D float array (empty allowed)."""
    arr = np.asarray(x, dtype=float)
    if arr.ndim != 1:
        raise InvalidConfigError(f"{name} must be one-dimensional, got shape {arr.shape}")
    if arr.size and not np.all(np.isfinite(arr)):
        raise InvalidConfigError(f"{name} must contain only finite values")
    return arr
