"""Small input-validation helpers shared across the package."""

import numpy as np

__all__ = ["require_finite", "require_positive", "require_nonnegative",
           "require_in_range", "as_matrix", "as_vector"]


def require_finite(x, name):
    """Return ``x`` unchanged after checking every entry is finite."""
    if not np.all(np.isfinite(x)):
        raise ValueError(f"{name} contains non-finite values")
    return x


def require_positive(x, name):
    if not np.isfinite(x) or x <= 0:
        raise ValueError(f"{name} must be positive and finite, got {x!r}")
    return x


def require_nonnegative(x, name):
    if not np.isfinite(x) or x < 0:
        raise ValueError(f"{name} must be nonnegative and finite, got {x!r}")
    return x


def require_in_range(x, lo, hi, name, open_left=False, open_right=False):
    ok = np.isfinite(x)
    ok = ok and (x > lo if open_left else x >= lo)
    ok = ok and (x < hi if open_right else x <= hi)
    if not ok:
        lb = "(" if open_left else "["
        rb = ")" if open_right else "]"
        raise ValueError(f"{name} must lie in {lb}{lo}, {hi}{rb}, got {x!r}")
    return x


def as_matrix(x, name):
    """Coerce to a 2-d float array, rejecting non-finite entries."""
    a = np.asarray(x, dtype=float)
    if a.ndim != 2:
        raise ValueError(f"{name} must be a 2-d array, got shape {a.shape}")
    return require_finite(a, name)


def as_vector(x, name):
    a = np.asarray(x, dtype=float)
    if a.ndim != 1:
        raise ValueError(f"{name} must be a 1-d array, got shape {a.shape}")
    return require_finite(a, name)
