"""Input and parameter validation shared by the estimators."""

import numbers

import numpy as np
from sklearn.utils import check_array


def check_unit_data(X):
    """Validate a sample matrix whose features are already scaled to [0, 1]."""
    X = check_array(X, dtype=np.float64, ensure_min_samples=1)
    bad = np.argwhere((X < 0.0) | (X > 1.0))
    if bad.size:
        i, j = bad[0]
        raise ValueError(
            f"feature values must lie in [0, 1]; sample {i}, feature {j} "
            f"is {X[i, j]!r}"
        )
    return X


def check_fraction(value, name, *, low=0.0, high=1.0, low_open=False):
    if not isinstance(value, numbers.Real):
        raise TypeError(f"{name} must be a real number, got {value!r}")
    ok = (low < value if low_open else low <= value) and value <= high
    if not ok:
        bracket = "(" if low_open else "["
        raise ValueError(f"{name} must lie in {bracket}{low}, {high}], got {value!r}")
    return float(value)


def check_dual_vigilance(rho_lb, rho_ub):
    rho_lb = check_fraction(rho_lb, "rho_lb")
    rho_ub = check_fraction(rho_ub, "rho_ub")
    if rho_lb > rho_ub:
        raise ValueError(f"rho_lb ({rho_lb}) must not exceed rho_ub ({rho_ub})")
    return rho_lb, rho_ub


def check_art_params(alpha, beta, gamma=1.0, gamma_star=1.0):
    """Validate choice, learning rate and kernel widths; returns floats."""
    if not alpha > 0:
        raise ValueError(f"alpha must be positive, got {alpha!r}")
    beta = check_fraction(beta, "beta", low_open=True)
    if not gamma > 0:
        raise ValueError(f"gamma must be positive, got {gamma!r}")
    if not 0 <= gamma_star <= gamma:
        raise ValueError(
            f"gamma_star must lie in [0, gamma={gamma}], got {gamma_star!r}"
        )
    return float(alpha), beta, float(gamma), float(gamma_star)


def grow(arr, capacity):
    """Return ``arr`` enlarged along axis 0 to at least ``capacity`` rows."""
    if arr.shape[0] >= capacity:
        return arr
    out = np.zeros((capacity,) + arr.shape[1:], dtype=arr.dtype)
    out[: arr.shape[0]] = arr
    return out
