"""Input validation helpers shared by the estimator and the CLI."""

import numbers

import numpy as np
from sklearn.utils.validation import check_array

from .exceptions import DomainError


def check_points(X):
    """Validate an ``(n, 2)`` array of planar points; a single point is promoted."""
    X = np.asarray(X, dtype=float)
    if X.ndim == 1:
        X = X.reshape(1, -1)
    try:
        X = check_array(X, dtype=float, ensure_all_finite=True)
    except ValueError as exc:
        raise DomainError(str(exc)) from exc
    if X.shape[1] != 2:
        raise DomainError(f"points must have 2 columns, got {X.shape[1]}")
    return X


def check_m(M, minimum=2):
    if isinstance(M, bool) or not isinstance(M, numbers.Integral) or M < minimum:
        raise DomainError(f"M must be an integer >= {minimum}, got {M!r}")
    return int(M)


def check_m_list(ms):
    ms = [check_m(m) for m in ms]
    if not ms:
        raise DomainError("M list must not be empty")
    if any(b <= a for a, b in zip(ms, ms[1:])):
        raise DomainError("M list must be strictly ascending")
    return ms


def check_curve_index(i):
    if i not in (1, 2):
        raise DomainError(f"curve index must be 1 or 2, got {i!r}")
    return i
