"""Modified Bessel functions of order 0 and 1 and their regular remainders.

All functions accept scalars or numpy arrays and return the same shape.

The remainders used by the logarithmic kernel splitting are

    sigma0(z) = K0(z) + ln(z/2) I0(z)
    sigma1(z) = K1(z) - 1/z - ln(z/2) I1(z)

Both are entire in z and are summed from their own power series, so they stay
accurate where the defining identity would cancel catastrophically.

Evaluation strategy:

* I0, I1: ascending series for z <= 40 (all terms positive), Hankel
  asymptotic expansion above.
* K0, K1: ascending series for z <= 2, Steed's continued fraction (CF2 with
  the Thompson-Barnett normalisation) above.
* sigma0, sigma1: ascending series for z <= 30, defining identity above.
"""

import math

import numpy as np

from .exceptions import DomainError

EULER_GAMMA = 0.5772156649015329

_I_SERIES_MAX = 40.0
_K_SERIES_MAX = 2.0
_SIGMA_SERIES_MAX = 30.0
_MAX_TERMS = 400
_EPS = 1e-17

# harmonic numbers h_0 = 0, h_k = 1 + 1/2 + ... + 1/k
_HARMONIC = np.concatenate(([0.0], np.cumsum(1.0 / np.arange(1, _MAX_TERMS + 2))))


def _as_array(z, name, allow_zero=True):
    arr = np.asarray(z, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise DomainError(f"{name}: argument must be finite")
    if allow_zero:
        if np.any(arr < 0):
            raise DomainError(f"{name}: argument must be nonnegative")
    elif np.any(arr <= 0):
        raise DomainError(f"{name}: argument must be positive")
    return arr


def _wrap(out, like):
    if np.ndim(like) == 0:
        return float(out)
    return out


def _series(z, order, coeffs=None):
    """Sum sum_k c_k (z/2)^(2k+order) / (k! (k+order)!) with c_k from ``coeffs``.

    ``coeffs(k)`` returns the scalar multiplier of the k-th term; ``None``
    means all ones (the plain I_order series).
    """
    q = 0.25 * z * z
    term = (0.5 * z) ** order / math.factorial(order)
    total = term * (coeffs(0) if coeffs else 1.0)
    for k in range(1, _MAX_TERMS):
        term = term * q / (k * (k + order))
        contrib = term * (coeffs(k) if coeffs else 1.0)
        total = total + contrib
        if np.all(np.abs(contrib) <= _EPS * np.abs(total)):
            break
    return total


def _hankel_i(z, order):
    # I_nu(z) ~ e^z / sqrt(2 pi z) * sum_k (-1)^k a_k(nu) / z^k
    mu = 4.0 * order * order
    term = np.ones_like(z)
    total = np.ones_like(z)
    for k in range(1, 60):
        term = -term * (mu - (2 * k - 1) ** 2) / (k * 8.0 * z)
        total = total + term
        if np.all(np.abs(term) <= _EPS * np.abs(total)):
            break
    return np.exp(z) / np.sqrt(2.0 * np.pi * z) * total


def _bessel_i(z, order):
    out = np.empty_like(z)
    small = z <= _I_SERIES_MAX
    if np.any(small):
        out[small] = _series(z[small], order)
    if np.any(~small):
        out[~small] = _hankel_i(z[~small], order)
    return out


def _sigma0_series(z):
    return _series(z, 0, lambda k: _HARMONIC[k] - EULER_GAMMA)


def _sigma1_series(z):
    # K1 = 1/z + ln(z/2) I1 - (z/4) sum (psi(k+1) + psi(k+2)) (z^2/4)^k / (k!(k+1)!)
    return -0.5 * _series(
        z, 1, lambda k: _HARMONIC[k] + _HARMONIC[k + 1] - 2.0 * EULER_GAMMA
    )


def _k01_steed(x):
    """K0 and K1 for x >= 2 by Steed's algorithm applied to CF2."""
    b = 2.0 * (1.0 + x)
    d = 1.0 / b
    h = d.copy()
    delh = d.copy()
    q1 = np.zeros_like(x)
    q2 = np.ones_like(x)
    a1 = 0.25
    q = np.full_like(x, a1)
    c = np.full_like(x, a1)
    a = -a1
    s = 1.0 + q * delh
    for i in range(1, 10000):
        a -= 2 * i
        c = -a * c / (i + 1.0)
        qnew = (q1 - b * q2) / a
        q1 = q2
        q2 = qnew
        q = q + c * qnew
        b = b + 2.0
        d = 1.0 / (b + a * d)
        delh = (b * d - 1.0) * delh
        h = h + delh
        dels = q * delh
        s = s + dels
        if np.all(np.abs(dels) <= 1e-17 * np.abs(s)):
            break
    h = a1 * h
    k0 = np.sqrt(np.pi / (2.0 * x)) * np.exp(-x) / s
    k1 = k0 * (x + 0.5 - h) / x
    return k0, k1


def i0(z):
    """Modified Bessel function of the first kind, order 0."""
    arr = _as_array(z, "i0")
    return _wrap(_bessel_i(np.atleast_1d(arr).copy(), 0).reshape(arr.shape), z)


def i1(z):
    """Modified Bessel function of the first kind, order 1."""
    arr = _as_array(z, "i1")
    return _wrap(_bessel_i(np.atleast_1d(arr).copy(), 1).reshape(arr.shape), z)


def sigma0(z):
    """Regular part of K0: ``K0(z) + ln(z/2) I0(z)``; equals ``-EULER_GAMMA`` at 0."""
    arr = _as_array(z, "sigma0")
    flat = np.atleast_1d(arr).astype(float)
    out = np.empty_like(flat)
    small = flat <= _SIGMA_SERIES_MAX
    if np.any(small):
        out[small] = _sigma0_series(flat[small])
    if np.any(~small):
        big = flat[~small]
        out[~small] = _k0_positive(big) + np.log(0.5 * big) * _bessel_i(big, 0)
    return _wrap(out.reshape(arr.shape), z)


def sigma1(z):
    """Regular part of K1: ``K1(z) - 1/z - ln(z/2) I1(z)``; vanishes at 0."""
    arr = _as_array(z, "sigma1")
    flat = np.atleast_1d(arr).astype(float)
    out = np.empty_like(flat)
    small = flat <= _SIGMA_SERIES_MAX
    if np.any(small):
        out[small] = _sigma1_series(flat[small])
    if np.any(~small):
        big = flat[~small]
        out[~small] = (
            _k1_positive(big) - 1.0 / big - np.log(0.5 * big) * _bessel_i(big, 1)
        )
    return _wrap(out.reshape(arr.shape), z)


def _k0_positive(x):
    out = np.empty_like(x)
    small = x <= _K_SERIES_MAX
    if np.any(small):
        xs = x[small]
        out[small] = -np.log(0.5 * xs) * _series(xs, 0) + _sigma0_series(xs)
    if np.any(~small):
        out[~small] = _k01_steed(x[~small])[0]
    return out


def _k1_positive(x):
    out = np.empty_like(x)
    small = x <= _K_SERIES_MAX
    if np.any(small):
        xs = x[small]
        out[small] = 1.0 / xs + np.log(0.5 * xs) * _series(xs, 1) + _sigma1_series(xs)
    if np.any(~small):
        out[~small] = _k01_steed(x[~small])[1]
    return out


def k0(z):
    """Modified Bessel function of the second kind, order 0 (z > 0)."""
    arr = _as_array(z, "k0", allow_zero=False)
    return _wrap(_k0_positive(np.atleast_1d(arr).copy()).reshape(arr.shape), z)


def k1(z):
    """Modified Bessel function of the second kind, order 1 (z > 0)."""
    arr = _as_array(z, "k1", allow_zero=False)
    return _wrap(_k1_positive(np.atleast_1d(arr).copy()).reshape(arr.shape), z)
