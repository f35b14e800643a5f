"""Kernels of the parametrized single-layer system and their log splittings.

With ``x = x_i(t)``, ``y = x_j(tau)``, ``r = |x - y|`` and ``z = kappa*r`` the
system kernel is

    H_ij(t, tau) = -kappa K1(z) (x - y).nu(x) / r + lambda_i K0(z)

and on the diagonal blocks it is split as

    H_ii = H_ii^(1) * ln((4/e) sin^2((t - tau)/2)) + H_ii^(2)

Two splittings are available:

``"analytic"`` (default)
    ``H_ii^(1) = -(lambda_i/2) I0(z) - (kappa/2) I1(z) (x - y).nu(x) / r``.
    Both parts are analytic in (t, tau), so the Nystrom scheme converges
    exponentially.
``"plain"``
    ``H_ii^(1) = -(lambda_i/2) I0(z)`` only. The ``ln(z/2) I1(z)`` term then
    stays in ``H_ii^(2)``, which behaves like ``(t - tau)^2 ln|t - tau|``
    near the diagonal and limits convergence to roughly O(M^-3).

Both share the diagonal limits. The smooth part is evaluated from the regular
Bessel remainders, never as ``H - H^(1) * log``. The field kernel
``K0(kappa |x - x_j(tau)|)`` gets the same treatment (without lambda) when the
target sits on the source curve.
"""

from dataclasses import dataclass

import numpy as np

from .exceptions import DomainError
from .geometry import ParametricCurve, curvature_term
from .special import EULER_GAMMA, i0, i1, k0, k1, sigma0, sigma1


SPLITS = ("analytic", "plain")


@dataclass(frozen=True)
class PhysicsParams:
    kappa: float
    lambda1: float
    lambda2: float

    def __post_init__(self):
        for name in ("kappa", "lambda1", "lambda2"):
            v = getattr(self, name)
            if not (np.isfinite(v) and v > 0):
                raise DomainError(f"{name} must be positive and finite, got {v!r}")

    def lam(self, i):
        return self.lambda1 if i == 1 else self.lambda2


@dataclass(frozen=True)
class KernelSplit:
    physics: PhysicsParams
    gamma1: ParametricCurve
    gamma2: ParametricCurve
    split: str = "analytic"

    def __post_init__(self):
        if self.split not in SPLITS:
            raise DomainError(f"unknown kernel split {self.split!r}; use one of {SPLITS}")

    def curve(self, i):
        if i not in (1, 2):
            raise DomainError(f"curve index must be 1 or 2, got {i!r}")
        return self.gamma1 if i == 1 else self.gamma2


def _geometry(ks, i, j, t, tau):
    t, tau = np.broadcast_arrays(np.asarray(t, float), np.asarray(tau, float))
    sx = ks.curve(i).sample(t)
    if i == j:
        diff = ks.curve(i).chord(t, tau)
    else:
        diff = sx.x - ks.curve(j).points(tau)
    r = np.hypot(diff[..., 0], diff[..., 1])
    dn = np.sum(diff * sx.nu, axis=-1)
    return t, tau, sx, r, dn


def _coincident(t, tau):
    return np.sin(0.5 * (t - tau)) == 0.0


def _scalar(out, t):
    return float(out) if np.ndim(t) == 0 else out


def h_full(ks, i, j, t, tau):
    """``H_ij(t, tau)``; raises for coincident points on the same curve."""
    t, tau, _, r, dn = _geometry(ks, i, j, t, tau)
    if np.any(r == 0.0):
        raise DomainError("kernel evaluated at coincident points; use the log split")
    kappa = ks.physics.kappa
    z = kappa * r
    out = -kappa * k1(z) * dn / r + ks.physics.lam(i) * k0(z)
    return _scalar(out, t)


def h_diag_log(ks, i, t, tau):
    """Coefficient ``H_ii^(1)`` of the logarithmic factor (``-lambda_i/2`` at t = tau)."""
    t, tau, _, r, dn = _geometry(ks, i, i, t, tau)
    kappa = ks.physics.kappa
    z = kappa * r
    out = -0.5 * ks.physics.lam(i) * i0(z)
    if ks.split == "analytic":
        out = out - 0.5 * kappa * _i1_over_r(kappa, r) * dn
    return _scalar(out, t)


def h_diag_smooth(ks, i, t, tau):
    """Smooth remainder ``H_ii^(2)`` including its closed-form diagonal."""
    t, tau, sx, r, dn = _geometry(ks, i, i, t, tau)
    kappa, lam = ks.physics.kappa, ks.physics.lam(i)
    diag = _coincident(t, tau)
    out = np.empty(t.shape)

    if np.any(diag):
        sd = _sub(sx, diag)
        out[diag] = (
            curvature_term(sd)
            + 0.5 * lam * np.log(4.0 / (np.e * kappa**2 * sd.jac**2))
            - lam * EULER_GAMMA
        )
    off = ~diag
    if np.any(off):
        ro, do = r[off], dn[off]
        z = kappa * ro
        sin2 = np.sin(0.5 * (t[off] - tau[off])) ** 2
        log_ratio = np.log(16.0 * sin2 / (np.e * z * z))
        out[off] = (
            0.5 * lam * i0(z) * log_ratio
            - do / ro**2
            - kappa * sigma1(z) * do / ro
            + lam * sigma0(z)
        )
        if ks.split == "analytic":
            out[off] += 0.5 * kappa * i1(z) * do / ro * log_ratio
        else:
            out[off] -= kappa * np.log(0.5 * z) * i1(z) * do / ro
    return _scalar(out, t)


def field_kernel(ks, j, x, tau):
    """``K0(kappa |x - x_j(tau)|)`` for target points ``x`` off the curve.

    ``x`` has shape ``(..., 2)`` and broadcasts against ``tau``.
    """
    x = np.asarray(x, dtype=float)
    y = ks.curve(j).points(np.asarray(tau, dtype=float))
    d = x - y
    r = np.hypot(d[..., 0], d[..., 1])
    if np.any(r == 0.0):
        raise DomainError("field point lies on the boundary curve")
    return k0(ks.physics.kappa * r)


def _i1_over_r(kappa, r):
    # I1(kappa r) / r, finite (kappa/2) at r = 0
    out = np.full(np.shape(r), 0.5 * kappa)
    nz = r > 0
    out[nz] = i1(kappa * r[nz]) / r[nz]
    return out


def boundary_kernel_split(ks, i, t, tau):
    """Split ``K0(kappa |x_i(t) - x_i(tau)|)`` into (log coefficient, smooth part).

    Returns ``(-I0(z)/2, K0(z) + (I0(z)/2) ln((4/e) sin^2((t - tau)/2)))``
    with the smooth part summed from ``sigma0``; its diagonal value is
    ``0.5*ln(4/(e kappa^2 |x_i'|^2)) - EULER_GAMMA``.
    """
    t, tau, sx, r, _ = _geometry(ks, i, i, t, tau)
    kappa = ks.physics.kappa
    z = kappa * r
    log_part = -0.5 * i0(z)
    diag = _coincident(t, tau)
    smooth = np.empty(t.shape)
    if np.any(diag):
        jac = sx.jac[diag]
        smooth[diag] = 0.5 * np.log(4.0 / (np.e * kappa**2 * jac**2)) - EULER_GAMMA
    off = ~diag
    if np.any(off):
        zo = z[off]
        sin2 = np.sin(0.5 * (t[off] - tau[off])) ** 2
        smooth[off] = 0.5 * i0(zo) * np.log(16.0 * sin2 / (np.e * zo * zo)) + sigma0(zo)
    if t.ndim == 0:
        return float(log_part), float(smooth)
    return log_part, smooth


def _sub(s, mask):
    return type(s)(x=s.x[mask], dx=s.dx[mask], ddx=s.ddx[mask], jac=s.jac[mask], nu=s.nu[mask])
