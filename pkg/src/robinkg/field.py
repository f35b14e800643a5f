"""Evaluation of the approximate solution from discrete densities."""

import numpy as np

from .exceptions import DomainError
from .geometry import enclosed, nodes
from .kernels import boundary_kernel_split, field_kernel
from .quadrature import QuadratureRule, log_weights
from .solver import fundamental_robin_value
from .special import k0

_NEAR_BOUNDARY = 1e-9


def fundamental_solution(x, y, kappa):
    """``Phi(x, y) = K0(kappa |x - y|) / (2 pi)``."""
    d = np.asarray(x, dtype=float) - np.asarray(y, dtype=float)
    r = np.hypot(d[..., 0], d[..., 1])
    if np.any(r == 0.0):
        raise DomainError("fundamental solution evaluated at coincident points")
    out = k0(kappa * r) / (2.0 * np.pi)
    return float(out) if np.ndim(out) == 0 else out


def inside_domain(problem, pts, tol=_NEAR_BOUNDARY):
    """Mask of points strictly inside D and farther than ``tol`` from both curves."""
    pts = np.atleast_2d(np.asarray(pts, dtype=float))
    in1, d1 = enclosed(problem.gamma1, pts)
    in2, d2 = enclosed(problem.gamma2, pts)
    return in1 & ~in2 & (d1 > tol) & (d2 > tol)


def resample_density(psi, n_fine):
    """Trigonometric interpolant of nodal values ``psi`` sampled on ``n_fine`` nodes.

    The Nyquist mode is split symmetrically so the interpolant is real.
    """
    psi = np.asarray(psi, dtype=float)
    n = psi.size
    if n_fine == n:
        return psi.copy()
    if n_fine < n or n % 2:
        raise DomainError("can only upsample an even number of nodes")
    c = np.fft.rfft(psi)
    c[-1] *= 0.5
    return np.fft.irfft(c, n=n_fine) * (n_fine / n)


def _interior_sum(sol, pts, oversample):
    ks = sol.problem.kernels
    n = 2 * sol.M * oversample
    t = nodes(sol.M * oversample)
    out = np.zeros(pts.shape[0])
    for psi, j in ((sol.psi1, 1), (sol.psi2, 2)):
        K = field_kernel(ks, j, pts[:, None, :], t[None, :])
        out += K @ resample_density(psi, n) / n
    return out


def eval_interior(sol, x, oversample=1):
    """Approximate ``u`` at point(s) ``x`` strictly inside D.

    ``x`` is a single point ``(x1, x2)`` or an array of shape ``(n, 2)``.
    With the default ``oversample=1`` this is the trapezoid rule on the 2M
    collocation nodes. Larger factors apply the rule on ``2M*oversample``
    nodes to the trigonometric interpolant of the densities, which helps for
    points close to a boundary curve.
    """
    if int(oversample) != oversample or oversample < 1:
        raise DomainError("oversample must be a positive integer")
    arr = np.asarray(x, dtype=float)
    pts = np.atleast_2d(arr)
    if pts.shape[-1] != 2 or pts.ndim != 2:
        raise DomainError("points must have shape (n, 2)")
    ok = inside_domain(sol.problem, pts)
    if not np.all(ok):
        bad = pts[~ok][0]
        raise DomainError(f"point {tuple(bad)} is not inside the domain")
    out = _interior_sum(sol, pts, int(oversample))
    return float(out[0]) if arr.ndim == 1 else out


def eval_on_boundary(sol, i, t):
    """Approximate ``u(x_i(t))`` for parameter value(s) ``t`` on curve ``i``."""
    if i not in (1, 2):
        raise DomainError("curve index must be 1 or 2")
    ks = sol.problem.kernels
    t_arr = np.asarray(t, dtype=float)
    tt = np.atleast_1d(t_arr) % (2.0 * np.pi)
    rule = QuadratureRule(sol.M)
    tj = rule.nodes
    n = tj.size
    own, other = (sol.psi1, sol.psi2) if i == 1 else (sol.psi2, sol.psi1)
    k = 2 if i == 1 else 1

    T, TAU = np.meshgrid(tt, tj, indexing="ij")
    log_part, smooth = boundary_kernel_split(ks, i, T, TAU)
    own_w = log_weights(rule, tt) * log_part + smooth / n
    x = ks.curve(i).points(tt)
    K = field_kernel(ks, k, x[:, None, :], tj[None, :])
    out = own_w @ own + K @ other / n
    return float(out[0]) if t_arr.ndim == 0 else out


def robin_data_probe(problem, i, t):
    """Exact Robin datum of fundamental-type data at any parameter ``t``."""
    if problem.data.kind != "fundamental":
        raise DomainError("Robin data probe needs fundamental-type data")
    s = problem.curve(i).sample(np.asarray(t, dtype=float))
    out = fundamental_robin_value(problem.physics, i, s, problem.data.y_star)
    return float(out) if np.ndim(t) == 0 else out
