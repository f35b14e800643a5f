"""Closed parametrized boundary curves.

A curve is a 2*pi-periodic map t -> (x1(t), x2(t)) with closed-form first and
second derivatives. Every curve is built from a truncated trigonometric series

    x1(t) = c1 + sum_k a1_k cos(k t) + b1_k sin(k t)
    x2(t) = c2 + sum_k a2_k cos(k t) + b2_k sin(k t)      (k = 1, 2, ...)

which covers circles and ellipses as special cases. Normals are
``(x2'(t), -x1'(t)) / |x'(t)|``; for the required counterclockwise orientation
this points away from the region the curve encloses.
"""

from dataclasses import dataclass, field

import numpy as np

from .exceptions import DomainError

_VALIDATION_SAMPLES = 512


@dataclass(frozen=True)
class CurveSample:
    """Position, derivatives, speed and unit normal at parameter values.

    All fields are arrays; ``x``, ``dx``, ``ddx`` and ``nu`` have a trailing
    axis of length 2.
    """

    x: np.ndarray
    dx: np.ndarray
    ddx: np.ndarray
    jac: np.ndarray
    nu: np.ndarray


def _coeffs(values):
    return tuple(float(v) for v in (values or ()))


@dataclass(frozen=True)
class ParametricCurve:
    """A closed C^2 curve given by a trigonometric series per coordinate.

    Use :meth:`circle`, :meth:`ellipse` or :meth:`trig` to build one.
    ``x1_cos[k-1]`` multiplies ``cos(k t)`` in the first coordinate, and so on.
    """

    kind: str
    params: dict = field(compare=False)
    x1_cos: tuple = ()
    x1_sin: tuple = ()
    x2_cos: tuple = ()
    x2_sin: tuple = ()
    x1_const: float = 0.0
    x2_const: float = 0.0

    def __post_init__(self):
        for name in ("x1_cos", "x1_sin", "x2_cos", "x2_sin"):
            coeffs = _coeffs(getattr(self, name))
            if not all(np.isfinite(coeffs)):
                raise DomainError(f"curve coefficient {name} must be finite")
            object.__setattr__(self, name, coeffs)
        if not (np.isfinite(self.x1_const) and np.isfinite(self.x2_const)):
            raise DomainError("curve offsets must be finite")
        t = nodes(_VALIDATION_SAMPLES // 2)
        s = self.sample(t)
        if np.min(s.jac) <= 0.0:
            raise DomainError("curve parametrization has vanishing speed")
        if signed_area(self) <= 0.0:
            raise DomainError("curve must be traversed counterclockwise")

    @classmethod
    def circle(cls, r, center=(0.0, 0.0)):
        if not r > 0:
            raise DomainError("circle radius must be positive")
        return cls(
            "circle",
            {"r": float(r)},
            x1_cos=(r,),
            x2_sin=(r,),
            x1_const=float(center[0]),
            x2_const=float(center[1]),
        )

    @classmethod
    def ellipse(cls, a, b, center=(0.0, 0.0)):
        if not (a > 0 and b > 0):
            raise DomainError("ellipse semi-axes must be positive")
        return cls(
            "ellipse",
            {"a": float(a), "b": float(b)},
            x1_cos=(a,),
            x2_sin=(b,),
            x1_const=float(center[0]),
            x2_const=float(center[1]),
        )

    @classmethod
    def trig(cls, x1_cos=(), x1_sin=(), x2_cos=(), x2_sin=(), x1_const=0.0, x2_const=0.0):
        return cls(
            "trig",
            {
                "x1_cos": list(x1_cos),
                "x1_sin": list(x1_sin),
                "x2_cos": list(x2_cos),
                "x2_sin": list(x2_sin),
                "x1_const": float(x1_const),
                "x2_const": float(x2_const),
            },
            x1_cos=x1_cos,
            x1_sin=x1_sin,
            x2_cos=x2_cos,
            x2_sin=x2_sin,
            x1_const=float(x1_const),
            x2_const=float(x2_const),
        )

    def describe(self):
        """JSON-ready descriptor, the inverse of :func:`curve_from_dict`."""
        return {"kind": self.kind, **self.params}

    def sample(self, t):
        """Evaluate the curve at parameter value(s) ``t``."""
        t = np.asarray(t, dtype=float)
        x1, dx1, ddx1 = _series_eval(self.x1_const, self.x1_cos, self.x1_sin, t)
        x2, dx2, ddx2 = _series_eval(self.x2_const, self.x2_cos, self.x2_sin, t)
        x = np.stack([x1, x2], axis=-1)
        dx = np.stack([dx1, dx2], axis=-1)
        ddx = np.stack([ddx1, ddx2], axis=-1)
        jac = np.hypot(dx1, dx2)
        with np.errstate(invalid="ignore", divide="ignore"):
            nu = np.stack([dx2, -dx1], axis=-1) / jac[..., None]
        return CurveSample(x=x, dx=dx, ddx=ddx, jac=jac, nu=nu)

    def points(self, t):
        return self.sample(t).x

    def chord(self, t, tau):
        """``x(t) - x(tau)`` via product formulas, free of cancellation as tau -> t."""
        t, tau = np.broadcast_arrays(np.asarray(t, dtype=float), np.asarray(tau, dtype=float))
        d1 = _series_chord(self.x1_cos, self.x1_sin, t, tau)
        d2 = _series_chord(self.x2_cos, self.x2_sin, t, tau)
        return np.stack([d1, d2], axis=-1)


def _series_eval(const, cos_c, sin_c, t):
    val = np.full_like(t, const)
    d1 = np.zeros_like(t)
    d2 = np.zeros_like(t)
    for k, a in enumerate(cos_c, start=1):
        if a:
            c, s = np.cos(k * t), np.sin(k * t)
            val += a * c
            d1 -= a * k * s
            d2 -= a * k * k * c
    for k, b in enumerate(sin_c, start=1):
        if b:
            c, s = np.cos(k * t), np.sin(k * t)
            val += b * s
            d1 += b * k * c
            d2 -= b * k * k * s
    return val, d1, d2


def _series_chord(cos_c, sin_c, t, tau):
    # cos(kt) - cos(k tau) = -2 sin(k m) sin(k h), sin(kt) - sin(k tau) = 2 cos(k m) sin(k h)
    m, h = 0.5 * (t + tau), 0.5 * (t - tau)
    out = np.zeros(t.shape)
    for k, a in enumerate(cos_c, start=1):
        if a:
            out -= 2.0 * a * np.sin(k * m) * np.sin(k * h)
    for k, b in enumerate(sin_c, start=1):
        if b:
            out += 2.0 * b * np.cos(k * m) * np.sin(k * h)
    return out


def curve_from_dict(desc):
    """Build a curve from a descriptor such as ``{"kind": "circle", "r": 2}``."""
    if not isinstance(desc, dict) or "kind" not in desc:
        raise DomainError("curve descriptor must be an object with a 'kind' key")
    kind = desc["kind"]
    try:
        if kind == "circle":
            return ParametricCurve.circle(float(desc["r"]), desc.get("center", (0.0, 0.0)))
        if kind == "ellipse":
            return ParametricCurve.ellipse(
                float(desc["a"]), float(desc["b"]), desc.get("center", (0.0, 0.0))
            )
        if kind == "trig":
            allowed = {"kind", "x1_cos", "x1_sin", "x2_cos", "x2_sin", "x1_const", "x2_const"}
            extra = set(desc) - allowed
            if extra:
                raise DomainError(f"unknown trig curve keys: {sorted(extra)}")
            return ParametricCurve.trig(
                x1_cos=desc.get("x1_cos", ()),
                x1_sin=desc.get("x1_sin", ()),
                x2_cos=desc.get("x2_cos", ()),
                x2_sin=desc.get("x2_sin", ()),
                x1_const=float(desc.get("x1_const", 0.0)),
                x2_const=float(desc.get("x2_const", 0.0)),
            )
    except (KeyError, TypeError) as exc:
        raise DomainError(f"bad {kind!r} curve descriptor: {exc}") from exc
    raise DomainError(f"unknown curve kind {kind!r}")


def nodes(M):
    """The 2M equidistant parameter nodes ``t_j = j*pi/M``."""
    if int(M) != M or M < 1:
        raise DomainError("number of node pairs M must be a positive integer")
    M = int(M)
    return np.arange(2 * M) * (np.pi / M)


def curvature_term(s):
    """``(x2' x1'' - x1' x2'') / (2 |x'|^3)``: the smooth diagonal of the double-layer part."""
    dx, ddx = s.dx, s.ddx
    return (dx[..., 1] * ddx[..., 0] - dx[..., 0] * ddx[..., 1]) / (2.0 * s.jac**3)


def signed_area(curve, n=_VALIDATION_SAMPLES):
    # trapezoid rule is spectrally exact here: the integrand is a trig polynomial
    s = curve.sample(nodes(n // 2))
    integrand = s.x[:, 0] * s.dx[:, 1] - s.x[:, 1] * s.dx[:, 0]
    return 0.5 * np.mean(integrand) * 2.0 * np.pi


def polygon(curve, n):
    """``n`` vertices of the curve at equidistant parameters."""
    return curve.points(np.arange(n) * (2.0 * np.pi / n))


def winding_number(curve, pts, n=2048):
    """Winding number of the polygonal approximation of ``curve`` around ``pts``."""
    pts = np.atleast_2d(np.asarray(pts, dtype=float))
    verts = polygon(curve, n)
    a = verts[None, :, :] - pts[:, None, :]
    b = np.roll(verts, -1, axis=0)[None, :, :] - pts[:, None, :]
    cross = a[..., 0] * b[..., 1] - a[..., 1] * b[..., 0]
    dot = np.sum(a * b, axis=-1)
    return np.rint(np.sum(np.arctan2(cross, dot), axis=1) / (2.0 * np.pi)).astype(int)


def closest_point(curve, pts, n=1024):
    """Closest curve parameter, distance and side for each point.

    Returns ``(t, dist, side)`` where ``side`` is the sign of
    ``(p - x(t)) . nu(t)``: positive outside the region the curve encloses.
    The global minimum is bracketed on ``n`` samples and refined by Newton
    steps on ``|p - x(t)|^2``.
    """
    pts = np.atleast_2d(np.asarray(pts, dtype=float))
    t_grid = np.arange(n) * (2.0 * np.pi / n)
    verts = curve.points(t_grid)
    d2 = np.sum((pts[:, None, :] - verts[None, :, :]) ** 2, axis=-1)
    t = t_grid[np.argmin(d2, axis=1)]
    for _ in range(8):
        s = curve.sample(t)
        diff = s.x - pts
        g = np.sum(diff * s.dx, axis=-1)
        h = np.sum(s.dx * s.dx, axis=-1) + np.sum(diff * s.ddx, axis=-1)
        step = np.where(h > 0, g / np.where(h > 0, h, 1.0), 0.0)
        t = t - np.clip(step, -np.pi / n, np.pi / n)
    s = curve.sample(t)
    diff = pts - s.x
    dist = np.hypot(diff[:, 0], diff[:, 1])
    side = np.sign(np.sum(diff * s.nu, axis=-1))
    return t, dist, side


def distance_to_curve(curve, pts, n=1024):
    return closest_point(curve, pts, n)[1]


def enclosed(curve, pts, near=1e-3):
    """Mask of points inside the region bounded by ``curve``.

    Far from the curve the polygonal winding number decides; within ``near``
    of it the side of the exact closest-point normal does.
    """
    pts = np.atleast_2d(np.asarray(pts, dtype=float))
    inside = winding_number(curve, pts) == 1
    _, dist, side = closest_point(curve, pts)
    close = dist < near
    inside[close] = side[close] < 0
    return inside, dist
