"""Nystrom discretization of the Robin single-layer system and its solution.

Unknowns are the speed-weighted densities ``psi_i(t_j) = phi_i(x_i(t_j)) |x_i'(t_j)|``
at the 2M nodes of each curve; rows and columns are ordered Gamma_1 first.
"""

import logging
import warnings
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from .exceptions import DomainError, NumericalFailure
from .geometry import ParametricCurve, enclosed, nodes, polygon, winding_number
from .kernels import KernelSplit, PhysicsParams, h_diag_log, h_diag_smooth, h_full
from .quadrature import QuadratureRule, log_weights
from .special import k0, k1

logger = logging.getLogger(__name__)

_RCOND_MIN = 1e-12


@dataclass(frozen=True)
class RobinData:
    """Robin boundary data ``f_i`` on both curves.

    kind ``"fundamental"``
        data of the exact solution ``Phi(., y_star)``, with ``y_star`` outside
        the closed domain;
    kind ``"polynomial_example2"``
        ``f1 = x1^2 + x2`` on the outer curve, ``f2 = x1 + x2^2`` on the inner;
    kind ``"nodal"``
        explicit values at the 2M nodes of each curve.
    """

    kind: str
    y_star: tuple = None
    f1: np.ndarray = field(default=None, compare=False)
    f2: np.ndarray = field(default=None, compare=False)

    def __post_init__(self):
        if self.kind not in ("fundamental", "polynomial_example2", "nodal"):
            raise DomainError(f"unknown Robin data kind {self.kind!r}")
        if self.kind == "fundamental":
            if self.y_star is None or len(self.y_star) != 2:
                raise DomainError("fundamental data needs a source point y_star")
            y = tuple(float(v) for v in self.y_star)
            if not all(np.isfinite(y)):
                raise DomainError("source point must be finite")
            object.__setattr__(self, "y_star", y)
        if self.kind == "nodal":
            if self.f1 is None or self.f2 is None:
                raise DomainError("nodal data needs f1 and f2")
            f1 = np.asarray(self.f1, dtype=float)
            f2 = np.asarray(self.f2, dtype=float)
            if f1.ndim != 1 or f1.shape != f2.shape or f1.size % 2:
                raise DomainError("nodal data must be two arrays of equal even length")
            object.__setattr__(self, "f1", f1)
            object.__setattr__(self, "f2", f2)

    @classmethod
    def fundamental(cls, y_star):
        return cls("fundamental", y_star=tuple(y_star))

    @classmethod
    def polynomial_example2(cls):
        return cls("polynomial_example2")

    @classmethod
    def nodal(cls, f1, f2):
        return cls("nodal", f1=f1, f2=f2)


@dataclass(frozen=True)
class ProblemSpec:
    physics: PhysicsParams
    gamma1: ParametricCurve
    gamma2: ParametricCurve
    data: RobinData

    def __post_init__(self):
        inner = polygon(self.gamma2, 512)
        if np.any(winding_number(self.gamma1, inner) != 1):
            raise DomainError("inner curve must lie strictly inside the outer curve")
        outer = polygon(self.gamma1, 512)
        if np.any(winding_number(self.gamma2, outer) != 0):
            raise DomainError("outer curve must not enter the inner curve")
        if self.data.kind == "fundamental" and in_closed_domain(self, self.data.y_star):
            raise DomainError("source point inside domain")

    @property
    def kernels(self):
        return self.kernel_split()

    def kernel_split(self, split="analytic"):
        return KernelSplit(self.physics, self.gamma1, self.gamma2, split)

    def curve(self, i):
        return self.gamma1 if i == 1 else self.gamma2


def in_closed_domain(problem, pt, tol=1e-9):
    """True when ``pt`` lies in the closure of D (or within ``tol`` of it)."""
    pt = np.atleast_2d(np.asarray(pt, dtype=float))
    in1, d1 = enclosed(problem.gamma1, pt)
    in2, d2 = enclosed(problem.gamma2, pt)
    return bool(np.all((in1 & ~in2) | (d1 <= tol) | (d2 <= tol)))


@dataclass(frozen=True)
class DiscreteSystem:
    M: int
    matrix: np.ndarray
    rhs: np.ndarray


@dataclass(frozen=True)
class DensitySolution:
    M: int
    psi1: np.ndarray
    psi2: np.ndarray
    problem: ProblemSpec

    @property
    def nodes(self):
        return nodes(self.M)


def fundamental_robin_value(physics, i, sample, y_star):
    """``dPhi(x, y*)/dnu(x) + lambda_i Phi(x, y*)`` at curve samples."""
    kappa = physics.kappa
    diff = sample.x - np.asarray(y_star, dtype=float)
    r = np.hypot(diff[..., 0], diff[..., 1])
    if np.any(r == 0.0):
        raise DomainError("source point lies on the boundary")
    dn = np.sum(diff * sample.nu, axis=-1)
    z = kappa * r
    return (-kappa * k1(z) * dn / r + physics.lam(i) * k0(z)) / (2.0 * np.pi)


def robin_rhs(problem, M):
    """Robin data ``g_i(t_j) = f_i(x_i(t_j))`` at the nodes of both curves."""
    t = nodes(M)
    data = problem.data
    if data.kind == "nodal":
        if data.f1.size != 2 * M:
            raise DomainError(f"nodal data has {data.f1.size} values, expected {2 * M}")
        return data.f1.copy(), data.f2.copy()
    s1 = problem.gamma1.sample(t)
    s2 = problem.gamma2.sample(t)
    if data.kind == "fundamental":
        g1 = fundamental_robin_value(problem.physics, 1, s1, data.y_star)
        g2 = fundamental_robin_value(problem.physics, 2, s2, data.y_star)
        return g1, g2
    g1 = s1.x[:, 0] ** 2 + s1.x[:, 1]
    g2 = s2.x[:, 0] + s2.x[:, 1] ** 2
    return g1, g2


def assemble(problem, M, split="analytic"):
    """Assemble the 4M x 4M Nystrom matrix and right-hand side.

    ``split`` selects the logarithmic splitting of the diagonal-block kernels
    (see :mod:`robinkg.kernels`).
    """
    if int(M) != M or M < 2:
        raise DomainError("M must be an integer >= 2")
    M = int(M)
    n = 2 * M
    ks = problem.kernel_split(split)
    rule = QuadratureRule(M)
    t = rule.nodes
    T, TAU = np.meshgrid(t, t, indexing="ij")
    R = log_weights(rule, t)

    blocks = {}
    for i, sign in ((1, 1.0), (2, -1.0)):
        jac = problem.curve(i).sample(t).jac
        A = R * h_diag_log(ks, i, T, TAU) + h_diag_smooth(ks, i, T, TAU) / n
        A[np.diag_indices(n)] += sign / (2.0 * jac)
        blocks[i, i] = A
    blocks[1, 2] = h_full(ks, 1, 2, T, TAU) / n
    blocks[2, 1] = h_full(ks, 2, 1, T, TAU) / n

    matrix = np.block([[blocks[1, 1], blocks[1, 2]], [blocks[2, 1], blocks[2, 2]]])
    g1, g2 = robin_rhs(problem, M)
    rhs = np.concatenate([g1, g2])
    if not (np.all(np.isfinite(matrix)) and np.all(np.isfinite(rhs))):
        raise NumericalFailure("non-finite entries in the assembled system")
    return DiscreteSystem(M=M, matrix=matrix, rhs=rhs)


def solve_dense(system):
    """Solve by LU factorization with partial pivoting.

    Raises :class:`NumericalFailure` when the matrix is singular to working
    precision; the exception carries the smallest pivot magnitude.
    """
    A = np.asarray(system.matrix, dtype=float)
    b = np.asarray(system.rhs, dtype=float)
    with warnings.catch_warnings():
        # singularity is reported through NumericalFailure below
        warnings.simplefilter("ignore", scipy.linalg.LinAlgWarning)
        lu, piv = scipy.linalg.lu_factor(A, check_finite=True)
    pivots = np.abs(np.diag(lu))
    pmin = float(pivots.min())
    anorm = np.linalg.norm(A, 1)
    if pmin == 0.0:
        raise NumericalFailure("zero pivot in LU factorization", pivot=pmin)
    rcond, info = scipy.linalg.lapack.dgecon(lu, anorm, norm="1")
    if rcond < _RCOND_MIN:
        raise NumericalFailure(
            f"matrix singular to working precision (rcond={rcond:.3e})", pivot=pmin
        )
    logger.debug("LU solve n=%d rcond=%.3e min pivot=%.3e", A.shape[0], rcond, pmin)
    return scipy.linalg.lu_solve((lu, piv), b)


def condition_estimate(system):
    """Reciprocal 1-norm condition number estimate of the system matrix."""
    A = np.asarray(system.matrix, dtype=float)
    lu, _ = scipy.linalg.lu_factor(A)
    rcond, _ = scipy.linalg.lapack.dgecon(lu, np.linalg.norm(A, 1), norm="1")
    return float(rcond)


def solve_problem(problem, M, split="analytic"):
    """Assemble, solve and split the solution into the two nodal densities."""
    system = assemble(problem, M, split)
    x = solve_dense(system)
    n = 2 * system.M
    return DensitySolution(M=system.M, psi1=x[:n], psi2=x[n:], problem=problem)
