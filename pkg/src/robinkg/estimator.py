"""Estimator-style front end: ``fit`` solves for densities, ``predict`` evaluates u."""

import numpy as np
from sklearn.base import BaseEstimator, RegressorMixin
from sklearn.utils.validation import check_is_fitted

from .field import eval_interior, eval_on_boundary, fundamental_solution
from .kernels import PhysicsParams
from .solver import ProblemSpec, assemble, condition_estimate, solve_dense, DensitySolution
from .validation import check_curve_index, check_m, check_points


class KleinGordonRobinSolver(RegressorMixin, BaseEstimator):
    """Indirect single-layer Nystrom solver for a Robin problem in an annulus-like domain.

    Solves ``Delta u - kappa^2 u = 0`` in the region between ``gamma1``
    (outer) and ``gamma2`` (inner) with ``du/dnu + lambda_i u = f_i`` on each
    curve.

    Parameters
    ----------
    gamma1, gamma2 : ParametricCurve
        Outer and inner boundary, both counterclockwise.
    data : RobinData
        Boundary data.
    kappa, lambda1, lambda2 : float
        Positive physical constants.
    M : int
        Half the number of nodes per curve; the linear system is 4M x 4M.
    split : {"analytic", "plain"}
        Log splitting of the self-interaction kernels.
    oversample : int
        Interior evaluation applies the trapezoid rule on ``2*M*oversample``
        nodes to the interpolated densities. ``1`` is the plain rule on the
        collocation nodes.

    Attributes
    ----------
    solution_ : DensitySolution
    psi1_, psi2_ : ndarray of shape (2M,)
        Speed-weighted nodal densities on each curve.
    rcond_ : float
        Reciprocal condition estimate of the Nystrom matrix.
    """

    def __init__(
        self,
        gamma1=None,
        gamma2=None,
        data=None,
        kappa=1.0,
        lambda1=1.0,
        lambda2=1.0,
        M=16,
        split="analytic",
        oversample=4,
    ):
        self.gamma1 = gamma1
        self.gamma2 = gamma2
        self.data = data
        self.kappa = kappa
        self.lambda1 = lambda1
        self.lambda2 = lambda2
        self.M = M
        self.split = split
        self.oversample = oversample

    def _problem(self):
        physics = PhysicsParams(float(self.kappa), float(self.lambda1), float(self.lambda2))
        return ProblemSpec(physics, self.gamma1, self.gamma2, self.data)

    def fit(self, X=None, y=None):
        """Assemble and solve the Nystrom system. ``X`` and ``y`` are ignored."""
        M = check_m(self.M)
        check_m(self.oversample, minimum=1)
        problem = self._problem()
        system = assemble(problem, M, self.split)
        x = solve_dense(system)
        n = 2 * M
        self.solution_ = DensitySolution(M=M, psi1=x[:n], psi2=x[n:], problem=problem)
        self.psi1_ = self.solution_.psi1
        self.psi2_ = self.solution_.psi2
        self.rcond_ = condition_estimate(system)
        return self

    def predict(self, X):
        """Approximate solution at interior points ``X`` of shape (n, 2)."""
        check_is_fitted(self, "solution_")
        X = check_points(X)
        return eval_interior(self.solution_, X, oversample=self.oversample)

    def boundary_values(self, i, t):
        """Approximate solution on curve ``i`` at parameter values ``t``."""
        check_is_fitted(self, "solution_")
        return eval_on_boundary(self.solution_, check_curve_index(i), t)

    def exact(self, X):
        """Exact solution for fundamental-type data, ``Phi(X, y_star)``."""
        if self.data is None or self.data.kind != "fundamental":
            raise ValueError("exact solution is only known for fundamental-type data")
        X = check_points(X)
        return fundamental_solution(X, np.asarray(self.data.y_star), float(self.kappa))
