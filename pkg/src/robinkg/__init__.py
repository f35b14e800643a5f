"""Nystrom boundary-integral solver for a Robin problem of the modified Helmholtz
(time-independent Klein-Gordon) equation in a doubly connected planar domain."""

from .estimator import KleinGordonRobinSolver
from .exceptions import DomainError, NumericalFailure
from .field import eval_interior, eval_on_boundary, fundamental_solution, robin_data_probe
from .geometry import ParametricCurve
from .kernels import PhysicsParams
from .solver import DensitySolution, ProblemSpec, RobinData, assemble, solve_dense, solve_problem

__all__ = [
    "DensitySolution",
    "DomainError",
    "KleinGordonRobinSolver",
    "NumericalFailure",
    "ParametricCurve",
    "PhysicsParams",
    "ProblemSpec",
    "RobinData",
    "assemble",
    "eval_interior",
    "eval_on_boundary",
    "fundamental_solution",
    "robin_data_probe",
    "solve_dense",
    "solve_problem",
]
