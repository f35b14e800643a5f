"""Quadrature rules for 2*pi-periodic integrands on 2M equidistant nodes.

Both rules approximate normalised integrals ``(1/2pi) * int_0^{2pi} ... dtau``:

* the composite trapezoid rule for smooth integrands;
* product weights ``R_j(t)`` for ``f(tau) * ln((4/e) sin^2((t - tau)/2))``,
  exact whenever ``f`` is a trigonometric polynomial of degree < M.
"""

from dataclasses import dataclass

import numpy as np

from .exceptions import DomainError
from .geometry import nodes


@dataclass(frozen=True)
class QuadratureRule:
    M: int

    def __post_init__(self):
        if int(self.M) != self.M or self.M < 1:
            raise DomainError("M must be a positive integer")

    @property
    def nodes(self):
        return nodes(self.M)

    @property
    def size(self):
        return 2 * self.M


def trapezoid(rule, samples):
    samples = np.asarray(samples, dtype=float)
    if samples.shape[-1] != rule.size:
        raise DomainError(f"expected {rule.size} samples, got {samples.shape[-1]}")
    return np.sum(samples, axis=-1) / rule.size


def log_weights(rule, t):
    """Weights ``R_j(t)`` for the ``ln((4/e) sin^2((t - tau)/2))`` factor.

    ``t`` may be a scalar or an array; the result has shape ``t.shape + (2M,)``.
    The classical weights integrate ``ln(4 sin^2(.))``, whose mean is zero; the
    extra ``-1/(2M)`` per node accounts for the ``-1`` coming from ``ln(1/e)``.
    """
    M = rule.M
    diff = np.asarray(t, dtype=float)[..., None] - rule.nodes
    m = np.arange(1, M)
    # sum_m cos(m d)/m, broadcast over a trailing m axis
    cos_sum = np.sum(np.cos(diff[..., None] * m) / m, axis=-1)
    return -cos_sum / M - np.cos(M * diff) / (2.0 * M * M) - 1.0 / (2.0 * M)


def log_factor(t, tau):
    """``ln((4/e) sin^2((t - tau)/2))`` (``-inf`` at coincident parameters)."""
    with np.errstate(divide="ignore"):
        return np.log(4.0 * np.sin(0.5 * (np.asarray(t) - np.asarray(tau))) ** 2) - 1.0
