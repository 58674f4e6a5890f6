"""Odd-harmonic cosine ansatz fitted to the initial derivatives.

``u_N(t) = sum_{j=1..N} A_j cos((2j-1) w t)``. Requiring its ``2n``-th
derivative at ``t = 0`` to equal ``G_n`` for ``n < N`` gives the linear system

    sum_j (2j-1)^(2n) A_j = (-1)^n G_n / w^(2n),

whose matrix is a transposed Vandermonde matrix on the nodes ``(2j-1)^2``.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from oscperiod.errors import DomainError
from oscperiod.taylor_init import DerivativeSequence
from oscperiod.trigpoly import CosineSeries

RESIDUAL_WARN = 1e-8


@dataclass(frozen=True)
class AnsatzSolution:
    order: int
    amplitude: float
    omega: float
    coefficients: tuple[float, ...]

    def to_series(self) -> CosineSeries:
        """Embed ``A_j`` at harmonic ``2j - 1`` of a :class:`CosineSeries`."""
        c = np.zeros(2 * self.order)
        c[1::2] = self.coefficients
        return CosineSeries(self.omega, tuple(c))

    def derivative_at_zero(self, n: int) -> float:
        """``u_N^(2n)(0) = (-1)^n sum_j ((2j-1) w)^(2n) A_j``."""
        k = 2 * np.arange(1, self.order + 1) - 1
        return float((-1) ** n * np.sum((k * self.omega) ** (2 * n) * np.asarray(self.coefficients)))


def moment_matrix(order: int) -> np.ndarray:
    """Rows ``n = 0..N-1``, columns ``j = 1..N``: entries ``(2j-1)^(2n)``."""
    nodes = (2.0 * np.arange(1, order + 1) - 1.0) ** 2
    return np.vander(nodes, order, increasing=True).T


def solve_coefficients(g: DerivativeSequence, order: int, omega: float) -> AnsatzSolution:
    """Solve for ``A_1..A_N`` at trial frequency ``omega``.

    Raises:
        DomainError: ``omega <= 0``, ``order < 1`` or fewer than ``order`` derivatives.
    """
    if not omega > 0:
        raise DomainError(f"omega must be positive, got {omega}")
    if order < 1:
        raise DomainError(f"order must be at least 1, got {order}")
    if len(g) < order:
        raise DomainError(f"need {order} derivatives, got {len(g)}")
    if order == 1:
        return AnsatzSolution(1, g.amplitude, float(omega), (float(g[0]),))

    n = np.arange(order)
    rhs = (-1.0) ** n * np.asarray(g.values[:order]) / float(omega) ** (2 * n)
    mat = moment_matrix(order)
    coeffs = np.linalg.solve(mat, rhs)
    resid = np.linalg.norm(mat @ coeffs - rhs)
    if resid > RESIDUAL_WARN * np.linalg.norm(rhs):
        warnings.warn(
            f"ill-conditioned ansatz solve at N={order}: residual {resid:.3g}",
            RuntimeWarning,
            stacklevel=2,
        )
    return AnsatzSolution(order, g.amplitude, float(omega), tuple(float(c) for c in coeffs))


def closed_form_n2(amplitude: float, f_amplitude: float, omega: float) -> tuple[float, float]:
    """Two-term coefficients written out: ``A_1 = (9 A w^2 - f(A)) / (8 w^2)``,
    ``A_2 = (f(A) - A w^2) / (8 w^2)``."""
    if not omega > 0:
        raise DomainError(f"omega must be positive, got {omega}")
    w2 = omega * omega
    return (9 * amplitude * w2 - f_amplitude) / (8 * w2), (f_amplitude - amplitude * w2) / (8 * w2)
