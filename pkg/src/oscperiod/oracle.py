"""Reference values that do not go through the Fourier/Picard pipeline.

* :func:`exact_period` integrates the energy relation directly.
* :func:`asymptotic_constant` extrapolates ``sqrt(rho) T(rho)`` to large ``rho``.
* :func:`small_rho_coefficients` differentiates ``T(rho)`` numerically at 0.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np

from oscperiod.errors import ConvergenceError, DomainError
from oscperiod.forces import ForceModel, family_model

MAX_DOUBLINGS = 20
GAUSS_POINTS = 16


@dataclass(frozen=True)
class QuadratureSettings:
    """Composite Gauss-Legendre control.

    Attributes:
        panels: starting panel count; doubled until two estimates agree.
        tol: relative agreement required between successive estimates.
    """

    panels: int = 2
    tol: float = 1e-14

    def __post_init__(self) -> None:
        if self.panels < 1:
            raise DomainError(f"panels must be >= 1, got {self.panels}")
        if not self.tol > 0:
            raise DomainError(f"tol must be positive, got {self.tol}")


@lru_cache(maxsize=None)
def _gauss(n: int) -> tuple[np.ndarray, np.ndarray]:
    return np.polynomial.legendre.leggauss(n)


def _composite_gl(func: Callable[[np.ndarray], np.ndarray], a: float, b: float, panels: int) -> float:
    x, w = _gauss(GAUSS_POINTS)
    edges = np.linspace(a, b, panels + 1)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[:-1] + edges[1:])
    nodes = (mid[:, None] + half[:, None] * x[None, :]).ravel()
    weights = (half[:, None] * w[None, :]).ravel()
    return float(np.dot(weights, func(nodes)))


def exact_period(m: ForceModel, amplitude: float, q: QuadratureSettings | None = None) -> float:
    """Period of ``u'' + f(u) = 0`` started at rest from ``u = A``.

    With ``u = A sin(phi)`` the quarter-period integral becomes
    ``int_0^{pi/2} A cos(phi) / sqrt(2 (V(A) - V(A sin phi))) dphi``. Writing
    ``V(A) - V(u) = (A - u) Q(u)`` and ``A - A sin(phi) = A cos^2(phi) / (1 + sin(phi))``,
    the integrand is ``sqrt(A (1 + sin phi) / (2 Q))``: smooth, with no
    cancellation near the turning point.

    Raises:
        DomainError: ``A <= 0`` or ``V`` not increasing on ``(0, A]``.
        ConvergenceError: the estimates do not settle within ``MAX_DOUBLINGS`` doublings.
    """
    q = q or QuadratureSettings()
    if not amplitude > 0:
        raise DomainError(f"amplitude must be positive, got {amplitude}")
    a = float(amplitude)

    def integrand(phi: np.ndarray) -> np.ndarray:
        s = np.sin(phi)
        quot = m.potential_drop_quotient(a, a * s)
        if np.any(quot <= 0):
            raise DomainError("V(A) <= V(u) for some 0 <= u < A: motion is not a simple libration")
        return np.sqrt(a * (1.0 + s) / (2.0 * quot))

    panels = q.panels
    prev = 4.0 * _composite_gl(integrand, 0.0, math.pi / 2, panels)
    for _ in range(MAX_DOUBLINGS):
        panels *= 2
        cur = 4.0 * _composite_gl(integrand, 0.0, math.pi / 2, panels)
        if abs(cur - prev) <= q.tol * abs(cur):
            return cur
        prev = cur
    raise ConvergenceError(f"period quadrature not converged after {MAX_DOUBLINGS} doublings")


def exact_family_period(family: str, rho: float, q: QuadratureSettings | None = None) -> float:
    """Exact period as a function of the family's similarity parameter."""
    m, a = family_model(family, rho)
    return exact_period(m, a, q)


ASYMPTOTIC_RHOS = (1e2, 1e4, 1e6, 1e8)


def asymptotic_constant(period_fn: Callable[[float], float]) -> tuple[float, float]:
    """Estimate ``lim sqrt(rho) T(rho)`` and an error bar.

    Samples ``g = sqrt(rho) T(rho)`` at ``rho = 1e2, 1e4, 1e6, 1e8`` and assumes
    ``g = g_inf + c rho^(-p)``, with ``p`` fitted from the last three samples.
    When the tail is not geometric the last sample is returned with a warning.
    """
    g = [math.sqrt(r) * period_fn(r) for r in ASYMPTOTIC_RHOS]
    d1, d2 = g[2] - g[1], g[3] - g[2]
    if d2 == 0.0:
        return g[-1], 0.0
    ratio = d1 / d2
    step = ASYMPTOTIC_RHOS[1] / ASYMPTOTIC_RHOS[0]
    if not ratio > 1.0 or not math.isfinite(ratio):
        warnings.warn("non-monotone tail in sqrt(rho) T(rho); returning the last sample", RuntimeWarning, stacklevel=2)
        return g[-1], abs(d2)
    p = math.log(ratio) / math.log(step)
    limit = g[-1] + d2 / (step**p - 1.0)
    return limit, abs(limit - g[-1])


SMALL_RHO_STEP = 1e-3


def _richardson(values: list[float], order0: int) -> float:
    # Step halving; error expansion in powers h^order0, h^(order0+1), ...
    table = list(values)
    for j in range(1, len(table)):
        factor = 2.0 ** (order0 + j - 1)
        table = [(factor * table[i + 1] - table[i]) / (factor - 1.0) for i in range(len(table) - 1)]
    return table[-1]


def small_rho_coefficients(period_fn: Callable[[float], float], orders: int = 2, levels: int = 4) -> tuple[float, ...]:
    """Taylor coefficients ``(T(0), T'(0), T''(0)/2)`` of ``T(rho)`` about 0.

    Forward differences only (``rho >= 0``), steps ``1e-3 * 2^-k``, refined by
    Richardson extrapolation. ``orders`` is 1 or 2.
    """
    if orders not in (1, 2):
        raise DomainError(f"orders must be 1 or 2, got {orders}")
    t0 = period_fn(0.0)
    hs = [SMALL_RHO_STEP * 2.0**-k for k in range(levels)]
    vals = {h: period_fn(h) for h in hs}
    # (T(h) - T0)/h = T1 + T2 h + T3 h^2 + ...
    slope = _richardson([(vals[h] - t0) / h for h in hs], 1)
    out = [t0, slope]
    if orders == 2:
        # (T(h) - T0 - T1 h)/h^2 = T2 + T3 h + ...
        out.append(_richardson([(vals[h] - t0 - slope * h) / h**2 for h in hs], 1))
    return tuple(out)
