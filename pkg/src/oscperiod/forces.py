"""Odd restoring forces f(u) and their potentials.

A model is ``f(u) = sum_m c_{2m+1} u^{2m+1} + eps_abs |u| u``. Both kinds of
term are odd in ``u``, so every representable model gives an even potential.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from numpy.typing import ArrayLike

from oscperiod.errors import DomainError

DUFFING = "duffing"
ABSQUAD = "absquad"


@dataclass(frozen=True)
class ForceModel:
    """Restoring force ``f(u)`` of ``u'' + f(u) = 0``.

    Attributes:
        odd_coeffs: ``(c_1, c_3, c_5, ...)``; ``c_{2m+1}`` multiplies ``u^(2m+1)``.
        abs_quad: coefficient of the ``|u| u`` term.
    """

    odd_coeffs: tuple[float, ...]
    abs_quad: float = 0.0

    def __post_init__(self) -> None:
        coeffs = tuple(float(c) for c in self.odd_coeffs)
        object.__setattr__(self, "odd_coeffs", coeffs)
        object.__setattr__(self, "abs_quad", float(self.abs_quad))
        if not coeffs:
            raise DomainError("force needs at least the linear coefficient c_1")
        if not all(math.isfinite(c) for c in coeffs) or not math.isfinite(self.abs_quad):
            raise DomainError("force coefficients must be finite")
        if coeffs[0] <= 0.0:
            raise DomainError(f"linear coefficient c_1 must be positive, got {coeffs[0]}")

    @property
    def degree(self) -> int:
        """Highest odd polynomial power (the ``|u|u`` term counts as 2)."""
        poly = 2 * len(self.odd_coeffs) - 1
        return max(poly, 2) if self.abs_quad else poly

    @property
    def family(self) -> str | None:
        """``"duffing"`` for ``u + eps u^3``, ``"absquad"`` for ``u + eps |u|u``, else None.

        The pure linear force ``u`` is reported as Duffing with ``eps = 0``.
        """
        c = self.odd_coeffs
        if c[0] != 1.0 or any(x != 0.0 for x in c[2:]):
            return None
        cubic = c[1] if len(c) > 1 else 0.0
        if self.abs_quad == 0.0:
            return DUFFING
        if cubic == 0.0:
            return ABSQUAD
        return None

    @property
    def epsilon(self) -> float | None:
        fam = self.family
        if fam == DUFFING:
            return self.odd_coeffs[1] if len(self.odd_coeffs) > 1 else 0.0
        if fam == ABSQUAD:
            return self.abs_quad
        return None

    def rho(self, amplitude: float) -> float | None:
        """Similarity parameter: ``eps A^2`` (Duffing) or ``eps A`` (|u|u)."""
        fam = self.family
        if fam == DUFFING:
            return self.epsilon * amplitude**2
        if fam == ABSQUAD:
            return self.epsilon * amplitude
        return None

    def force(self, u: ArrayLike):
        return eval_force(self, u)

    def derivative(self, u: ArrayLike):
        return eval_force_derivative(self, u)

    def potential(self, u: ArrayLike):
        return eval_potential(self, u)

    def potential_drop_quotient(self, amplitude: float, u: ArrayLike):
        """``(V(A) - V(u)) / (A - u)`` for ``0 <= u <= A`` without cancellation.

        Each power difference is expanded as ``A^n - u^n = (A - u) sum A^(n-1-i) u^i``.
        """
        a = float(amplitude)
        u = np.abs(np.asarray(u, dtype=float))
        total = np.zeros_like(u)
        for m, c in enumerate(self.odd_coeffs):
            if c == 0.0:
                continue
            n = 2 * m + 2
            total = total + c * _geometric_sum(a, u, n) / n
        if self.abs_quad:
            total = total + self.abs_quad * _geometric_sum(a, u, 3) / 3.0
        return total


def _geometric_sum(a: float, u: np.ndarray, n: int) -> np.ndarray:
    # sum_{i<n} a^(n-1-i) u^i, Horner in u
    acc = np.zeros_like(u)
    for i in range(n):
        acc = acc * u + a ** i
    return acc


def eval_force(m: ForceModel, u: ArrayLike):
    """Return ``f(u)``; accepts scalars or arrays."""
    x = np.asarray(u, dtype=float)
    acc = np.zeros_like(x)
    x2 = x * x
    for c in reversed(m.odd_coeffs):
        acc = acc * x2 + c
    out = acc * x + m.abs_quad * np.abs(x) * x
    return float(out) if out.ndim == 0 else out


def eval_force_derivative(m: ForceModel, u: ArrayLike):
    """Return ``f'(u)``. The ``|u|u`` term contributes ``2 eps |u|``."""
    x = np.asarray(u, dtype=float)
    x2 = x * x
    acc = np.zeros_like(x)
    for k in range(len(m.odd_coeffs) - 1, -1, -1):
        acc = acc * x2 + (2 * k + 1) * m.odd_coeffs[k]
    out = acc + 2.0 * m.abs_quad * np.abs(x)
    return float(out) if out.ndim == 0 else out


def eval_potential(m: ForceModel, u: ArrayLike):
    """Return ``V(u)`` normalized so that ``V(0) = 0``."""
    x = np.asarray(u, dtype=float)
    x2 = x * x
    acc = np.zeros_like(x)
    for k in range(len(m.odd_coeffs) - 1, -1, -1):
        acc = acc * x2 + m.odd_coeffs[k] / (2 * k + 2)
    out = acc * x2 + m.abs_quad * np.abs(x) ** 3 / 3.0
    return float(out) if out.ndim == 0 else out


def duffing(eps: float) -> ForceModel:
    """``f(u) = u + eps u^3``."""
    return ForceModel((1.0, float(eps)))


def absquad(eps: float) -> ForceModel:
    """``f(u) = u + eps |u| u``."""
    return ForceModel((1.0,), abs_quad=float(eps))


def family_model(family: str, rho: float) -> tuple[ForceModel, float]:
    """Model and amplitude realizing a family at similarity parameter ``rho``.

    Uses ``A = 1`` and ``eps = rho``, which keeps ``rho = 0`` (the linear
    oscillator) inside the domain ``A > 0``.
    """
    if rho < 0:
        raise DomainError(f"rho must be non-negative, got {rho}")
    if family == DUFFING:
        return duffing(rho), 1.0
    if family == ABSQUAD:
        return absquad(rho), 1.0
    raise DomainError(f"unknown force family {family!r}")


def parse_force_spec(spec: str) -> ForceModel:
    """Parse ``duffing:EPS``, ``absquad:EPS`` or ``poly:c1,c3,c5,...``.

    A bare family name means ``EPS = 1``.
    """
    name, _, arg = spec.strip().partition(":")
    name = name.lower()
    try:
        if name in (DUFFING, ABSQUAD):
            eps = float(arg) if arg else 1.0
            return duffing(eps) if name == DUFFING else absquad(eps)
        if name == "poly":
            coeffs: Sequence[float] = [float(x) for x in arg.split(",") if x.strip()]
            return ForceModel(tuple(coeffs))
    except ValueError as exc:
        if isinstance(exc, DomainError):
            raise
        raise DomainError(f"bad force spec {spec!r}: {exc}") from exc
    raise DomainError(f"unknown force spec {spec!r}; use duffing:EPS, absquad:EPS or poly:c1,c3,...")
