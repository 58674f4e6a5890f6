"""Cosine-series algebra and the single Picard step.

A :class:`CosineSeries` is ``sum_k c_k cos(k w t)``. Products are linearized
with ``cos(m x) cos(n x) = (cos((m+n)x) + cos(|m-n|x)) / 2``, so polynomial
forces of a cosine series stay finite cosine series and the double integral
of the equation of motion can be taken term by term.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike

from oscperiod.forces import ForceModel

POSITIVITY_SAMPLES = 256
POSITIVITY_RTOL = 1e-9

# cos(k pi / 2) for k mod 4
_QUARTER_COS = (1.0, 0.0, -1.0, 0.0)


@dataclass(frozen=True)
class CosineSeries:
    """``sum_k coeffs[k] cos(k * omega * t)``; ``coeffs[0]`` is the DC term.

    Trailing zeros are trimmed on construction, so equal series compare equal.
    """

    omega: float
    coeffs: tuple[float, ...]

    def __post_init__(self) -> None:
        c = [float(x) for x in self.coeffs]
        while c and c[-1] == 0.0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))
        object.__setattr__(self, "omega", float(self.omega))

    @classmethod
    def constant(cls, omega: float, value: float) -> CosineSeries:
        return cls(omega, (value,))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, t: ArrayLike):
        t = np.asarray(t, dtype=float)
        k = np.arange(len(self.coeffs))
        if not len(k):
            return np.zeros_like(t) if t.ndim else 0.0
        out = np.cos(np.multiply.outer(t, k) * self.omega) @ np.asarray(self.coeffs)
        return float(out) if np.ndim(out) == 0 else out

    def derivative(self, t: ArrayLike, order: int = 1):
        """Analytic ``order``-th time derivative evaluated at ``t``."""
        t = np.asarray(t, dtype=float)
        k = np.arange(len(self.coeffs))
        freq = k * self.omega
        phase = np.multiply.outer(t, freq) + order * math.pi / 2
        out = np.cos(phase) @ (np.asarray(self.coeffs) * freq**order)
        return float(out) if np.ndim(out) == 0 else out

    def _check(self, other: CosineSeries) -> None:
        if other.omega != self.omega:
            raise ValueError(f"fundamental mismatch: {self.omega} vs {other.omega}")

    def __add__(self, other: CosineSeries) -> CosineSeries:
        self._check(other)
        n = max(len(self.coeffs), len(other.coeffs))
        out = np.zeros(n)
        out[: len(self.coeffs)] += self.coeffs
        out[: len(other.coeffs)] += other.coeffs
        return CosineSeries(self.omega, tuple(out))

    def scale(self, factor: float) -> CosineSeries:
        return CosineSeries(self.omega, tuple(factor * c for c in self.coeffs))

    def __mul__(self, other: CosineSeries) -> CosineSeries:
        return multiply(self, other)


def multiply(a: CosineSeries, b: CosineSeries) -> CosineSeries:
    """Exact product of two cosine series with the same fundamental."""
    a._check(b)
    if not a.coeffs or not b.coeffs:
        return CosineSeries(a.omega, ())
    ca = np.asarray(a.coeffs)
    cb = np.asarray(b.coeffs)
    outer = 0.5 * np.multiply.outer(ca, cb)
    m, n = np.indices(outer.shape)
    out = np.zeros(len(ca) + len(cb) - 1)
    np.add.at(out, m + n, outer)
    np.add.at(out, np.abs(m - n), outer)
    return CosineSeries(a.omega, tuple(out))


@dataclass(frozen=True)
class ComposedForce:
    """Cosine series of ``f(u(t))`` plus the sign check behind the ``|u|u`` reading.

    Attributes:
        series: the composed force.
        min_displacement: smallest sampled ``u(t)`` on ``[0, T/4]``.
        positivity_violated: the force has a ``|u|u`` term and ``u`` dipped below
            ``-1e-9 * u(0)`` on the quarter period, so ``|u|u = u^2`` was not exact there.
    """

    series: CosineSeries
    min_displacement: float
    positivity_violated: bool


def compose_force(m: ForceModel, u: CosineSeries) -> ComposedForce:
    """Cosine series of ``f(u(t))``.

    Odd powers are built by repeated multiplication. The ``|u|u`` term is taken
    as ``u * u``, which equals ``|u|u`` wherever ``u >= 0``; on ``[0, T/4]`` the
    motion starts at the positive turning point and reaches 0 at ``T/4``.
    """
    w = u.omega
    out = CosineSeries(w, ())
    u2 = u * u
    power = u
    for k, c in enumerate(m.odd_coeffs):
        if k:
            power = power * u2
        if c:
            out = out + power.scale(c)
    if m.abs_quad:
        out = out + u2.scale(m.abs_quad)

    ts = np.linspace(0.0, math.pi / (2.0 * w), POSITIVITY_SAMPLES)
    min_u = float(np.min(u(ts)))
    u0 = sum(u.coeffs)
    violated = bool(m.abs_quad) and min_u < -POSITIVITY_RTOL * abs(u0)
    return ComposedForce(out, min_u, violated)


@dataclass(frozen=True)
class PicardIterate:
    """``a - q t^2 / 2 - sum_k d_k (1 - cos(k w t))``.

    Attributes:
        constant: ``a``, the initial displacement.
        quad: ``q``, the DC part of the force series.
        harmonic_terms: ``(k, d_k)`` pairs with ``d_k = c_k / (k w)^2``.
        omega: fundamental ``w``.
    """

    constant: float
    quad: float
    harmonic_terms: tuple[tuple[int, float], ...]
    omega: float

    def __call__(self, t: ArrayLike):
        return eval_picard(self, t)

    def slope(self, t: ArrayLike):
        t = np.asarray(t, dtype=float)
        out = -self.quad * t
        for k, d in self.harmonic_terms:
            out = out - d * k * self.omega * np.sin(k * self.omega * t)
        return float(out) if np.ndim(out) == 0 else out

    def quarter_period_value(self) -> float:
        """Value at ``t = pi / (2 w)`` using exact ``cos(k pi / 2)``."""
        t = math.pi / (2.0 * self.omega)
        acc = self.constant - 0.5 * self.quad * t * t
        for k, d in self.harmonic_terms:
            acc -= d * (1.0 - _QUARTER_COS[k % 4])
        return acc

    def second_derivative(self) -> CosineSeries:
        """``d^2/dt^2`` of the iterate as a cosine series (equals ``-f(u)``)."""
        n = max((k for k, _ in self.harmonic_terms), default=0)
        out = np.zeros(n + 1)
        out[0] = -self.quad
        for k, d in self.harmonic_terms:
            out[k] -= d * (k * self.omega) ** 2
        return CosineSeries(self.omega, tuple(out))


def picard_integrate(fseries: CosineSeries, amplitude: float) -> PicardIterate:
    """Integrate ``u'' = -f`` twice from ``u(0) = A, u'(0) = 0``.

    ``c_0 -> c_0 t^2 / 2`` and ``c_k cos(k w t) -> c_k (1 - cos(k w t)) / (k w)^2``.
    """
    w = fseries.omega
    c = fseries.coeffs
    quad = c[0] if c else 0.0
    terms = tuple((k, ck / (k * w) ** 2) for k, ck in enumerate(c) if k and ck != 0.0)
    return PicardIterate(float(amplitude), quad, terms, w)


def eval_picard(p: PicardIterate, t: ArrayLike):
    t = np.asarray(t, dtype=float)
    out = p.constant - 0.5 * p.quad * t * t
    for k, d in p.harmonic_terms:
        out = out - d * (1.0 - np.cos(k * p.omega * t))
    return float(out) if np.ndim(out) == 0 else out
