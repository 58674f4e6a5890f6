"""Even initial derivatives ``u^(2n)(0)`` of ``u'' + f(u) = 0, u(0) = A, u'(0) = 0``.

The solution is even in ``t``, so it is carried as a power series in
``tau = t^2``: ``u = sum_k b_k tau^k``. Matching ``u'' = -f(u)`` order by
order gives ``b_{k+1} = -[tau^k] f(u) / ((2k+2)(2k+1))`` and
``u^(2n)(0) = (2n)! b_n``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from oscperiod.errors import CapacityError, DomainError
from oscperiod.forces import ForceModel, eval_force

MAX_TERMS = 32


@dataclass(frozen=True)
class EvenTaylorSeries:
    """``u(t) = sum_k coeffs[k] t^(2k)``, truncated."""

    coeffs: tuple[float, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "coeffs", tuple(float(c) for c in self.coeffs))

    def __len__(self) -> int:
        return len(self.coeffs)

    def __call__(self, t: float) -> float:
        tau = t * t
        acc = 0.0
        for c in reversed(self.coeffs):
            acc = acc * tau + c
        return acc


@dataclass(frozen=True)
class DerivativeSequence:
    """``values[n] = u^(2n)(0)`` for ``n = 0 .. len - 1``."""

    amplitude: float
    values: tuple[float, ...]

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, n: int) -> float:
        return self.values[n]


def _mul_trunc(a: np.ndarray, b: np.ndarray, n: int) -> np.ndarray:
    return np.convolve(a, b)[:n]


def compose_series(m: ForceModel, s: EvenTaylorSeries) -> EvenTaylorSeries:
    """Series of ``f(u(t))`` truncated to ``len(s)`` terms.

    The ``|u|u`` term is expanded as ``sign(u(0)) u^2``, valid near ``t = 0``
    whenever ``u(0) != 0``.
    """
    n = len(s)
    if n == 0:
        raise DomainError("empty series")
    u = np.asarray(s.coeffs, dtype=float)
    u2 = _mul_trunc(u, u, n)
    out = np.zeros(n)
    power = u.copy()
    for k, c in enumerate(m.odd_coeffs):
        if k:
            power = _mul_trunc(power, u2, n)
        if c:
            out[: len(power)] += c * power
    if m.abs_quad and u[0] != 0.0:
        out[: len(u2)] += m.abs_quad * math.copysign(1.0, u[0]) * u2
    return EvenTaylorSeries(tuple(out))


def derivative_sequence(m: ForceModel, amplitude: float, count: int) -> DerivativeSequence:
    """Return ``G_0 .. G_{count-1}`` with ``G_n = u^(2n)(0)``.

    ``G_0 = A``, ``G_1 = -f(A)``, ``G_2 = f(A) f'(A)``, and so on.

    Raises:
        DomainError: ``amplitude <= 0`` or ``count < 1``.
        CapacityError: ``count > MAX_TERMS``.
    """
    if not amplitude > 0:
        raise DomainError(f"amplitude must be positive, got {amplitude}")
    if count < 1:
        raise DomainError(f"count must be at least 1, got {count}")
    if count > MAX_TERMS:
        raise CapacityError(f"count {count} exceeds the series cap {MAX_TERMS}")
    b = [float(amplitude)]
    for k in range(count - 1):
        fs = compose_series(m, EvenTaylorSeries(tuple(b)))
        b.append(-fs.coeffs[k] / ((2 * k + 2) * (2 * k + 1)))
    values = [math.factorial(2 * n) * bn for n, bn in enumerate(b)]
    if count > 1:
        values[1] = -float(eval_force(m, amplitude))
    values = tuple(values)
    return DerivativeSequence(float(amplitude), values)


def taylor_series(g: DerivativeSequence) -> EvenTaylorSeries:
    """Convert ``G_n`` back to the coefficients ``b_n = G_n / (2n)!``."""
    return EvenTaylorSeries(tuple(v / math.factorial(2 * n) for n, v in enumerate(g.values)))
