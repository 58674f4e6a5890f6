"""Period from the quarter-period condition, plus the closed forms for the two families.

For a trial frequency ``w`` the pipeline is

    G_n(A) -> A_j(w) -> f(u_N) as a cosine series -> one Picard step -> r(w) = u~(pi / 2w)

and the period is ``2 pi / w`` at the root of ``r``. The root is taken by
continuation from the linear oscillator (``w = 1``): brackets grow
geometrically outward from 1 and the first rising zero of ``r`` wins.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.optimize import brentq

from oscperiod.ansatz import solve_coefficients
from oscperiod.errors import BranchError, DomainError, NoRootError, NumericError
from oscperiod.forces import ABSQUAD, DUFFING, ForceModel
from oscperiod.taylor_init import MAX_TERMS, derivative_sequence
from oscperiod.trigpoly import compose_force, picard_integrate

TWO_PI = 2.0 * math.pi
DEFAULT_TOL = 1e-12
EXPANSION_FACTOR = 1.5
MAX_EXPANSIONS = 60


@dataclass(frozen=True)
class PeriodResult:
    order: int
    amplitude: float
    rho: float | None
    omega: float
    period: float
    residual: float
    bracket: tuple[float, float]
    positivity_flag: bool


def _pipeline(m: ForceModel, order: int, amplitude: float, omega: float):
    g = derivative_sequence(m, amplitude, order)
    ansatz = solve_coefficients(g, order, omega)
    composed = compose_force(m, ansatz.to_series())
    return picard_integrate(composed.series, amplitude), composed


def residual(m: ForceModel, order: int, amplitude: float, omega: float) -> float:
    """``u~_N(T/4)`` at trial frequency ``omega``; zero at the approximate period."""
    if not amplitude > 0:
        raise DomainError(f"amplitude must be positive, got {amplitude}")
    if not omega > 0:
        raise DomainError(f"omega must be positive, got {omega}")
    iterate, _ = _pipeline(m, order, amplitude, omega)
    value = iterate.quarter_period_value()
    if not math.isfinite(value):
        raise NumericError(f"non-finite residual at omega={omega}")
    return value


def _rising(r_lo: float, r_hi: float) -> bool:
    return (r_lo < 0.0 <= r_hi) or (r_lo <= 0.0 < r_hi)


def _bracket(r: Callable[[float], float]) -> tuple[float, float, float, float]:
    """Walk outward from ``w = 1``; return ``(lo, hi, r(lo), r(hi))`` of the nearest rising crossing.

    Only crossings where ``r`` goes from negative to positive with increasing
    ``w`` are accepted: the displacement left at ``T/4`` grows as the quarter
    period shrinks. Falling crossings belong to spurious roots.
    """
    r1 = r(1.0)
    if r1 == 0.0:
        return 1.0, 1.0, 0.0, 0.0
    up_prev, up_val = 1.0, r1
    dn_prev, dn_val = 1.0, r1
    for i in range(1, MAX_EXPANSIONS + 1):
        found = []
        up = EXPANSION_FACTOR**i
        rv = r(up)
        if _rising(up_val, rv):
            found.append((up_prev, up, up_val, rv))
        up_prev, up_val = up, rv
        dn = EXPANSION_FACTOR**-i
        rv = r(dn)
        if _rising(rv, dn_val):
            found.append((dn, dn_prev, rv, dn_val))
        dn_prev, dn_val = dn, rv
        if found:
            if len(found) == 1:
                return found[0]
            # both directions hit a crossing at the same step: keep the root closer to 1 in log scale
            roots = [_refine(r, *b, tol=1e-6) for b in found]
            return found[int(np.argmin([abs(math.log(x)) for x in roots]))]
    lo, hi = EXPANSION_FACTOR**-MAX_EXPANSIONS, EXPANSION_FACTOR**MAX_EXPANSIONS
    raise NoRootError(f"no rising zero of the residual for omega in [{lo:.3g}, {hi:.3g}]", (lo, hi))


def _refine(r, lo, hi, rlo, rhi, tol):
    if rlo == 0.0:
        return lo
    if rhi == 0.0:
        return hi
    return brentq(r, lo, hi, xtol=tol, rtol=4 * np.finfo(float).eps, maxiter=500)


def find_period(
    m: ForceModel, order: int, amplitude: float, tol: float = DEFAULT_TOL
) -> PeriodResult:
    """Approximate period of order ``order`` for amplitude ``amplitude``.

    Raises:
        DomainError: bad amplitude, order or tolerance.
        NoRootError: the residual has no rising zero within the scanned range.
        NumericError: the residual became non-finite.
    """
    if not amplitude > 0:
        raise DomainError(f"amplitude must be positive, got {amplitude}")
    if not 1 <= order <= MAX_TERMS:
        raise DomainError(f"order must be in [1, {MAX_TERMS}], got {order}")
    if not tol > 0:
        raise DomainError(f"tol must be positive, got {tol}")

    def r(w: float) -> float:
        return residual(m, order, amplitude, w)

    lo, hi, rlo, rhi = _bracket(r)
    omega = _refine(r, lo, hi, rlo, rhi, tol)
    iterate, composed = _pipeline(m, order, amplitude, omega)
    return PeriodResult(
        order=order,
        amplitude=float(amplitude),
        rho=m.rho(amplitude),
        omega=omega,
        period=TWO_PI / omega,
        residual=abs(iterate.quarter_period_value()),
        bracket=(lo, hi),
        positivity_flag=composed.positivity_violated,
    )


# Closed forms and period polynomials for the two families, in rho.


def duffing_t1(rho: float) -> float:
    """First-order period for ``u + eps u^3``: ``6 pi / sqrt(7 rho + 9)``."""
    return 6.0 * math.pi / math.sqrt(7.0 * rho + 9.0)


def do_t1(rho: float) -> float:
    """First-order period for ``u + eps |u| u``: ``8 pi / sqrt(rho (pi^2 + 4) + 16)``."""
    return 8.0 * math.pi / math.sqrt(rho * (math.pi**2 + 4.0) + 16.0)


def duffing_t2_poly(rho: float) -> np.ndarray:
    """Coefficients (highest first) of the second-order Duffing period equation in ``s = T^2``."""
    p2 = math.pi**2
    return np.array([
        125.0 * rho * (rho + 1) ** 3,
        -7656.0 * p2 * rho * (rho + 1) ** 2,
        120.0 * p2**2 * (rho + 1) * (1607.0 * rho + 735.0),
        -64.0 * p2**3 * (48851.0 * rho + 55125.0),
        12700800.0 * p2**4,
    ])


def do_t2_poly(rho: float) -> np.ndarray:
    """Coefficients (highest first) of the second-order ``|u|u`` period equation in ``s = T^2``."""
    p2 = math.pi**2
    return np.array([
        rho * (rho + 1) ** 2 * (9 * p2 - 16),
        -8 * p2 * (rho + 1) * (rho * (45 * p2 - 16) + 256),
        16 * p2**2 * (rho * (369 * p2 + 1136) + 5120),
        -294912.0 * p2**3,
    ])


def duffing_tinf2_poly() -> np.ndarray:
    """Large-rho limit of the Duffing equation, in ``S = T_inf^2``."""
    p2 = math.pi**2
    return np.array([125.0, -7656.0 * p2, 192840.0 * p2**2, -3126464.0 * p2**3, 12700800.0 * p2**4])


def do_tinf2_poly() -> np.ndarray:
    """Large-rho limit of the ``|u|u`` equation, in ``S = T_inf^2``."""
    p2 = math.pi**2
    return np.array([9 * p2 - 16, 8 * p2 * (16 - 45 * p2), 16 * p2**2 * (369 * p2 + 1136), -294912.0 * p2**3])


def _positive_real_roots(coeffs: np.ndarray) -> np.ndarray:
    roots = np.roots(np.trim_zeros(coeffs, "f"))
    real = roots[np.abs(roots.imag) <= 1e-9 * np.maximum(1.0, np.abs(roots))].real
    return np.sort(real[real > 0])


def _polish(coeffs: np.ndarray, s: float, steps: int = 3) -> float:
    c = np.trim_zeros(coeffs, "f")
    dc = np.polyder(c)
    for _ in range(steps):
        d = np.polyval(dc, s)
        if d == 0.0:
            break
        s -= np.polyval(c, s) / d
    return s


def _track_branch(poly: Callable[[float], np.ndarray], rho: float, steps_per_decade: int = 40) -> float:
    """Follow the root ``s = T^2`` that equals ``4 pi^2`` at ``rho = 0`` out to ``rho``."""
    if rho < 0:
        raise DomainError(f"rho must be non-negative, got {rho}")
    s = TWO_PI**2
    if rho == 0:
        return math.sqrt(_polish(poly(0.0), s))
    start = min(rho, 1e-6)
    decades = max(math.log10(rho / start), 0.0)
    grid = np.geomspace(start, rho, int(decades * steps_per_decade) + 2)
    for x in grid:
        roots = _positive_real_roots(poly(float(x)))
        if roots.size == 0:
            raise BranchError(f"no positive real root at rho={x:.6g}")
        nearest = roots[np.argmin(np.abs(roots - s))]
        if abs(nearest - s) > 0.25 * s:
            raise BranchError(f"root jumped from {s:.6g} to {nearest:.6g} at rho={x:.6g}")
        s = float(nearest)
    return math.sqrt(_polish(poly(float(rho)), s))


def duffing_t2(rho: float) -> float:
    """Second-order Duffing period: the root of the degree-8 equation continuous from ``2 pi``."""
    return _track_branch(duffing_t2_poly, rho)


def do_t2(rho: float) -> float:
    """Second-order ``|u|u`` period: the root of the degree-6 equation continuous from ``2 pi``."""
    return _track_branch(do_t2_poly, rho)


_T1 = {DUFFING: duffing_t1, ABSQUAD: do_t1}
_T2 = {DUFFING: duffing_t2, ABSQUAD: do_t2}
_TINF2 = {DUFFING: duffing_tinf2_poly, ABSQUAD: do_tinf2_poly}
LARGE_RHO = 1e8


def t_infinity_method(family: str, order: int) -> float:
    """``lim sqrt(rho) T_N(rho)`` for the first- and second-order closed forms."""
    if family not in _T1:
        raise DomainError(f"unknown family {family!r}")
    if order == 1:
        return 6 * math.pi / math.sqrt(7) if family == DUFFING else 8 * math.pi / math.sqrt(math.pi**2 + 4)
    if order != 2:
        raise DomainError(f"closed forms exist for orders 1 and 2, got {order}")
    probe = math.sqrt(LARGE_RHO) * _T2[family](LARGE_RHO)
    coeffs = _TINF2[family]()
    candidates = np.sqrt(_positive_real_roots(coeffs))
    if candidates.size == 0:
        raise BranchError("limit equation has no positive real root")
    best = candidates[np.argmin(np.abs(candidates - probe))]
    if abs(best - probe) > 0.01 * probe:
        raise BranchError(f"no limit root within 1% of sqrt(rho) T at rho={LARGE_RHO:g} ({probe:.6g})")
    return math.sqrt(_polish(coeffs, float(best) ** 2))


def closed_form_period(family: str, order: int, rho: float) -> float:
    """Dispatch to the first- or second-order closed form for a family."""
    table = {1: _T1, 2: _T2}.get(order)
    if table is None or family not in table:
        raise DomainError(f"no closed form for family={family!r}, order={order}")
    return table[family](rho)
