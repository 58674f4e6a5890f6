import math

import pytest

from oscperiod.errors import DomainError
from oscperiod.forces import ForceModel, absquad, duffing
from oscperiod.oracle import (
    QuadratureSettings,
    asymptotic_constant,
    exact_family_period,
    exact_period,
    small_rho_coefficients,
)
from oscperiod.solver import do_t1, do_t2, duffing_t1, duffing_t2

PI = math.pi


@pytest.mark.parametrize("a", [0.1, 1.0, 10.0])
def test_linear_period_independent_of_amplitude(a):
    assert exact_period(duffing(0.0), a) == pytest.approx(2 * PI, rel=1e-14)


def test_duffing_against_elliptic_integral():
    # T = 4 K(m) / sqrt(1 + rho), m = rho / (2 (1 + rho)); independent closed form
    from scipy.special import ellipk

    for rho in (0.3, 1.0, 7.0):
        expected = 4 * ellipk(rho / (2 * (1 + rho))) / math.sqrt(1 + rho)
        assert exact_family_period("duffing", rho) == pytest.approx(expected, rel=1e-13)


def test_family_scaling():
    rho = 3.0
    assert exact_period(duffing(rho / 4), 2.0) == pytest.approx(exact_period(duffing(rho), 1.0), rel=1e-13)
    assert exact_period(absquad(rho / 2), 2.0) == pytest.approx(exact_period(absquad(rho), 1.0), rel=1e-13)


def test_large_rho_constants():
    assert math.sqrt(1e8) * exact_family_period("duffing", 1e8) == pytest.approx(7.416298709, abs=1e-6)
    assert math.sqrt(1e8) * exact_family_period("absquad", 1e8) == pytest.approx(6.869261369, abs=1e-6)


def test_rejects_non_librating_potential():
    # V(u) = u^2/2 - u^4/4 peaks at u = 1
    with pytest.raises(DomainError):
        exact_period(ForceModel((1.0, -1.0)), 1.5)
    with pytest.raises(DomainError):
        exact_period(duffing(1.0), 0.0)


def test_quadrature_settings_validation():
    with pytest.raises(DomainError):
        QuadratureSettings(panels=0)
    with pytest.raises(DomainError):
        QuadratureSettings(tol=0.0)


def test_asymptotic_constants():
    value, err = asymptotic_constant(duffing_t1)
    assert value == pytest.approx(6 * PI / math.sqrt(7), abs=1e-9)
    value, err = asymptotic_constant(lambda r: exact_family_period("duffing", r))
    assert value == pytest.approx(7.416298709, abs=1e-6)
    assert err < 1e-6
    value, err = asymptotic_constant(lambda r: exact_family_period("absquad", r))
    assert value == pytest.approx(6.869261369, abs=1e-6)


def test_asymptotic_constant_warns_on_flat_tail():
    with pytest.warns(RuntimeWarning):
        value, _ = asymptotic_constant(lambda r: (7.0 + (-1) ** int(math.log10(r) / 2) * 1e-3 / r) / math.sqrt(r))
    assert value == pytest.approx(7.0, abs=1e-9)


def test_small_rho_of_known_polynomial():
    c = small_rho_coefficients(lambda r: 1.0 - 2.0 * r + 3.0 * r * r + 5.0 * r**3)
    assert c == pytest.approx((1.0, -2.0, 3.0), rel=1e-8)


def test_exact_duffing_series():
    c = small_rho_coefficients(lambda r: exact_family_period("duffing", r))
    assert c[0] == pytest.approx(2 * PI, rel=1e-14)
    assert c[1] == pytest.approx(-3 * PI / 4, rel=1e-4)
    assert c[2] == pytest.approx(57 * PI / 128, rel=1e-4)


def test_method_slopes():
    assert small_rho_coefficients(duffing_t1, 1)[1] == pytest.approx(-7 * PI / 9, rel=1e-4)
    assert small_rho_coefficients(duffing_t2, 1)[1] == pytest.approx(-3 * PI / 4, rel=1e-4)
    assert small_rho_coefficients(do_t1, 1)[1] == pytest.approx(-PI * (PI**2 + 4) / 16, rel=1e-4)
    assert small_rho_coefficients(do_t2, 1)[1] == pytest.approx(-PI * (9 * PI**2 + 20) / 128, rel=1e-4)
    exact_abs = small_rho_coefficients(lambda r: exact_family_period("absquad", r), 1)
    assert exact_abs[1] == pytest.approx(-8 / 3, rel=1e-4)


def test_second_order_duffing_curvature():
    # rho^2 coefficient of the second-order Duffing period
    assert small_rho_coefficients(duffing_t2)[2] == pytest.approx(1431 * PI / 3200, rel=1e-3)


def test_orders_validated():
    with pytest.raises(DomainError):
        small_rho_coefficients(duffing_t1, 3)
