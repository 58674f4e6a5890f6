import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oscperiod.forces import ForceModel, absquad, duffing, eval_force
from oscperiod.trigpoly import (
    CosineSeries,
    compose_force,
    eval_picard,
    multiply,
    picard_integrate,
)

RNG = np.random.default_rng(20240611)
series_coeffs = st.lists(st.floats(-3, 3), min_size=1, max_size=9)


def _simpson_picard(f, amplitude, t, n=4000):
    """A - int_0^t (t - s) f(s) ds (Cauchy's repeated-integral formula), composite Simpson."""
    s = np.linspace(0.0, t, n + 1)
    y = (t - s) * f(s)
    h = t / n
    return amplitude - h / 3 * (y[0] + y[-1] + 4 * y[1:-1:2].sum() + 2 * y[2:-1:2].sum())


def test_trailing_zeros_trimmed():
    assert CosineSeries(1.0, (1.0, 2.0, 0.0, 0.0)).coeffs == (1.0, 2.0)
    assert CosineSeries(1.0, (0.0,)).coeffs == ()


def test_cos_squared():
    c = CosineSeries(1.0, (0.0, 1.0))
    assert multiply(c, c).coeffs == (0.5, 0.0, 0.5)


def test_multiplicative_identity():
    s = CosineSeries(2.0, (0.3, -1.0, 0.0, 4.0))
    assert multiply(CosineSeries.constant(2.0, 1.0), s) == s


def test_mismatched_fundamentals():
    with pytest.raises(ValueError):
        multiply(CosineSeries(1.0, (1.0,)), CosineSeries(2.0, (1.0,)))


def test_odd_harmonic_square_pointwise():
    s = CosineSeries(1.0, (0.0, 1.0, 0.0, 1.0))
    p = multiply(s, s)
    t = RNG.uniform(0, 10, 64)
    assert p.coeffs == (1.0, 0.0, 1.5, 0.0, 1.0, 0.0, 0.5)
    assert np.allclose(p(t), s(t) ** 2, rtol=0, atol=1e-12)


@settings(max_examples=60)
@given(series_coeffs, series_coeffs, st.floats(0.1, 5))
def test_multiply_agrees_pointwise(ca, cb, omega):
    a, b = CosineSeries(omega, tuple(ca)), CosineSeries(omega, tuple(cb))
    t = RNG.uniform(-20, 20, 64)
    scale = max(1.0, sum(map(abs, ca)) * sum(map(abs, cb)))
    assert np.max(np.abs(multiply(a, b)(t) - a(t) * b(t))) <= 1e-12 * scale


def test_compose_linear_force_is_identity():
    u = CosineSeries(1.3, (0.0, 0.8))
    assert compose_force(duffing(0.0), u).series == u


def test_compose_cubic():
    u = CosineSeries(1.0, (0.0, 1.0))
    assert compose_force(duffing(1.0), u).series.coeffs == (0.0, 1.75, 0.0, 0.25)


def test_compose_absquad_uses_square():
    a = 1.5
    u = CosineSeries(1.0, (0.0, a))
    out = compose_force(absquad(1.0), u)
    assert out.series.coeffs == pytest.approx((a * a / 2, a, a * a / 2))
    assert not out.positivity_violated


def test_positivity_flag_raised_when_displacement_goes_negative():
    u = CosineSeries(1.0, (0.0, 1.0, 0.0, 0.6))  # dips below zero before pi/2
    out = compose_force(absquad(1.0), u)
    assert out.min_displacement < 0 and out.positivity_violated
    assert not compose_force(duffing(1.0), u).positivity_violated


@settings(max_examples=40)
@given(series_coeffs, st.lists(st.floats(-2, 2), min_size=1, max_size=3), st.floats(0.1, 3))
def test_compose_polynomial_agrees_pointwise(cu, extra, omega):
    m = ForceModel((1.0, *extra))
    u = CosineSeries(omega, tuple(cu))
    t = RNG.uniform(-10, 10, 64)
    scale = max(1.0, sum(map(abs, cu))) ** (2 * len(m.odd_coeffs) - 1) * max(map(abs, m.odd_coeffs))
    assert np.max(np.abs(compose_force(m, u).series(t) - eval_force(m, u(t)))) <= 1e-12 * scale


def test_picard_of_zero_force_is_constant():
    p = picard_integrate(CosineSeries(1.0, ()), 2.0)
    assert eval_picard(p, 0.0) == 2.0
    assert np.all(eval_picard(p, np.linspace(0, 9, 10)) == 2.0)


def test_picard_of_harmonic_force_is_cosine():
    w, a = 1.7, 0.6
    p = picard_integrate(CosineSeries(w, (0.0, w * w * a)), a)
    t = np.linspace(0, 5, 50)
    assert np.allclose(eval_picard(p, t), a * np.cos(w * t), atol=1e-14)


def test_picard_duffing_first_order_against_simpson():
    w, a = 1.25, 1.0
    p = picard_integrate(compose_force(duffing(1.0), CosineSeries(w, (0.0, a))).series, a)
    quarter = math.pi / (2 * w)
    hand = 1 - (7 / 4 + 1 / 36) / w**2
    assert p.quarter_period_value() == pytest.approx(hand, abs=1e-14)
    oracle = _simpson_picard(lambda s: eval_force(duffing(1.0), a * np.cos(w * s)), a, quarter)
    assert p(quarter) == pytest.approx(oracle, abs=1e-10)
    for t in (0.3, 1.1, 2.0):
        oracle = _simpson_picard(lambda s: eval_force(duffing(1.0), a * np.cos(w * s)), a, t)
        assert p(t) == pytest.approx(oracle, abs=1e-10)


def test_picard_absquad_dc_term_against_simpson():
    w, a = 0.9, 1.0
    fs = compose_force(absquad(2.0), CosineSeries(w, (0.0, a))).series
    p = picard_integrate(fs, a)
    assert p.quad == pytest.approx(1.0)
    t = math.pi / (2 * w)
    oracle = _simpson_picard(lambda s: eval_force(absquad(2.0), a * np.cos(w * s)), a, t)
    assert p.quarter_period_value() == pytest.approx(oracle, abs=1e-10)


@settings(max_examples=40)
@given(series_coeffs, st.floats(0.2, 4), st.floats(0.1, 5))
def test_picard_structure(cf, omega, a):
    fs = CosineSeries(omega, tuple(cf))
    p = picard_integrate(fs, a)
    assert eval_picard(p, 0.0) == a
    assert p.slope(0.0) == 0.0
    back = p.second_derivative()
    assert np.allclose(back.coeffs, [-c for c in fs.coeffs], rtol=1e-13, atol=1e-13)


def test_odd_force_on_odd_harmonics_has_no_dc():
    u = CosineSeries(1.1, (0.0, 0.9, 0.0, 0.1, 0.0, -0.02))
    fs = compose_force(ForceModel((1.0, 0.4, 0.1)), u).series
    assert fs.coeffs[0] == 0.0
    assert all(c == 0.0 for c in fs.coeffs[0::2])
