"""Periods of odd nonlinear oscillators from a cosine ansatz and one Picard step."""

from oscperiod.ansatz import AnsatzSolution, closed_form_n2, solve_coefficients
from oscperiod.errors import (
    BranchError,
    CapacityError,
    ConvergenceError,
    DomainError,
    NoRootError,
    NumericError,
    OscPeriodError,
)
from oscperiod.forces import ForceModel, absquad, duffing, family_model, parse_force_spec
from oscperiod.oracle import QuadratureSettings, asymptotic_constant, exact_period, small_rho_coefficients
from oscperiod.solver import (
    PeriodResult,
    do_t1,
    do_t2,
    duffing_t1,
    duffing_t2,
    find_period,
    residual,
    t_infinity_method,
)
from oscperiod.taylor_init import DerivativeSequence, derivative_sequence
from oscperiod.trigpoly import CosineSeries, PicardIterate, compose_force, picard_integrate

__version__ = "0.1.0"
