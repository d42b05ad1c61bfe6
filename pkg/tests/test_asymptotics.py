import math
from fractions import Fraction

import numpy as np
import pytest

import lovelab as ll
from lovelab.asymptotics import (
    _eps_bracket_closed,
    _eps_bracket_from_constants,
    _k2_sum,
    _outer_subtracted,
)
from lovelab.errors import DomainError, WindowError
from lovelab.specfun import _i2e, _k1e, _polylog_exp_neg

PI = math.pi
GAMMA0 = (1.0 + math.log(PI)) / PI


# ----------------------------------------------------------------------
# Energy and capacitance series.
# ----------------------------------------------------------------------

def test_energy_series_values():
    assert ll.energy_series("takahashi", 0.0) == 0.0
    g = 0.37
    diff = ll.energy_series("takahashi", g) - ll.energy_series("bogoliubov", g)
    assert diff == pytest.approx(ll.ENERGY_GAMMA2 * g * g, rel=1e-14)
    gap = ll.energy_series("takahashi", 0.01) - ll.energy_series("kaminaka_wadati", 0.01)
    assert gap == pytest.approx((1.0 / 6.0 - 1.0 / 8.0) * 1e-4, rel=1e-12)
    assert gap == pytest.approx(4.1667e-6, rel=1e-4)


def test_capacitance_series_values():
    kappa = 0.1
    kirchhoff = ll.capacitance_series("kirchhoff", kappa)
    expected = 2.5 + math.log(10.0) / (4 * PI) + (math.log(16 * PI) - 1.0) / (4 * PI)
    assert kirchhoff == pytest.approx(expected, rel=1e-15)
    extended = ll.capacitance_series("extended", kappa)
    assert extended - kirchhoff == pytest.approx(
        kappa / (16 * PI ** 2) * (math.log(kappa / (16 * PI)) ** 2 - 2.0), rel=1e-13)


def test_capacitance_series_vs_solver():
    kappa = 0.05
    c_num = ll.observables(ll.solve_love(ll.LoveProblem(kappa=kappa))).capacitance
    err_k = abs(c_num - ll.capacitance_series("kirchhoff", kappa))
    err_e = abs(c_num - ll.capacitance_series("extended", kappa))
    assert err_e < err_k


def test_series_name_guards():
    with pytest.raises(DomainError):
        ll.energy_series("popov", 0.1)
    with pytest.raises(DomainError):
        ll.capacitance_series("maxwell", 0.1)


# ----------------------------------------------------------------------
# epsilon(gamma).
# ----------------------------------------------------------------------

def test_epsilon_leading_order():
    for g in (1e-8, 1e-10):
        assert ll.epsilon_of_gamma(g) / math.sqrt(g) == pytest.approx(0.25, rel=1e-3)


def test_epsilon_a5_coefficient():
    L = math.log(32.0 * PI)
    a5 = (1.0 - 4.0 * L + 2.0 * L * L) / (128.0 * PI ** 2)
    series = ll.epsilon_series()
    assert series.coefficient(Fraction(3, 2), 0) == pytest.approx(a5, rel=1e-15)


def test_epsilon_round_trip():
    # gamma(eps) = 2 eps / C(2 eps); composing back must be the identity
    # through the carried orders
    gaps = []
    for eps in (0.01, 0.003, 0.001):
        gamma = 2.0 * eps / ll.capacitance_series("extended", 2.0 * eps)
        gap = abs(ll.epsilon_of_gamma(gamma) - eps)
        gaps.append(gap)
        budget = 1e-4 * eps ** 1.5 * math.log(eps) ** 2
        assert gap < budget
    assert gaps == sorted(gaps, reverse=True)


def test_epsilon_series_evaluation_matches_closed_form():
    series = ll.epsilon_series()
    for g in (1e-3, 1e-2):
        assert series.evaluate(g) == pytest.approx(ll.epsilon_of_gamma(g), rel=1e-14)


# ----------------------------------------------------------------------
# Far field.
# ----------------------------------------------------------------------

def test_far_field_limits():
    # far out the K, E -> pi/2 contributions cancel through O(1/r^2) and
    # the true tail is the dipole-like 1/(2 r^3) (checked against the
    # defining double integral in the next test)
    for r in (1e2, 1e4):
        assert ll.far_field(r) == pytest.approx(1.0 / (2.0 * r ** 3),
                                                rel=2e-2 / r)
    r = 1.0 + 1e-6
    assert ll.far_field(r) == pytest.approx(1.0 / (PI * (r - 1.0)), rel=1e-3)


def test_far_field_against_double_integral():
    # F(r) = (1/(2 pi)) int_0^{2pi} int_0^1 r1 dr1 dth /
    #        (r^2 + r1^2 - 2 r r1 cos th)^{3/2}
    r = 2.0

    def theta_slice(theta):
        value, _ = ll.integrate(
            lambda r1: r1 / (r * r + r1 * r1 - 2.0 * r * r1 * math.cos(theta)) ** 1.5,
            0.0, 1.0, tol=1e-12, scheme="tanh_sinh")
        return value

    total, _ = ll.integrate(lambda th: np.array([theta_slice(t) for t in np.atleast_1d(th)]),
                            0.0, 2.0 * PI, tol=1e-11, scheme="adaptive")
    assert ll.far_field(r) == pytest.approx(total / (2.0 * PI), abs=1e-8)


def test_far_field_domain():
    with pytest.raises(DomainError):
        ll.far_field(1.0)
    with pytest.raises(DomainError):
        ll.far_field(0.5)


# ----------------------------------------------------------------------
# Green traces.
# ----------------------------------------------------------------------

def test_green_trace_signs_and_leading_term():
    g_minus, g_plus = ll.green_traces(2.0, 1.0, 0.1)
    assert g_plus < 0.0                      # E(k) < K(k) on (0, 1)
    assert g_minus == pytest.approx(-2.5, abs=1e-12)


def test_green_trace_symmetry():
    a = ll.green_traces(2.0, 1.0, 0.25)
    b = ll.green_traces(1.0, 2.0, 0.25)
    assert a == b


def test_green_trace_truncation_stability():
    # the summed tail beyond the stopping point is below 1e-14
    r, r1, eps = 1.3, 1.0, 0.5
    g_minus, _ = ll.green_traces(r, r1, eps)
    n = np.arange(1, 3000, dtype=float)
    a = n * PI * r1 / eps
    b = n * PI * r / eps
    brute = -(r1 / r) / (2 * eps) - (2.0 / eps) * float(
        np.sum(_i2e(a) * 0.0 + np.exp(a - b) * _k1e(b) *
               np.array([ll.bessel_scaled("I1", float(v)) for v in a])))
    assert g_minus == pytest.approx(brute, abs=1e-14)


def test_green_trace_guards():
    with pytest.raises(DomainError):
        ll.green_traces(1.0, 1.0, 0.1)
    with pytest.raises(DomainError):
        ll.green_traces(1.0, 2.0, 0.0)


# ----------------------------------------------------------------------
# Kernels.
# ----------------------------------------------------------------------

def test_k1_epsilon_shift_invariance():
    # only the -1/(8 eps) term carries eps
    for r in (1.0, 1.5, 3.0):
        a = ll.kernel_k("k1", r, 1e-3) + 1.0 / (8.0 * 1e-3)
        b = ll.kernel_k("k1", r, 0.037) + 1.0 / (8.0 * 0.037)
        assert a == pytest.approx(b, abs=1e-14)


def test_k2_edge_law():
    # k2(1 + eps x) ~ -(eps/pi^2) Li_2(e^{-pi x}) to 0.5% at eps = 1e-3
    eps = 1e-3
    for x in (1.0, 2.0):
        value = ll.kernel_k("k2", 1.0 + eps * x, eps)
        law = -(eps / PI ** 2) * _polylog_exp_neg(2, PI * x)
        assert value == pytest.approx(law, rel=5e-3)


def test_k3_edge_law():
    # k3(1 + eps x) = (1/2) log(x eps/8) + 2 + O(eps log eps)
    eps, x = 1e-4, 2.0
    value = ll.kernel_k("k3", 1.0 + eps * x)
    law = 0.5 * math.log(x * eps / 8.0) + 2.0
    assert abs(value - law) <= 5.0 * eps * abs(math.log(eps))


def test_kernel_full_is_sum_of_parts():
    r, eps = 1.2, 0.02
    full = ll.kernel_k("full", r, eps)
    assert full == pytest.approx(
        ll.kernel_k("k1", r, eps) + ll.kernel_k("k2", r, eps), rel=1e-14)


def test_k2_truncation_stability():
    # ten extra terms beyond the cap move the sum by less than 1e-14
    for eps, r, cap in ((0.05, 1.0, 3_000_000), (1e-4, 1.0, 3_000_000),
                        (0.01, 1.5, 10_000), (0.05, 3.0, 10_000)):
        n = np.arange(cap + 1, cap + 11, dtype=float)
        a = n * PI / eps
        b = n * PI * r / eps
        block = (2.0 / PI) * r * float(
            np.sum((1.0 / n) * _i2e(a) * _k1e(b) * np.exp(a - b)))
        assert abs(block) < 1e-14


def test_k2_capped_sum_matches_adaptive_for_decaying_tail():
    r, eps = 1.5, 0.01
    assert _k2_sum(r, eps) == pytest.approx(_k2_sum(r, eps, n_terms=5000), rel=1e-14)


def test_kernel_guards():
    with pytest.raises(DomainError):
        ll.kernel_k("k1", 0.9, 0.1)
    with pytest.raises(DomainError):
        ll.kernel_k("k2", 1.5, -0.1)
    with pytest.raises(DomainError):
        ll.kernel_k("k9", 1.5, 0.1)


# ----------------------------------------------------------------------
# Edge integrals: k2 route and the inner/outer split.
# ----------------------------------------------------------------------

def test_k2_energy_integral_value():
    eps = 0.01
    assert ll.k2_energy_integral(eps) == pytest.approx(
        eps / (2.0 * PI ** 2), abs=1e-9)


def test_k2_energy_integral_linearity_and_sign():
    ratios = [ll.k2_energy_integral(e) / e for e in (0.02, 0.01, 0.005)]
    assert max(ratios) - min(ratios) < 1e-12
    assert all(r > 0.0 for r in ratios)
    with pytest.raises(WindowError):
        ll.k2_energy_integral(0.2)


def test_j_split_delta_cancellation():
    eps = 1e-3
    totals = [sum(ll.j_split(eps, delta)) for delta in (0.03, 0.06)]
    assert abs(totals[0] - totals[1]) <= 0.02 * eps


def test_j_split_leading_coefficient_trend():
    # (J1+J2)/(eps log^2 eps) -> -1/(4 pi) from below
    gaps = []
    for eps in (1e-2, 1e-3, 1e-4):
        total = sum(ll.j_split(eps))
        ratio = total / (eps * math.log(eps) ** 2)
        gaps.append(abs(ratio + 1.0 / (4.0 * PI)))
    assert gaps == sorted(gaps, reverse=True)
    assert gaps[-1] < 5e-3


def test_j_split_constant_term():
    # after removing the known log terms the eps coefficient approaches
    # (2 - (3/2) log 2) gamma0 + gamma1/2 + gamma2 + (2/pi) log 8
    # - log^2 8/(4 pi)
    g1 = PI / 6 - 1 / PI - math.log(PI) / PI - math.log(PI) ** 2 / (2 * PI)
    g2 = -2.0 / PI - PI / 4.0
    bracket = ((2.0 - 1.5 * math.log(2.0)) * GAMMA0 + 0.5 * g1 + g2
               + 2.0 * math.log(8.0) / PI - math.log(8.0) ** 2 / (4.0 * PI))
    log_coeff = 3.0 * math.log(2.0) / (2.0 * PI) + 0.5 * GAMMA0 - 2.0 / PI
    gaps = []
    for eps in (1e-3, 1e-4, 1e-5):
        total = sum(ll.j_split(eps))
        le = math.log(eps)
        estimate = (total + eps * le * le / (4.0 * PI) - eps * le * log_coeff) / eps
        gaps.append(abs(estimate - bracket))
    assert gaps == sorted(gaps, reverse=True)
    assert gaps[-1] < 0.01


def test_j_split_window_guards():
    with pytest.raises(WindowError):
        ll.j_split(1e-3, delta=0.3)
    with pytest.raises(WindowError):
        ll.j_split(1e-2, delta=0.02)


def test_outer_subtracted_integrand_is_tame():
    # the subtraction removes the 1/(1-s) and log(1-s)/(1-s) growth; what
    # remains is bounded by a slowly growing log^2 envelope
    for d in (1e-3, 1e-6, 1e-9, 1e-12):
        value = float(_outer_subtracted(np.array([1.0 - d]))[0])
        assert abs(value) <= 2.0 + math.log(d) ** 2 / (4.0 * PI)


# ----------------------------------------------------------------------
# Third moment and the final assembly.
# ----------------------------------------------------------------------

def test_bracket_forms_agree():
    assert _eps_bracket_closed() == pytest.approx(
        _eps_bracket_from_constants(), abs=1e-12)


def test_third_moment_breakdown_consistency():
    b = ll.third_moment_expansion(0.02)
    parts = b.leading + b.constant + b.log2_term + b.log_term + b.order_eps_term
    assert b.total == pytest.approx(parts, rel=1e-15)
    assert b.third_moment == pytest.approx(b.capacitance_c1 - 2.0 * b.total,
                                           rel=1e-15)


def test_third_moment_infinite_plate_trend():
    # 4 pi int r^3 sigma ~ 1/(4 eps) at leading order
    devs = [abs(ll.third_moment_expansion(e).third_moment * 4.0 * e - 1.0)
            for e in (0.02, 0.01, 0.005)]
    assert devs == sorted(devs, reverse=True)
    assert devs[-1] < 0.05


def test_ground_state_series_coefficients():
    series = ll.ground_state_series()
    assert series.coefficient(1, 0) == pytest.approx(1.0, abs=1e-12)
    assert series.coefficient(Fraction(3, 2), 0) == pytest.approx(
        -4.0 / (3.0 * PI), abs=1e-12)
    assert abs(series.coefficient(2, 1)) <= 1e-10
    assert abs(series.coefficient(2, 2)) <= 1e-10
    assert series.coefficient(2, 0) == pytest.approx(ll.ENERGY_GAMMA2, abs=1e-10)
    # nothing below the leading physical order survives the assembly
    for term in series.terms:
        assert term.power >= 1 or abs(term.coefficient) < 1e-12


def test_ground_state_value_matches_energy_series():
    for g in (0.01, 0.05):
        assert ll.assemble_ground_state(g) == pytest.approx(
            ll.energy_series("takahashi", g), abs=1e-12)


def test_series_terms_sorted_by_growth():
    series = ll.ground_state_series()
    keys = [(t.power, -t.log_power) for t in series.terms]
    assert keys == sorted(keys)


def test_series_evaluate_domain():
    with pytest.raises(DomainError):
        ll.ground_state_series().evaluate(1.5)
