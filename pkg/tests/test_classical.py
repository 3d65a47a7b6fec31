#!/usr/bin/env python3
#
# (c) 2026 Yoichi Tanibayashi
#
"""
classical: deflection function, branches, DCS and asymmetry
"""
import math
import numpy as np
import pytest
from scipy import integrate
import classical

TWO_PI = 2 * math.pi


def naive_dcs_plus(theta, rho_L):
    """ |d rho_b(+)/d theta| differentiated term by term """
    s = math.sin(theta / 2)
    c = math.cos(theta / 2)
    d = 1 - (rho_L * s) ** 2
    return abs(-rho_L * s * c - 0.5 * s * math.sqrt(d)
               - rho_L ** 2 * s * c * c / (2 * math.sqrt(d)))


def test_larmor_radius():
    assert classical.larmor_radius(2.0, 1.0, 4.0) == pytest.approx(0.5)
    with pytest.raises(ValueError):
        classical.larmor_radius(1.0, 1.0, 0.0)


@pytest.mark.parametrize('rho_b, rho_L, theta', [
    (0.0, 1.0, math.pi / 2),
    (1.0, 0.5, 0.0),
    (0.0, 1e-12, math.pi),
])
def test_scattering_angle_values(rho_b, rho_L, theta):
    assert classical.scattering_angle(rho_b, rho_L) == pytest.approx(
        theta, abs=1e-11)


def test_scattering_angle_rejects_miss():
    with pytest.raises(ValueError):
        classical.scattering_angle(1.5, 1.0)
    with pytest.raises(ValueError):
        classical.scattering_angle(0.5, 0.0)


def test_theta_max():
    assert classical.theta_max(2.0) == pytest.approx(math.pi / 3)
    assert classical.theta_max(1.0) == pytest.approx(math.pi)
    with pytest.raises(ValueError):
        classical.theta_max(0.5)


@pytest.mark.parametrize('rho_L', [0.1, 0.5, 0.9])
def test_branch_round_trip_below_one(rho_L):
    for theta in np.linspace(0.01, TWO_PI - 0.1, 97):
        sol = classical.impact_parameters(float(theta), rho_L)
        assert sol.n_branches == 1
        assert sol.rho_b_minus is None
        back = classical.scattering_angle(sol.rho_b_plus, rho_L)
        assert back == pytest.approx(theta, abs=1e-11)


@pytest.mark.parametrize('rho_L', [1.5, 2.0, 10.0])
def test_branch_round_trip_above_one(rho_L):
    th_max = classical.theta_max(rho_L)
    for theta in np.linspace(0.01, th_max - 1e-3, 41):
        sol = classical.impact_parameters(float(theta), rho_L)
        assert sol.n_branches == 2
        for rho_b in sol.branches():
            back = classical.scattering_angle(rho_b, rho_L)
            assert back == pytest.approx(theta, abs=1e-10)


def test_rho_L_one_branches():
    sol = classical.impact_parameters(math.pi / 2, 1.0)
    assert sol.n_branches == 2
    assert sol.rho_b_plus == pytest.approx(0.0, abs=1e-15)
    # pinned at the grazing edge, carries no cross section
    assert sol.rho_b_minus == pytest.approx(-1.0, abs=1e-15)


def test_no_branch_beyond_theta_max():
    sol = classical.impact_parameters(2.0, 2.0)
    assert sol.n_branches == 0
    assert sol.branches() == []
    assert classical.dcs_classical(2.0, 2.0) == 0.0


def test_dcs_diverges_at_theta_max():
    th_max = classical.theta_max(2.0)
    assert classical.dcs_classical(th_max, 2.0) == math.inf


def test_dcs_rho_L_one_has_no_pole():
    assert classical.dcs_classical(math.pi, 1.0) == pytest.approx(0.0,
                                                                  abs=1e-15)
    near = classical.dcs_classical(math.pi - 1e-9, 1.0)
    assert math.isfinite(near)
    assert near == pytest.approx(1e-9, rel=1e-6)
    for theta in (0.3, 1.2, 2.5, math.pi - 1e-3):
        assert classical.dcs_classical(theta, 1.0) == \
            pytest.approx(math.sin(theta), rel=1e-12)
    assert classical.dcs_classical(math.pi + 0.1, 1.0) == 0.0
    assert classical.dcs_classical(TWO_PI - 0.1, -1.0) == \
        pytest.approx(math.sin(0.1), rel=1e-12)


@pytest.mark.parametrize('rho_L', [0.1, 0.5, 0.9])
def test_dcs_at_pi(rho_L):
    want = math.sqrt(1 - rho_L ** 2) / 2
    assert abs(classical.dcs_classical(math.pi, rho_L) - want) < 1e-12


@pytest.mark.parametrize('rho_L', [0.1, 0.5, 0.9])
def test_dcs_near_pi_is_continuous(rho_L):
    delta = 1e-6
    at_pi = classical.dcs_classical(math.pi, rho_L)
    lo = classical.dcs_classical(math.pi - delta, rho_L)
    hi = classical.dcs_classical(math.pi + delta, rho_L)
    assert abs(0.5 * (lo + hi) - at_pi) < 1e-9
    assert abs(lo - naive_dcs_plus(math.pi - delta, rho_L)) < 1e-9


@pytest.mark.parametrize('theta', [0.3, 1.7, 3.0, 4.4, 6.0])
def test_dcs_matches_naive_derivative(theta):
    got = classical.dcs_classical(theta, 0.6)
    assert got == pytest.approx(naive_dcs_plus(theta, 0.6), rel=1e-12)


def test_dcs_negative_rho_is_mirror():
    for theta in (0.2, 1.0, 2.5, 4.0, 5.9):
        assert classical.dcs_classical(theta, -0.4) == \
            classical.dcs_classical(TWO_PI - theta, 0.4)


def test_dcs_rejects_domain():
    with pytest.raises(ValueError):
        classical.dcs_classical(TWO_PI, 0.5)
    with pytest.raises(ValueError):
        classical.dcs_classical(-0.1, 0.5)
    with pytest.raises(ValueError):
        classical.dcs_classical(1.0, 0.0)


@pytest.mark.parametrize('rho_L', [0.1, 0.5, 0.99, 1.0, 2.0, 10.0])
def test_total_cross_section_is_two(rho_L):
    assert classical.total_cross_section(rho_L) == pytest.approx(2.0,
                                                                 rel=1e-8)


@pytest.mark.parametrize('rho_L', [0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8,
                                   0.9])
def test_asymmetry_below_one(rho_L):
    rep = classical.asymmetry(rho_L)
    assert rep.A == pytest.approx(rho_L, abs=1e-8)
    assert rep.sigma_plus == pytest.approx(1 + rho_L, abs=1e-8)
    assert rep.sigma_minus == pytest.approx(1 - rho_L, abs=1e-8)


@pytest.mark.parametrize('rho_L', [1.0, 2.0, 10.0])
def test_asymmetry_above_one(rho_L):
    rep = classical.asymmetry(rho_L)
    assert rep.sigma_minus == 0.0
    assert rep.A == 1.0
    assert rep.sigma_total == pytest.approx(2.0, rel=1e-8)


@pytest.mark.parametrize('rho_L', [0.3, 0.9, 1.0, 3.0, -0.3, -2.0])
def test_asymmetry_analytic(rho_L):
    want = math.copysign(min(abs(rho_L), 1.0), rho_L)
    assert classical.asymmetry_analytic(rho_L) == want


def test_asymmetry_quadrature_failure(monkeypatch):
    monkeypatch.setattr(classical, 'QUAD_MAX_ERR', -1.0)
    with pytest.raises(classical.QuadratureError) as ei:
        classical.asymmetry(0.5)
    assert ei.value.requested == -1.0
    assert ei.value.achieved >= 0


@pytest.mark.parametrize('rho_L', [0.3, 0.8])
def test_cumulative_below_one(rho_L):
    assert classical.cumulative_cross_section(0.0, rho_L) == \
        pytest.approx(0.0, abs=1e-15)
    assert classical.cumulative_cross_section(math.pi, rho_L) == \
        pytest.approx(1 + rho_L, abs=1e-14)
    assert classical.cumulative_cross_section(TWO_PI, rho_L) == 2.0

    val, _ = integrate.quad(lambda t: classical.dcs_classical(t, rho_L),
                            0.0, 2.0, epsabs=1e-13, epsrel=1e-12)
    assert classical.cumulative_cross_section(2.0, rho_L) == \
        pytest.approx(val, rel=1e-9)


def test_cumulative_above_one():
    rho_L = 2.0
    th_max = classical.theta_max(rho_L)
    assert classical.cumulative_cross_section(0.0, rho_L) == \
        pytest.approx(0.0, abs=1e-15)
    # theta_max itself rounds; the slope there is infinite
    assert classical.cumulative_cross_section(th_max, rho_L) == \
        pytest.approx(2.0, abs=1e-7)
    assert classical.cumulative_cross_section(2.5, rho_L) == 2.0

    val, _ = integrate.quad(lambda t: classical.dcs_classical(t, rho_L),
                            0.0, 0.5, epsabs=1e-13, epsrel=1e-12)
    assert classical.cumulative_cross_section(0.5, rho_L) == \
        pytest.approx(val, rel=1e-9)


@pytest.mark.parametrize('theta', [0.5, 1.5, math.pi, 4.0, 6.0])
def test_low_energy_limit(theta):
    got = classical.dcs_classical(theta, 1e-9)
    assert got == pytest.approx(classical.dcs_low_energy_limit(theta),
                                abs=1e-8)


@pytest.mark.parametrize('theta', [1e-3, 5e-3, 1.5e-2])
def test_high_energy_approx(theta):
    rho_L = 100.0
    got = classical.dcs_classical(theta, rho_L)
    approx = classical.dcs_high_energy_approx(theta, rho_L)
    assert approx == pytest.approx(got, rel=1e-3)


def test_high_energy_approx_domain():
    with pytest.raises(ValueError):
        classical.dcs_high_energy_approx(0.03, 100.0)
    with pytest.raises(ValueError):
        classical.dcs_high_energy_approx(0.01, 0.5)
