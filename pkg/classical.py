#!/usr/bin/env python3
#
# (c) 2026 Yoichi Tanibayashi
#
"""
Classical scattering by the uniform field inside a solenoid

All lengths in units of the solenoid radius R.

  rho_b : impact parameter b/R in [-1, 1]
  rho_L : Larmor radius r_L/R

Sign convention: e*B > 0 bends the arc toward +y, i.e. the arc center is
C = r_i + rho_L * (0, 1).
"""
__author__ = 'Yoichi Tanibayashi'
__date__   = '2026'

import math
import warnings
from dataclasses import dataclass
from typing import Optional
from scipy import integrate
from MyLogger import get_logger

_log = get_logger(__name__, False)

TWO_PI = 2 * math.pi

QUAD_EPSABS = 1e-11
QUAD_EPSREL = 1e-11
QUAD_LIMIT = 200
QUAD_MAX_ERR = 1e-7


class QuadratureError(RuntimeError):
    def __init__(self, msg, achieved, requested):
        super().__init__('%s (achieved=%.3e, requested=%.3e)'
                         % (msg, achieved, requested))
        self.achieved = achieved
        self.requested = requested


@dataclass(frozen=True)
class BranchSolution:
    rho_b_plus: Optional[float]
    rho_b_minus: Optional[float]
    n_branches: int

    def branches(self):
        return [b for b in (self.rho_b_plus, self.rho_b_minus)
                if b is not None]


@dataclass(frozen=True)
class AsymmetryReport:
    sigma_plus: float
    sigma_minus: float
    sigma_total: float
    A: float
    abserr: float = 0.0


def larmor_radius(p, e, B, c=1.0):
    """ r_L = p c / (e B) """
    _log.debug('p=%s, e=%s, B=%s, c=%s', p, e, B, c)

    if e * B == 0:
        raise ValueError('e*B=0: straight line motion, infinite radius')
    return p * c / (e * B)


def scattering_angle(rho_b, rho_L):
    """
    theta(rho_b) = 2 atan2(sqrt(1 - rho_b^2), rho_b + rho_L) in [0, 2pi)
    """
    if abs(rho_b) > 1:
        raise ValueError('rho_b=%r: particle misses the solenoid' % (rho_b))
    if not rho_L > 0:
        raise ValueError('rho_L=%r: must be > 0' % (rho_L))

    theta = 2 * math.atan2(math.sqrt(1 - rho_b * rho_b), rho_b + rho_L)
    return math.fmod(theta, TWO_PI)


def theta_max(rho_L):
    """ sin(theta_max/2) = 1/rho_L """
    if not rho_L >= 1:
        raise ValueError('rho_L=%r: no maximum angle for rho_L < 1'
                         % (rho_L))
    return 2 * math.asin(1 / rho_L)


def impact_parameters(theta, rho_L):
    """
    rho_b(+-) = -rho_L sin^2(theta/2) +- cos(theta/2) sqrt(1 - rho_L^2 sin^2(theta/2))

    rho_L < 1 : '+' branch only, theta in [0, 2pi)
    rho_L >= 1: both branches for theta <= theta_max, none beyond
    """
    _log.debug('theta=%s, rho_L=%s', theta, rho_L)

    if not rho_L > 0:
        raise ValueError('rho_L=%r: must be > 0' % (rho_L))
    if not 0 <= theta < TWO_PI:
        raise ValueError('theta=%r: out of [0, 2pi)' % (theta))

    s = math.sin(theta / 2)
    c = math.cos(theta / 2)

    if rho_L < 1:
        root = math.sqrt(1 - (rho_L * s) ** 2)
        return BranchSolution(-rho_L * s * s + c * root, None, 1)

    if theta > theta_max(rho_L):
        return BranchSolution(None, None, 0)

    root = math.sqrt(max(0.0, (1 - rho_L * s) * (1 + rho_L * s)))
    base = -rho_L * s * s
    return BranchSolution(base + c * root, base - c * root, 2)


def _branch_slopes(s, c, cos_theta, rho_L, root):
    """
    |d rho_b(+-)/d theta| with sin(theta) = 2 s c already cancelled:

      |s| * |rho_L c +- (1 + rho_L^2 cos(theta)) / (2 root)|
    """
    k = (1 + rho_L * rho_L * cos_theta) / (2 * root)
    return abs(s) * abs(rho_L * c + k), abs(s) * abs(rho_L * c - k)


def dcs_classical(theta, rho_L):
    """
    Classical dsigma/dtheta in units of R.

    theta = pi with rho_L < 1 gives sqrt(1 - rho_L^2)/2.
    rho_L = 1 gives |sin theta| up to theta_max = pi, with no pole.
    rho_L > 1: theta = theta_max gives +inf, theta > theta_max gives 0.
    Negative rho_L (reversed charge) is the mirror image theta -> 2pi - theta.
    """
    if not 0 <= theta < TWO_PI:
        raise ValueError('theta=%r: out of [0, 2pi)' % (theta))
    if rho_L == 0 or not math.isfinite(rho_L):
        raise ValueError('rho_L=%r: must be finite and nonzero' % (rho_L))

    if rho_L < 0:
        return dcs_classical(math.fmod(TWO_PI - theta, TWO_PI), -rho_L)

    s = math.sin(theta / 2)
    c = math.cos(theta / 2)

    if rho_L < 1:
        root = math.sqrt(1 - (rho_L * s) ** 2)
        plus, _ = _branch_slopes(s, c, math.cos(theta), rho_L, root)
        return plus

    if rho_L == 1:
        # rho_b+ = cos theta, rho_b- pinned at -1
        return abs(math.sin(theta)) if theta <= math.pi else 0.0

    th_max = theta_max(rho_L)
    if theta > th_max:
        return 0.0
    if theta == th_max:
        return math.inf

    d = (1 - rho_L * s) * (1 + rho_L * s)
    if d <= 0:
        return math.inf
    plus, minus = _branch_slopes(s, c, math.cos(theta), rho_L,
                                 math.sqrt(d))
    return plus + minus


def _dcs_near_theta_max(u, rho_L):
    """
    dcs(theta_max - u^2) * 2u, the integrand after u = sqrt(theta_max - theta).

    1 - rho_L sin(theta/2) is rewritten as a product so the endpoint
    u -> 0 does not cancel.
    """
    th_max = theta_max(rho_L)
    theta = th_max - u * u
    s = math.sin(theta / 2)
    c = math.cos(theta / 2)

    one_minus = 2 * rho_L * math.cos((th_max / 2 + theta / 2) / 2) \
        * math.sin(u * u / 4)
    d = one_minus * (1 + rho_L * s)
    if d <= 0:
        # u == 0 exactly: limit of 2u/sqrt(d)
        return 0.0 if u == 0 else math.inf
    plus, minus = _branch_slopes(s, c, math.cos(theta), rho_L, math.sqrt(d))
    return (plus + minus) * 2 * u


def _quad(func, a, b, what):
    _log.debug('%s: [%s, %s]', what, a, b)

    with warnings.catch_warnings():
        warnings.simplefilter('error', integrate.IntegrationWarning)
        try:
            val, err = integrate.quad(func, a, b, epsabs=QUAD_EPSABS,
                                      epsrel=QUAD_EPSREL, limit=QUAD_LIMIT)
        except integrate.IntegrationWarning as e:
            _log.warning('%s:%s', type(e).__name__, e)
            val, err = integrate.quad(func, a, b, epsabs=QUAD_EPSABS,
                                      epsrel=QUAD_EPSREL, limit=QUAD_LIMIT)

    if err > QUAD_MAX_ERR:
        raise QuadratureError('%s: no convergence' % (what),
                              err, QUAD_MAX_ERR)
    return val, err


def asymmetry(rho_L):
    """
    sigma_+ over [0, pi), sigma_- over [pi, 2pi), A = (sigma_+ - sigma_-)/sigma

    Returns
    -------
    AsymmetryReport
    """
    _log.debug('rho_L=%s', rho_L)

    if not rho_L > 0:
        raise ValueError('rho_L=%r: must be > 0' % (rho_L))

    if rho_L < 1:
        def f(th):
            return dcs_classical(th, rho_L)

        sigma_plus, err_p = _quad(f, 0.0, math.pi, 'sigma_plus')
        sigma_minus, err_m = _quad(f, math.pi, TWO_PI, 'sigma_minus')
    else:
        th_max = theta_max(rho_L)
        sigma_plus, err_p = _quad(lambda u: _dcs_near_theta_max(u, rho_L),
                                  0.0, math.sqrt(th_max), 'sigma_plus')
        # identically zero beyond theta_max <= pi
        sigma_minus, err_m = 0.0, 0.0

    sigma = sigma_plus + sigma_minus
    report = AsymmetryReport(sigma_plus=sigma_plus,
                             sigma_minus=sigma_minus,
                             sigma_total=sigma,
                             A=(sigma_plus - sigma_minus) / sigma,
                             abserr=err_p + err_m)
    _log.debug('report=%s', report)
    return report


def total_cross_section(rho_L):
    """ always 2 (units of R) """
    return asymmetry(abs(rho_L)).sigma_total


def asymmetry_analytic(rho_L):
    """ A = rho_L for |rho_L| < 1, sign(rho_L) otherwise """
    if rho_L == 0:
        return 0.0
    return math.copysign(min(abs(rho_L), 1.0), rho_L)


def cumulative_cross_section(theta, rho_L):
    """
    F(theta): cross section (units of R) scattered into [0, theta).

    theta may be 2pi (F = 2).
    """
    if not rho_L > 0:
        raise ValueError('rho_L=%r: must be > 0' % (rho_L))
    if not 0 <= theta <= TWO_PI:
        raise ValueError('theta=%r: out of [0, 2pi]' % (theta))

    if theta == TWO_PI:
        return 2.0

    if rho_L < 1:
        # theta(rho_b) decreases monotonically from 2pi to 0
        return 1 - impact_parameters(theta, rho_L).rho_b_plus

    sol = impact_parameters(theta, rho_L)
    if sol.n_branches == 0:
        return 2.0
    return (sol.rho_b_minus + 1) + (1 - sol.rho_b_plus)


def dcs_low_energy_limit(theta):
    """ rho_L -> 0:  |sin(theta/2)| / 2 """
    if not 0 <= theta < TWO_PI:
        raise ValueError('theta=%r: out of [0, 2pi)' % (theta))
    return abs(math.sin(theta / 2)) / 2


def dcs_high_energy_approx(theta, rho_L):
    """ rho_L >> 1:  theta (1 + rho_L^2) / sqrt(4 - rho_L^2 theta^2) """
    if not rho_L >= 1:
        raise ValueError('rho_L=%r: must be >= 1' % (rho_L))
    if theta < 0:
        raise ValueError('theta=%r: must be >= 0' % (theta))

    x = (rho_L * theta) ** 2
    if x >= 4:
        raise ValueError('rho_L^2 theta^2=%r: outside approximation domain'
                         % (x))
    return theta * (1 + rho_L * rho_L) / math.sqrt(4 - x)
