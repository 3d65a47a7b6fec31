#!/usr/bin/env python3
#
# (c) 2026 Yoichi Tanibayashi
#
"""
Quantum differential cross sections of the solenoid

  dcs_ab()              zero radius exact solution (Aharonov-Bohm)
  dcs_ll_small_angle()  small angle, small flux form
  dcs_born()            relativistic first order Born approximation
  hbar_scan()           hbar -> 0 behaviour at fixed classical parameters
  hbar_power()          leading hbar power of the perturbative DCS

All cross sections are dsigma/dtheta in units of R, as functions of the
action variables s_p = pR/hbar and s_Phi = e Phi/(hbar c).
"""
__author__ = 'Yoichi Tanibayashi'
__date__   = '2026'

import math
import warnings
from dataclasses import dataclass
import numpy as np
import mpmath
from scipy import integrate
import classical
import params
from MyLogger import get_logger

_log = get_logger(__name__, False)

TWO_PI = 2 * math.pi

# |x| below: exact rational power series, above: Hankel expansion
BESSEL_SWITCH = 20.0
BESSEL_TERM_EPS = 1e-18
_INV_TERM_EPS = 10 ** 18

# 2 s_p |sin(theta/2)| from which the hbar -> 0 asymptotic form is trusted
ASYMPTOTIC_MIN_ARG = 10.0

ENVELOPE_NODES = 16

QUAD_EPSABS = 1e-13
QUAD_EPSREL = 1e-11
QUAD_LIMIT = 500
QUAD_MAX_REL_ERR = 1e-8


#
# Bessel functions
#
def _series(x, nu):
    """
    sum_k (-1)^k (x/2)^(2k+nu) / (k! (k+nu)!)

    Summed exactly over a common integer denominator; the alternating
    terms grow like I_nu(x) before they decay, which double precision
    cannot absorb.
    """
    n, d = float(x).as_integer_ratio()
    a = n * n
    b = 4 * d * d

    # term = num/den, sum = tot/den
    num = n ** nu
    den = (2 * d) ** nu * math.factorial(nu)
    tot = num
    k = 0
    while True:
        k += 1
        f = b * k * (k + nu)
        num = -num * a
        den *= f
        tot = tot * f + num
        if k > abs(x) / 2 and abs(num) * _INV_TERM_EPS < den:
            break
    # int / int is correctly rounded
    return tot / den


def _hankel(x, nu):
    """
    sqrt(2/(pi x)) (P cos(chi) - Q sin(chi)),  chi = x - (nu/2 + 1/4) pi

    x > 0.  The asymptotic series is cut at its smallest term.
    """
    mu = 4 * nu * nu
    p_sum = 1.0
    q_sum = 0.0
    term = 1.0
    k = 0
    while True:
        k += 1
        nxt = term * (mu - (2 * k - 1) ** 2) / (8 * k * x)
        if abs(nxt) >= abs(term) or abs(nxt) < BESSEL_TERM_EPS:
            break
        term = nxt
        # k odd -> Q, k even -> P, signs alternate within each
        sign = 1 if (k // 2) % 2 == 0 else -1
        if k % 2:
            q_sum += sign * term
        else:
            p_sum += sign * term

    chi = x - (nu / 2 + 0.25) * math.pi
    return math.sqrt(2 / (math.pi * x)) * (p_sum * math.cos(chi)
                                           - q_sum * math.sin(chi))


def _bessel(x, nu):
    if not math.isfinite(x):
        raise ValueError('x=%r: not finite' % (x))

    ax = abs(x)
    if ax <= BESSEL_SWITCH:
        val = _series(ax, nu)
    else:
        val = _hankel(ax, nu)

    if nu % 2 and x < 0:
        return -val
    return val


def bessel_j0(x):
    """ J_0(x), even """
    return _bessel(x, 0)


def bessel_j1(x):
    """
    J_1(x), odd.  Absolute error below 1e-10 for |x| <= 1e4.
    """
    return _bessel(x, 1)


def bessel_j1_reference(x, dps=50):
    """
    Direct power series of J_1 in extended precision (test oracle).
    """
    with mpmath.workdps(dps):
        xm = mpmath.mpf(x)
        half2 = (xm / 2) ** 2
        term = xm / 2
        total = term
        eps = mpmath.mpf(10) ** (-dps)
        k = 0
        while True:
            k += 1
            term = -term * half2 / (k * (k + 1))
            total += term
            if k > abs(xm) / 2 and abs(term) < eps:
                break
        return float(total)


#
# differential cross sections
#
@dataclass(frozen=True)
class QuantumDcsInput:
    theta: float
    s_p: float
    s_Phi: float

    def __post_init__(self):
        if not math.isfinite(self.theta):
            raise ValueError('theta=%r: not finite' % (self.theta))
        if self.theta == 0:
            raise ValueError('theta=0: forward divergence, '
                             'pass a theta_min regulator instead')
        if not 0 < self.theta < TWO_PI:
            raise ValueError('theta=%r: out of (0, 2pi)' % (self.theta))
        if not (self.s_p > 0 and math.isfinite(self.s_p)):
            raise ValueError('s_p=%r: must be > 0' % (self.s_p))
        if not math.isfinite(self.s_Phi):
            raise ValueError('s_Phi=%r: not finite' % (self.s_Phi))

    @property
    def folded_theta(self):
        """ theta folded into (0, pi]; exact for theta > pi """
        if self.theta <= math.pi:
            return self.theta
        return TWO_PI - self.theta

    @property
    def half_sin(self):
        """ |sin(theta/2)|, identical for theta and 2pi - theta """
        return math.sin(self.folded_theta / 2)


@dataclass(frozen=True)
class AsymptoticDcs:
    value: float
    in_regime: bool


def dcs_ab(inp):
    """
    sin^2(s_Phi/2) / (2 pi s_p sin^2(theta/2))
    """
    h = inp.half_sin
    # period 2pi in s_Phi; integer flux quanta give exactly 0
    sf = math.sin(math.remainder(inp.s_Phi, TWO_PI) / 2)
    return sf * sf / (2 * math.pi * inp.s_p * h * h)


def dcs_ll_small_angle(inp):
    """
    s_Phi^2 / (2 pi s_p theta^2), valid for small theta and small s_Phi
    """
    t = inp.folded_theta
    return inp.s_Phi ** 2 / (2 * math.pi * inp.s_p * t * t)


def dcs_born(inp):
    """
    (1/8pi) (s_Phi^2/s_p^3) (J_1(2 s_p |sin(theta/2)|) / sin^2(theta/2))^2
    """
    h = inp.half_sin
    j = bessel_j1(2 * inp.s_p * h) / (h * h)
    return inp.s_Phi ** 2 / (8 * math.pi * inp.s_p ** 3) * j * j


def dcs_born_hbar_asymptotic(inp):
    """
    Large 2 s_p |sin(theta/2)| form of dcs_born:

      (1/8pi^2) (s_Phi^2/s_p^4) cos^2(2 s_p|sin(theta/2)| - 3pi/4)
          / |sin(theta/2)|^5

    Returns
    -------
    AsymptoticDcs
    """
    h = inp.half_sin
    x = 2 * inp.s_p * h
    in_regime = x >= ASYMPTOTIC_MIN_ARG
    if not in_regime:
        _log.warning('2 s_p |sin(theta/2)|=%.3g < %s: outside asymptotic '
                     'regime', x, ASYMPTOTIC_MIN_ARG)

    c = math.cos(x - 0.75 * math.pi)
    val = inp.s_Phi ** 2 * c * c \
        / (8 * math.pi ** 2 * inp.s_p ** 4 * h ** 5)
    return AsymptoticDcs(value=val, in_regime=in_regime)


QUANTUM_DCS = {
    'ab': dcs_ab,
    'll': dcs_ll_small_angle,
    'born': dcs_born,
}


def _dcs_func(kind):
    try:
        return QUANTUM_DCS[kind]
    except KeyError:
        raise ValueError('kind=%r: one of %s'
                         % (kind, sorted(QUANTUM_DCS))) from None


def dcs(kind, theta, s_p, s_Phi):
    """ dispatch by name: 'ab', 'll' or 'born' """
    return _dcs_func(kind)(QuantumDcsInput(theta, s_p, s_Phi))


#
# hbar -> 0
#
@dataclass
class HbarScan:
    theta: float
    lambda_grid: np.ndarray
    dcs_values: np.ndarray
    envelope_values: np.ndarray
    fitted_slope: float
    classical_values: np.ndarray


def _j1_squared_average(x0):
    """
    mean of J_1(x)^2 over one period [x0 - pi/2, x0 + pi/2]
    """
    nodes, weights = np.polynomial.legendre.leggauss(ENVELOPE_NODES)
    xs = x0 + 0.5 * math.pi * nodes
    vals = np.array([bessel_j1(x) ** 2 for x in xs])
    return 0.5 * float(np.dot(weights, vals))


def check_lambda_grid(lambda_grid):
    lam = np.asarray(lambda_grid, dtype=float).ravel()
    if lam.size == 0 or not np.all(np.isfinite(lam)) or np.any(lam <= 0):
        raise ValueError('lambda_grid=%r: needs finite positive values'
                         % (lambda_grid,))
    lam = np.unique(lam)[::-1]
    if lam.size < 2:
        raise ValueError('lambda_grid=%r: needs at least 2 distinct values'
                         % (lambda_grid,))
    return lam


def fit_power_law(x, y):
    """
    Least squares slope of log(y) against log(x).

    Returns
    -------
    (slope, max_abs_residual)
    """
    lx = np.log(np.asarray(x, dtype=float))
    ly = np.log(np.asarray(y, dtype=float))
    coef = np.polyfit(lx, ly, 1)
    resid = ly - np.polyval(coef, lx)
    return float(coef[0]), float(np.max(np.abs(resid)))


def hbar_scan(phys, theta, lambda_grid, use_asymptotic=False):
    """
    dcs_born at hbar -> lambda * hbar, with e, p, R, Phi, theta fixed.

    The envelope removes the oscillation in 2 s_p |sin(theta/2)|:
    cos^2 -> 1/2 for the asymptotic form, otherwise J_1^2 is averaged over
    one local period.

    Returns
    -------
    HbarScan
    """
    _log.debug('phys=%s, theta=%s, use_asymptotic=%s',
               phys, theta, use_asymptotic)

    lam = check_lambda_grid(lambda_grid)

    dcs_vals = []
    env_vals = []
    cl_vals = []
    for lm in lam:
        d = params.to_dimensionless(params.scale_hbar(phys, float(lm)))
        inp = QuantumDcsInput(theta, d.s_p, d.s_Phi)
        h = inp.half_sin
        x0 = 2 * d.s_p * h
        pref = d.s_Phi ** 2 / (8 * math.pi * d.s_p ** 3 * h ** 4)

        if use_asymptotic:
            dcs_vals.append(dcs_born_hbar_asymptotic(inp).value)
            env_vals.append(pref / (math.pi * x0))
        else:
            dcs_vals.append(dcs_born(inp))
            env_vals.append(pref * _j1_squared_average(x0))

        # no hbar in rho_L
        cl_vals.append(classical.dcs_classical(theta, d.rho_L))

    slope, resid = fit_power_law(lam, env_vals)
    _log.debug('slope=%s, resid=%s', slope, resid)

    return HbarScan(theta=theta,
                    lambda_grid=lam,
                    dcs_values=np.array(dcs_vals),
                    envelope_values=np.array(env_vals),
                    fitted_slope=slope,
                    classical_values=np.array(cl_vals))


#
# hbar power counting
#
class HbarCounter:
    """
    Leading hbar power of each element of the perturbative series.

    The amplitude of order n_beta in the magnetic coupling has n_beta
    vertices and magnetic propagators, n_beta - 1 internal fermion lines
    and n_beta - 1 loop integrations.  Each radiative order in alpha adds
    a positive power.  The DCS is |M|^2 times the phase space factor.
    J_1 of an action variable counts as hbar^0.
    """
    ELEMENTS = {
        'vertex': -1,
        'magnetic_propagator': +2,
        'fermion_propagator': +1,
        'loop_measure': -2,
        'radiative_order': +1,
        'phase_space': -1,
    }

    _log = None

    def __init__(self, debug=False):
        self._dbg = debug
        __class__._log = get_logger(__class__.__name__, self._dbg)

    @staticmethod
    def _check(n_beta, n_alpha):
        if isinstance(n_beta, bool) or not isinstance(n_beta, int):
            raise ValueError('n_beta=%r: must be an integer' % (n_beta))
        if isinstance(n_alpha, bool) or not isinstance(n_alpha, int):
            raise ValueError('n_alpha=%r: must be an integer' % (n_alpha))
        if n_beta < 1:
            raise ValueError('n_beta=%r: no interaction' % (n_beta))
        if n_alpha < 0:
            raise ValueError('n_alpha=%r: must be >= 0' % (n_alpha))

    def counts(self, n_beta, n_alpha=0):
        """ number of each element in the amplitude """
        self._check(n_beta, n_alpha)
        return {
            'vertex': n_beta,
            'magnetic_propagator': n_beta,
            'fermion_propagator': n_beta - 1,
            'loop_measure': n_beta - 1,
            'radiative_order': n_alpha,
        }

    def amplitude_power(self, n_beta, n_alpha=0):
        counts = self.counts(n_beta, n_alpha)
        return sum(self.ELEMENTS[k] * n for k, n in counts.items())

    def dcs_power(self, n_beta, n_alpha=0):
        power = 2 * self.amplitude_power(n_beta, n_alpha) \
            + self.ELEMENTS['phase_space']
        self._log.debug('n_beta=%s, n_alpha=%s: power=%s',
                        n_beta, n_alpha, power)
        return power


def hbar_power(n_beta, n_alpha=0):
    return HbarCounter().dcs_power(n_beta, n_alpha)


#
# regulated total cross section
#
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

    requested = QUAD_MAX_REL_ERR * max(abs(val), QUAD_EPSABS)
    if err > requested:
        raise classical.QuadratureError('%s: no convergence' % (what),
                                        err, requested)
    return val, err


def _check_theta_min(theta_min):
    if not 0 < theta_min < math.pi:
        raise ValueError('theta_min=%r: out of (0, pi)' % (theta_min))


def ab_partial_total_closed_form(s_p, s_Phi, theta_min):
    """
    AB DCS integrated over [theta_min, 2pi - theta_min]:

      2 sin^2(s_Phi/2) cot(theta_min/2) / (pi s_p)
    """
    _check_theta_min(theta_min)
    sf = math.sin(math.remainder(s_Phi, TWO_PI) / 2)
    return 2 * sf * sf / (math.pi * s_p * math.tan(theta_min / 2))


def partial_total_cross_section(kind, s_p, s_Phi, theta_min):
    """
    Quantum DCS integrated over [theta_min, 2pi - theta_min] (units of R).
    Grows without bound as theta_min -> 0.
    """
    _log.debug('kind=%s, s_p=%s, s_Phi=%s, theta_min=%s',
               kind, s_p, s_Phi, theta_min)
    _check_theta_min(theta_min)
    rep = quantum_asymmetry(kind, s_p, s_Phi, theta_min)
    return rep.sigma_total


def quantum_asymmetry(kind, s_p, s_Phi, theta_min):
    """
    sigma_+ over [theta_min, pi), sigma_- over [pi, 2pi - theta_min].

    Returns
    -------
    classical.AsymmetryReport   A vanishes for every quantum DCS
    """
    _log.debug('kind=%s, s_p=%s, s_Phi=%s, theta_min=%s',
               kind, s_p, s_Phi, theta_min)
    _check_theta_min(theta_min)
    func = _dcs_func(kind)

    def f(th):
        return func(QuantumDcsInput(th, s_p, s_Phi))

    sigma_plus, err_p = _quad(f, theta_min, math.pi, 'sigma_plus')
    sigma_minus, err_m = _quad(f, math.pi, TWO_PI - theta_min, 'sigma_minus')
    sigma = sigma_plus + sigma_minus

    a = (sigma_plus - sigma_minus) / sigma if sigma > 0 else 0.0
    return classical.AsymmetryReport(sigma_plus=sigma_plus,
                                     sigma_minus=sigma_minus,
                                     sigma_total=sigma,
                                     A=a,
                                     abserr=err_p + err_m)
