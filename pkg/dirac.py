#!/usr/bin/env python3
#
# (c) 2026 Yoichi Tanibayashi
#
"""
Spinor amplitudes of the solenoid scattering

Dirac representation, metric diag(+1, -1, -1, -1).
Momenta are dimensionless (units of hbar/R); spinors are normalized to
ubar u = 1 and carry z-projection spin labels +1/-1.

  m1_dcs()             first order amplitude and its DCS
  m2_integrand()       integrand of the second order amplitude at one loop
                       momentum
  hbar_scaling_check() leading hbar power of the assembled amplitudes
"""
__author__ = 'Yoichi Tanibayashi'
__date__   = '2026'

import math
from dataclasses import dataclass, field
import numpy as np
import params
import quantum
from MyLogger import get_logger

_log = get_logger(__name__, False)

TWO_PI = 2 * math.pi

SPINS = (+1, -1)

ON_SHELL_RTOL = 1e-10

# -2i of the magnetic propagator rule
KERNEL_PHASE = -2j

SCALING_TOL = 0.02
SCALING_MAX_RESID = 1e-6

SIGMA = (
    np.array([[0, 1], [1, 0]], dtype=np.complex128),
    np.array([[0, -1j], [1j, 0]], dtype=np.complex128),
    np.array([[1, 0], [0, -1]], dtype=np.complex128),
)


class PoleProximityError(ValueError):
    def __init__(self, msg, distance):
        super().__init__('%s (distance=%.3e)' % (msg, distance))
        self.distance = distance


@dataclass(frozen=True)
class GammaAlgebra:
    gamma: tuple
    metric: np.ndarray

    @classmethod
    def dirac(cls):
        zero = np.zeros((2, 2), dtype=np.complex128)
        one = np.eye(2, dtype=np.complex128)
        g0 = np.block([[one, zero], [zero, -one]])
        gi = tuple(np.block([[zero, s], [-s, zero]]) for s in SIGMA)
        return cls(gamma=(g0,) + gi,
                   metric=np.diag([1.0, -1.0, -1.0, -1.0]))

    @property
    def identity(self):
        return np.eye(4, dtype=np.complex128)

    def anticommutator(self, mu, nu):
        a, b = self.gamma[mu], self.gamma[nu]
        return a @ b + b @ a

    def clifford_violations(self):
        """ (mu, nu) pairs where {g^mu, g^nu} != 2 g^{mu nu} """
        bad = []
        for mu in range(4):
            for nu in range(4):
                want = 2 * self.metric[mu, nu] * self.identity
                if not np.array_equal(self.anticommutator(mu, nu), want):
                    bad.append((mu, nu))
        return bad


GAMMA = GammaAlgebra.dirac()


def minkowski_dot(a, b):
    a = np.asarray(a)
    b = np.asarray(b)
    return a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3]


def slash(v):
    """
    v_mu gamma^mu = v^0 g^0 - v^1 g^1 - v^2 g^2 - v^3 g^3
    """
    v = np.asarray(v)
    if v.shape != (4,):
        raise ValueError('v=%r: needs 4 components' % (v,))
    if not np.all(np.isfinite(v)):
        raise ValueError('v=%r: not finite' % (v,))
    g = GAMMA.gamma
    return v[0] * g[0] - v[1] * g[1] - v[2] * g[2] - v[3] * g[3]


def _sigma_dot(p3):
    return p3[0] * SIGMA[0] + p3[1] * SIGMA[1] + p3[2] * SIGMA[2]


def _spin_state(s):
    if s == +1:
        return np.array([1, 0], dtype=np.complex128)
    if s == -1:
        return np.array([0, 1], dtype=np.complex128)
    raise ValueError('s=%r: spin label must be +1 or -1' % (s))


@dataclass
class Spinor:
    components: np.ndarray
    momentum: np.ndarray
    spin: int
    kind: str = 'u'

    def bar(self):
        """ psi^dagger gamma^0 """
        return self.components.conj() @ GAMMA.gamma[0]


def _check_on_shell(p, s_m):
    p = np.asarray(p, dtype=float)
    if p.shape != (4,):
        raise ValueError('p=%r: needs 4 components' % (p,))
    if not s_m > 0:
        raise ValueError('s_m=%r: spinors need a positive mass' % (s_m))
    if not p[0] > 0:
        raise ValueError('p^0=%r: must be > 0' % (p[0]))
    off = minkowski_dot(p, p) - s_m * s_m
    if abs(off) > ON_SHELL_RTOL * p[0] * p[0]:
        raise ValueError('p=%r: off shell by %.3e' % (p, off))
    return p


def _spinor_norm(p, s_m):
    return 1.0 / math.sqrt(2 * s_m * (p[0] + s_m))


def spinor_u(p, s, s_m):
    """
    Particle spinor ((E + m) chi, sigma.p chi) / sqrt(2m(E + m)).

    Returns
    -------
    Spinor
    """
    p = _check_on_shell(p, s_m)
    chi = _spin_state(s)
    upper = (p[0] + s_m) * chi
    lower = _sigma_dot(p[1:]) @ chi
    comp = np.concatenate([upper, lower]) * _spinor_norm(p, s_m)
    return Spinor(components=comp, momentum=p, spin=s, kind='u')


def spinor_v(p, s, s_m):
    """
    Antiparticle spinor (sigma.p eta, (E + m) eta) / sqrt(2m(E + m)),
    eta carrying the opposite z-projection.  vbar v = -1.
    """
    p = _check_on_shell(p, s_m)
    eta = _spin_state(-s)
    upper = _sigma_dot(p[1:]) @ eta
    lower = (p[0] + s_m) * eta
    comp = np.concatenate([upper, lower]) * _spinor_norm(p, s_m)
    return Spinor(components=comp, momentum=p, spin=s, kind='v')


@dataclass
class MagneticPropagator:
    """
    kernel * (V^1 g^1 + V^2 g^2),  V^j = eps_{ij3} q_i = (-q_2, q_1)
    """
    q_perp: tuple
    vector: tuple
    kernel: complex
    matrix: np.ndarray


def magnetic_propagator(q_perp, s_scale=1.0, j1_value=None):
    """
    -2i (hbar^2/R) J_1(|q| R/hbar) eps_{ij3} q_i gamma^j / |q|^3

    with R = 1 and s_scale = R/hbar, so hbar^2/R = 1/s_scale^2.
    s_scale = 1 is the dimensionless form in s_q.
    j1_value replaces J_1(|q| s_scale) (Bessel argument frozen).

    Returns
    -------
    MagneticPropagator
    """
    q1, q2 = (float(q) for q in q_perp)
    qn = math.hypot(q1, q2)
    if qn == 0:
        raise ValueError('q_perp=0: magnetic propagator is singular')
    if not s_scale > 0:
        raise ValueError('s_scale=%r: must be > 0' % (s_scale))

    j1 = quantum.bessel_j1(qn * s_scale) if j1_value is None else j1_value
    kernel = KERNEL_PHASE * j1 / (s_scale * s_scale * qn ** 3)
    vec = (-q2, q1)
    g = GAMMA.gamma
    mat = kernel * (vec[0] * g[1] + vec[1] * g[2])
    return MagneticPropagator(q_perp=(q1, q2), vector=vec, kernel=kernel,
                              matrix=mat)


def free_fermion_propagator(k, s_m, eps):
    """
    -i (k_slash - s_m + i eps)^-1 = -i (k_slash + M) / (k^2 - M^2),
    M = s_m - i eps
    """
    if not eps > 0:
        raise ValueError('eps=%r: must be > 0' % (eps))

    k = np.asarray(k, dtype=float)
    k2 = minkowski_dot(k, k)
    dist = abs(k2 - s_m * s_m)
    if dist < eps:
        raise PoleProximityError('k=%r: on the propagator pole' % (k,), dist)

    mass = s_m - 1j * eps
    return -1j * (slash(k) + mass * GAMMA.identity) / (k2 - mass * mass)


def planar_kinematics(theta, s_p, s_m):
    """
    p_i along +x, p_f rotated by theta in the x-y plane, |p| = s_p.

    Returns
    -------
    (p_i, p_f)
    """
    if not s_p > 0:
        raise ValueError('s_p=%r: must be > 0' % (s_p))
    if not s_m > 0:
        raise ValueError('s_m=%r: must be > 0' % (s_m))

    e = math.hypot(s_p, s_m)
    p_i = np.array([e, s_p, 0.0, 0.0])
    p_f = np.array([e, s_p * math.cos(theta), s_p * math.sin(theta), 0.0])
    return p_i, p_f


def _momentum_transfer(theta, s_p):
    # p_f - p_i without the cos(theta) - 1 cancellation
    s = math.sin(theta / 2)
    return (-2 * s_p * s * s, s_p * math.sin(theta))


@dataclass
class AmplitudeResult:
    theta: float
    s_p: float
    s_Phi: float
    amplitudes: dict
    mean_square: float
    dcs: float
    polarized: bool = False


def _m1_amplitudes(theta, s_p, s_Phi, s_m, j1_value=None):
    p_i, p_f = planar_kinematics(theta, s_p, s_m)
    prop = magnetic_propagator(_momentum_transfer(theta, s_p),
                               j1_value=j1_value)
    amps = {}
    for s_i in SPINS:
        u_i = spinor_u(p_i, s_i, s_m)
        for s_f in SPINS:
            u_f = spinor_u(p_f, s_f, s_m)
            amps[(s_i, s_f)] = complex(s_Phi * (u_f.bar() @ prop.matrix
                                                @ u_i.components))
    return amps


def _phase_space(s_p, s_m):
    """ |M|^2 -> dsigma/dtheta (units of R) for ubar u = 1 spinors """
    return s_m * s_m / (TWO_PI * s_p)


def _mean_square(amps, polarized, initial_spin):
    if polarized:
        return sum(abs(a) ** 2 for (s_i, _), a in amps.items()
                   if s_i == initial_spin)
    return 0.5 * sum(abs(a) ** 2 for a in amps.values())


def m1_dcs(theta, s_p, s_Phi, polarized=False, s_m=1.0, initial_spin=+1):
    """
    First order amplitude s_Phi ubar_f K(p_f - p_i) u_i and its DCS.

    polarized=False averages the initial spin; polarized=True fixes it to
    initial_spin.  Final spins are summed in both cases.

    Returns
    -------
    AmplitudeResult
    """
    _log.debug('theta=%s, s_p=%s, s_Phi=%s, polarized=%s, s_m=%s',
               theta, s_p, s_Phi, polarized, s_m)

    # same domain as the closed form
    quantum.QuantumDcsInput(theta, s_p, s_Phi)
    _spin_state(initial_spin)

    amps = _m1_amplitudes(theta, s_p, s_Phi, s_m)
    msq = _mean_square(amps, polarized, initial_spin)
    return AmplitudeResult(theta=theta, s_p=s_p, s_Phi=s_Phi,
                           amplitudes=amps, mean_square=msq,
                           dcs=_phase_space(s_p, s_m) * msq,
                           polarized=polarized)


def _transverse(v):
    v = np.asarray(v, dtype=float)
    if v.shape == (4,):
        return v[1], v[2]
    if v.shape == (2,):
        return v[0], v[1]
    raise ValueError('v=%r: needs 2 or 4 components' % (v,))


def _m2_value(s_q, s_pi, s_pf, s_m, spin_i, spin_f, s_Phi, eps,
              j1_pair=(None, None)):
    q1, q2 = _transverse(s_q)
    pi1, pi2 = _transverse(s_pi)
    pf1, pf2 = _transverse(s_pf)

    # internal line: energy conserved, no momentum along the axis
    k = np.array([s_pi[0], q1, q2, 0.0])
    inv = 1j * free_fermion_propagator(k, s_m, eps)

    prop_f = magnetic_propagator((pf1 - q1, pf2 - q2), j1_value=j1_pair[0])
    prop_i = magnetic_propagator((q1 - pi1, q2 - pi2), j1_value=j1_pair[1])

    u_i = spinor_u(s_pi, spin_i, s_m)
    u_f = spinor_u(s_pf, spin_f, s_m)
    inner = u_f.bar() @ prop_f.matrix @ inv @ prop_i.matrix @ u_i.components
    return complex((2 * s_Phi) ** 2 * inner / KERNEL_PHASE ** 2)


def m2_integrand(s_q, s_pi, s_pf, s_m, spin_i, spin_f, s_Phi, eps=1e-9):
    """
    Second order integrand at loop momentum s_q (dimensionless):

      (2 s_Phi)^2 ubar_f (V_f.g) (k_slash - s_m + i eps)^-1 (V_i.g) u_i
          * J_1(|k_f|) J_1(|k_i|) / (|k_f|^3 |k_i|^3)

    k_f = s_pf - s_q, k_i = s_q - s_pi (transverse), V^j = eps_{ij3} k_i,
    k = (E, s_q1, s_q2, 0).
    """
    _log.debug('s_q=%s, spin_i=%s, spin_f=%s', s_q, spin_i, spin_f)
    return _m2_value(s_q, s_pi, s_pf, s_m, spin_i, spin_f, s_Phi, eps)


@dataclass
class ScalingCheck:
    order_beta: int
    lambda_grid: np.ndarray
    dcs_values: np.ndarray
    ratio_values: np.ndarray
    dcs_exponent: float
    ratio_exponent: float
    residual: float
    expected_exponent: int = field(default=1)

    @property
    def passed(self):
        return (abs(self.dcs_exponent - self.expected_exponent)
                <= SCALING_TOL and self.residual <= SCALING_MAX_RESID)


def _default_phys():
    # s_p = 1, s_Phi = 0.01, s_m = 1 at lambda = 1
    return params.PhysicalParams(e=1.0, Phi=0.01, p=1.0, R=1.0, m=1.0)


def hbar_scaling_check(order_beta, lambda_grid, phys=None,
                       theta=math.pi / 2, eps=1e-9):
    """
    Rescale hbar -> lambda hbar at fixed e, p, R, Phi, c, m and fit the
    leading power of the assembled DCS.

    Bessel arguments stay at their lambda = 1 values.  Order 2 adds the
    second order amplitude at one loop point, fixed in physical momentum,
    times its cell of the loop measure.

    Returns
    -------
    ScalingCheck
    """
    _log.debug('order_beta=%s, lambda_grid=%s', order_beta, lambda_grid)

    if order_beta not in (1, 2):
        raise ValueError('order_beta=%r: must be 1 or 2' % (order_beta))
    if phys is None:
        phys = _default_phys()
    lam = quantum.check_lambda_grid(lambda_grid)

    d1 = params.to_dimensionless(phys)
    s_m1 = params.mass_term(phys)
    if not s_m1 > 0:
        raise ValueError('m=%r: the spinor assembly needs m > 0' % (phys.m))

    # Bessel values at lambda = 1
    qx, qy = _momentum_transfer(theta, d1.s_p)
    j1_m1 = quantum.bessel_j1(math.hypot(qx, qy))
    p_i1, p_f1 = planar_kinematics(theta, d1.s_p, s_m1)
    q_loop1 = 0.25 * (p_i1[1:3] + p_f1[1:3])
    j1_m2 = (quantum.bessel_j1(math.hypot(*(p_f1[1:3] - q_loop1))),
             quantum.bessel_j1(math.hypot(*(q_loop1 - p_i1[1:3]))))
    cell1 = 1.0

    dcs_vals = []
    ratio_vals = []
    for lm in lam:
        scaled = params.scale_hbar(phys, float(lm))
        d = params.to_dimensionless(scaled)
        s_m = params.mass_term(scaled)
        amps1 = _m1_amplitudes(theta, d.s_p, d.s_Phi, s_m, j1_value=j1_m1)

        p_i, p_f = planar_kinematics(theta, d.s_p, s_m)
        q_loop = q_loop1 / lm
        # d^2 s_q of a fixed physical cell scales as (R/hbar)^2
        cell = cell1 / (lm * lm)
        amps2 = {}
        for key in amps1:
            amps2[key] = cell * _m2_value(q_loop, p_i, p_f, s_m, key[0],
                                          key[1], d.s_Phi, eps,
                                          j1_pair=j1_m2)

        if order_beta == 1:
            total = amps1
        else:
            total = {k: amps1[k] + amps2[k] for k in amps1}
        dcs_vals.append(_phase_space(d.s_p, s_m)
                        * _mean_square(total, False, +1))

        n1 = math.sqrt(sum(abs(a) ** 2 for a in amps1.values()))
        n2 = math.sqrt(sum(abs(a) ** 2 for a in amps2.values()))
        ratio_vals.append(n2 / n1)

    dcs_exp, resid = quantum.fit_power_law(lam, dcs_vals)
    ratio_exp, ratio_resid = quantum.fit_power_law(lam, ratio_vals)
    resid = max(resid, ratio_resid)

    check = ScalingCheck(order_beta=order_beta,
                         lambda_grid=lam,
                         dcs_values=np.array(dcs_vals),
                         ratio_values=np.array(ratio_vals),
                         dcs_exponent=dcs_exp,
                         ratio_exponent=ratio_exp,
                         residual=resid,
                         expected_exponent=quantum.hbar_power(order_beta))
    if resid > SCALING_MAX_RESID:
        _log.warning('order %d: fit residual %.3e above %.1e',
                     order_beta, resid, SCALING_MAX_RESID)
    _log.debug('check=%s', check)
    return check
