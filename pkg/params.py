#!/usr/bin/env python3
#
# (c) 2026 Yoichi Tanibayashi
#
"""
Units, dimensionless parameters and conversions

Canonical internal units: R = 1, c = 1.
Physical inputs are Gaussian (esu, Gauss*cm^2, g*cm/s, cm, g, erg*s, cm/s).

  rho_L = r_L / R = p c / (e B0 R),  B0 = Phi / (pi R^2)
  s_p   = p R / hbar
  s_Phi = e Phi / (hbar c)
  s_m   = m c R / hbar
"""
__author__ = 'Yoichi Tanibayashi'
__date__   = '2026'

import math
import dataclasses
from dataclasses import dataclass
from MyLogger import get_logger

_log = get_logger(__name__, False)


def _check_finite(**kwargs):
    for name, val in kwargs.items():
        if not math.isfinite(val):
            raise ValueError('%s=%r: not finite' % (name, val))


@dataclass(frozen=True)
class PhysicalParams:
    """
    Physical description of one scattering setup (Gaussian units)

    e*Phi may carry either sign; the sign propagates to rho_L and s_Phi.
    """
    e: float
    Phi: float
    p: float
    R: float
    m: float = 0.0
    hbar: float = 1.0
    c: float = 1.0

    def __post_init__(self):
        _check_finite(e=self.e, Phi=self.Phi, p=self.p, R=self.R,
                      m=self.m, hbar=self.hbar, c=self.c)
        for name in ('R', 'p', 'c', 'hbar'):
            if getattr(self, name) <= 0:
                raise ValueError('%s=%r: must be > 0'
                                 % (name, getattr(self, name)))
        if self.m < 0:
            raise ValueError('m=%r: must be >= 0' % (self.m))

    @property
    def b_field(self):
        """ B0 = Phi / (pi R^2) """
        return self.Phi / (math.pi * self.R ** 2)

    @property
    def beta(self):
        """ magnetic coupling beta = e Phi / (2 pi c) """
        return self.e * self.Phi / (2 * math.pi * self.c)


@dataclass(frozen=True)
class DimensionlessParams:
    rho_L: float
    s_p: float
    s_Phi: float
    s_m: float = 0.0

    def __post_init__(self):
        _check_finite(rho_L=self.rho_L, s_p=self.s_p, s_Phi=self.s_Phi,
                      s_m=self.s_m)
        if self.s_p < 0:
            raise ValueError('s_p=%r: must be >= 0' % (self.s_p))

    @classmethod
    def from_actions(cls, s_p, s_Phi, s_m=0.0):
        """ rho_L = pi s_p / s_Phi """
        if s_Phi == 0:
            raise ValueError('s_Phi=0: rho_L undefined (no field)')
        return cls(rho_L=math.pi * s_p / s_Phi, s_p=s_p, s_Phi=s_Phi,
                   s_m=s_m)


@dataclass(frozen=True)
class DerivedLengths:
    """ all in units of R """
    larmor: float
    de_broglie: float
    magnetic_length: float


def to_dimensionless(phys):
    """
    Parameters
    ----------
    phys: PhysicalParams

    Returns
    -------
    DimensionlessParams
    """
    _log.debug('phys=%s', phys)

    eb = phys.e * phys.b_field
    if eb == 0:
        raise ValueError('e*B=0: Larmor radius is infinite')

    # rho_L carries no hbar
    rho_L = phys.p * phys.c / eb / phys.R

    d = DimensionlessParams(rho_L=rho_L,
                            s_p=phys.p * phys.R / phys.hbar,
                            s_Phi=phys.e * phys.Phi / (phys.hbar * phys.c),
                            s_m=phys.m * phys.c * phys.R / phys.hbar)
    _log.debug('d=%s', d)
    return d


def scale_hbar(phys, lam):
    """
    hbar -> lam * hbar, everything else unchanged
    """
    _log.debug('lam=%s', lam)

    if not (lam > 0 and math.isfinite(lam)):
        raise ValueError('lambda=%r: must be a finite positive number'
                         % (lam))
    return dataclasses.replace(phys, hbar=lam * phys.hbar)


def derived_lengths(d):
    """
    r_L = l_B^2 / lambdabar,  lambdabar = 1/s_p,  l_B = sqrt(pi/s_Phi)
    """
    _log.debug('d=%s', d)

    if d.s_Phi <= 0:
        raise ValueError('s_Phi=%r: magnetic length undefined' % (d.s_Phi))
    if d.s_p <= 0:
        raise ValueError('s_p=%r: de Broglie length undefined' % (d.s_p))

    de_broglie = 1.0 / d.s_p
    magnetic_length = math.sqrt(math.pi / d.s_Phi)
    return DerivedLengths(larmor=magnetic_length ** 2 / de_broglie,
                          de_broglie=de_broglie,
                          magnetic_length=magnetic_length)


def mass_term(phys, literal=False):
    """
    Mass entry of the second order propagator denominator.

    literal=False: s_m = m c R / hbar (dimensionless)
    literal=True:  m R c as printed, which still carries units of action
    """
    if literal:
        _log.warning('literal mass term m*R*c is not dimensionless')
        return phys.m * phys.R * phys.c
    return phys.m * phys.c * phys.R / phys.hbar


# (varied quantity, held fixed, direction of the limit, resulting rho_L)
RHO_L_LIMITS = (
    ('R', ('e', 'Phi'), 0.0, 0.0),
    ('R', ('e', 'Phi'), math.inf, math.inf),
    ('R', ('e', 'B'), 0.0, math.inf),
    ('e', ('R', 'B'), 0.0, math.inf),
    ('B', ('e', 'R'), 0.0, math.inf),
)


def rho_l_limits():
    """
    Limiting cases of rho_L at fixed p.

    Returns
    -------
    list[dict]
    """
    return [{'vary': vary, 'fixed': fixed, 'to': to, 'rho_L': rho}
            for vary, fixed, to, rho in RHO_L_LIMITS]
