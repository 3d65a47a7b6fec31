#!/usr/bin/env python3
#
# (c) 2026 Yoichi Tanibayashi
#
"""
Trajectory oracle for the classical cross section

  propagate_geometric()  exact chord-arc construction
  propagate_rk4()        adaptive RK4 integration of the Lorentz force
  mc_estimate_dcs()      Monte Carlo histogram of the scattering angle

Units: R = 1, |v| = 1, so the arc radius is rho_L and the
angular frequency is 1/rho_L.
"""
__author__ = 'Yoichi Tanibayashi'
__date__   = '2026'

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
import numpy as np
import classical
from MyLogger import get_logger

_log = get_logger(__name__, False)

TWO_PI = 2 * math.pi

# samples per RNG stream; fixed so results do not depend on worker count
MC_CHUNK = 1 << 20


class PropagationError(RuntimeError):
    def __init__(self, msg, partial):
        super().__init__(msg)
        self.partial = partial


@dataclass(frozen=True)
class Trajectory:
    r_i: tuple
    r_f: tuple
    arc_center: tuple
    theta: float
    n_steps: int = 0
    speed_drift: float = 0.0


@dataclass
class AngularDistribution:
    bin_edges: np.ndarray
    dcs_estimate: np.ndarray
    counts: np.ndarray
    std_error: np.ndarray
    n_upper: int
    n_samples: int
    seed: int
    rho_L: float = field(default=math.nan)

    @property
    def bin_width(self):
        return np.diff(self.bin_edges)

    def total(self):
        """ sum dcs * dtheta, 2 for a complete run """
        return float(np.sum(self.dcs_estimate * self.bin_width))

    def asymmetry(self):
        """
        Returns
        -------
        (A, std_error_of_A)

        q is the fraction of samples with theta < pi, independent of
        the binning.
        """
        q = self.n_upper / self.n_samples
        return 2 * q - 1, 2 * math.sqrt(q * (1 - q) / self.n_samples)

    def sigma_split(self):
        """
        Returns
        -------
        (sigma_plus, sigma_minus)   over [0, pi) and [pi, 2pi)
        """
        sigma_plus = 2.0 * self.n_upper / self.n_samples
        return sigma_plus, 2.0 - sigma_plus


def _exit_angles(rho_b, rho_L):
    """
    Vectorized exit angle from the arc geometry.

    P = r_f - C is the radius vector at the exit point; the velocity there
    is z x P / rho_L, so theta = atan2(P_x, -P_y).
    """
    rho_b = np.asarray(rho_b, dtype=float)
    w = np.sqrt(np.clip(1 - rho_b * rho_b, 0.0, None))
    den = 1 + 2 * rho_b * rho_L + rho_L * rho_L

    with np.errstate(invalid='ignore', divide='ignore'):
        x_f = w * (rho_L * rho_L - 1) / den
        y_f = rho_b - 2 * (rho_b - 1) * (rho_b + 1) * rho_L / den

    # grazing entry: the arc degenerates to the entry point
    grazing = w == 0
    x_f = np.where(grazing, -w, x_f)
    y_f = np.where(grazing, rho_b, y_f)

    p_x = x_f + w
    p_y = y_f - (rho_b + rho_L)
    theta = np.mod(np.arctan2(p_x, -p_y), TWO_PI)
    return x_f, y_f, theta


def propagate_geometric(rho_b, rho_L):
    """
    Returns
    -------
    Trajectory
    """
    _log.debug('rho_b=%s, rho_L=%s', rho_b, rho_L)

    if abs(rho_b) > 1:
        raise ValueError('rho_b=%r: particle misses the solenoid' % (rho_b))
    if not rho_L > 0:
        raise ValueError('rho_L=%r: must be > 0' % (rho_L))

    w = math.sqrt(1 - rho_b * rho_b)
    x_f, y_f, theta = _exit_angles(rho_b, rho_L)
    theta = float(theta)
    if theta >= TWO_PI:
        theta = 0.0
    return Trajectory(r_i=(-w, rho_b),
                      r_f=(float(x_f), float(y_f)),
                      arc_center=(-w, rho_b + rho_L),
                      theta=theta)


class LorentzRK4:
    """
    Adaptive RK4 for dv/dt = (1/rho_L) z x v inside the unit disk.

    Step doubling estimates the local error.  After each step the state is
    projected back onto the first integrals of the motion, |v| = 1 and the
    gyration center r + rho_L z x v, so only the phase along the arc is
    left to the integrator.  The exit point is located by bisecting the
    length of the last step down to H_MIN.
    """
    H_MIN = 1e-15
    MAX_STEPS = 10000000
    MAX_BISECT = 200

    _log = None

    def __init__(self, rho_L, tol=1e-11, debug=False):
        self._dbg = debug
        __class__._log = get_logger(__class__.__name__, self._dbg)
        self._log.debug('rho_L=%s, tol=%s', rho_L, tol)

        if not rho_L > 0:
            raise ValueError('rho_L=%r: must be > 0' % (rho_L))
        if not tol > 0:
            raise ValueError('tol=%r: must be > 0' % (tol))

        self._omega = 1.0 / rho_L
        self.rho_L = rho_L
        self.tol = tol
        self.h_max = 0.02 * min(1.0, rho_L)

    def _deriv(self, y):
        x, yy, vx, vy = y
        return (vx, vy, -self._omega * vy, self._omega * vx)

    def _step(self, y, h):
        k1 = self._deriv(y)
        k2 = self._deriv(tuple(a + 0.5 * h * b for a, b in zip(y, k1)))
        k3 = self._deriv(tuple(a + 0.5 * h * b for a, b in zip(y, k2)))
        k4 = self._deriv(tuple(a + h * b for a, b in zip(y, k3)))
        return tuple(a + h / 6.0 * (b1 + 2 * b2 + 2 * b3 + b4)
                     for a, b1, b2, b3, b4 in zip(y, k1, k2, k3, k4))

    def _double_step(self, y, h):
        """
        Returns
        -------
        (y_new, err)   Richardson-extrapolated state and error estimate
        """
        full = self._step(y, h)
        half = self._step(self._step(y, 0.5 * h), 0.5 * h)
        err = max(abs(a - b) for a, b in zip(full, half)) / 15.0
        y_new = tuple(b + (b - a) / 15.0 for a, b in zip(full, half))
        return y_new, err

    def _project(self, y, center):
        """
        unit speed, position on the circle of radius rho_L around center
        """
        _, _, vx, vy = y
        speed = math.hypot(vx, vy)
        ux, uy = vx / speed, vy / speed
        return (center[0] + self.rho_L * uy, center[1] - self.rho_L * ux,
                ux, uy)

    @staticmethod
    def _radius2(y):
        return y[0] * y[0] + y[1] * y[1]

    def _locate_exit(self, y, h, center):
        """
        y inside, step h ends outside: bisect h until |r| = 1
        """
        lo, hi = 0.0, h
        y_hi = self._project(self._double_step(y, hi)[0], center)
        for _ in range(self.MAX_BISECT):
            mid = 0.5 * (lo + hi)
            if hi - lo < self.H_MIN or not lo < mid < hi:
                break
            y_mid = self._project(self._double_step(y, mid)[0], center)
            if self._radius2(y_mid) < 1.0:
                lo = mid
            else:
                hi, y_hi = mid, y_mid
        return y_hi

    def propagate(self, rho_b):
        """
        Returns
        -------
        Trajectory
        """
        self._log.debug('rho_b=%s', rho_b)

        if abs(rho_b) > 1:
            raise ValueError('rho_b=%r: particle misses the solenoid'
                             % (rho_b))

        w = math.sqrt(1 - rho_b * rho_b)
        r_i = (-w, rho_b)
        center = (-w, rho_b + self.rho_L)
        if w == 0:
            return Trajectory(r_i=r_i, r_f=r_i, arc_center=center, theta=0.0)

        y = (-w, rho_b, 1.0, 0.0)
        # first step stays well inside the straight-line chord 2w
        h = min(self.h_max, 0.1 * w * min(1.0, self.rho_L))
        # the arc is back at the entry point after one period
        period = TWO_PI * self.rho_L
        s = 0.0
        n_steps = 0
        drift = 0.0

        while True:
            h = min(h, 0.5 * (period - s))
            if h < self.H_MIN or n_steps > self.MAX_STEPS:
                partial = self._trajectory(r_i, y, n_steps, drift)
                raise PropagationError('step size underflow (h=%.3e, '
                                       'steps=%d)' % (h, n_steps), partial)

            y_new, err = self._double_step(y, h)
            if err > self.tol:
                h *= max(0.1, 0.9 * (self.tol / err) ** 0.2)
                continue

            drift = max(drift, abs(math.hypot(y_new[2], y_new[3]) - 1.0))
            y_new = self._project(y_new, center)
            if self._radius2(y_new) >= 1.0:
                y = self._locate_exit(y, h, center)
                n_steps += 1
                break

            y = y_new
            s += h
            n_steps += 1
            if err == 0:
                h = min(self.h_max, 2 * h)
            else:
                h = min(self.h_max,
                        h * min(2.0, 0.9 * (self.tol / err) ** 0.2))

        traj = self._trajectory(r_i, y, n_steps, drift)
        self._log.debug('traj=%s', traj)
        return traj

    def _trajectory(self, r_i, y, n_steps, drift):
        x, yy, vx, vy = y
        speed = math.hypot(vx, vy)
        # center lies to the left of the velocity
        center = (x - self.rho_L * vy / speed, yy + self.rho_L * vx / speed)
        theta = math.atan2(vy, vx) % TWO_PI
        if theta >= TWO_PI:
            theta = 0.0
        return Trajectory(r_i=r_i, r_f=(x, yy), arc_center=center,
                          theta=theta, n_steps=n_steps, speed_drift=drift)


def propagate_rk4(rho_b, rho_L, tol=1e-11):
    return LorentzRK4(rho_L, tol).propagate(rho_b)


def _chunk_counts(seed, chunk_index, n, rho_L, n_bins):
    # counter-based stream: key = (seed, chunk index), counter from 0
    bitgen = np.random.Philox(key=(int(seed) << 64) | int(chunk_index))
    rng = np.random.Generator(bitgen)
    rho_b = rng.uniform(-1.0, 1.0, size=n)
    _, _, theta = _exit_angles(rho_b, rho_L)
    idx = np.minimum((theta * (n_bins / TWO_PI)).astype(np.int64),
                     n_bins - 1)
    n_upper = int(np.count_nonzero(theta < math.pi))
    return np.bincount(idx, minlength=n_bins), n_upper


def mc_estimate_dcs(rho_L, n_samples, n_bins, seed, workers=1):
    """
    Monte Carlo estimate of dsigma/dtheta.

    rho_b is uniform on [-1, 1]; each particle carries weight 2R/n.

    Returns
    -------
    AngularDistribution
    """
    _log.debug('rho_L=%s, n_samples=%s, n_bins=%s, seed=%s, workers=%s',
               rho_L, n_samples, n_bins, seed, workers)

    if n_samples < 1:
        raise ValueError('n_samples=%r: must be >= 1' % (n_samples))
    if n_bins < 8:
        raise ValueError('n_bins=%r: must be >= 8' % (n_bins))
    if not rho_L > 0:
        raise ValueError('rho_L=%r: must be > 0' % (rho_L))
    if not 0 <= seed < (1 << 64):
        raise ValueError('seed=%r: must be in [0, 2^64)' % (seed))

    chunks = []
    start = 0
    while start < n_samples:
        chunks.append(min(MC_CHUNK, n_samples - start))
        start += MC_CHUNK

    def run(i):
        return _chunk_counts(seed, i, chunks[i], rho_L, n_bins)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(run, range(len(chunks))))
    else:
        parts = [run(i) for i in range(len(chunks))]

    counts = np.sum([p[0] for p in parts], axis=0).astype(np.int64)
    n_upper = sum(p[1] for p in parts)
    edges = np.linspace(0.0, TWO_PI, n_bins + 1)
    width = np.diff(edges)
    scale = 2.0 / (n_samples * width)

    dist = AngularDistribution(bin_edges=edges,
                               dcs_estimate=counts * scale,
                               counts=counts,
                               std_error=np.sqrt(counts) * scale,
                               n_upper=n_upper,
                               n_samples=n_samples,
                               seed=seed,
                               rho_L=rho_L)
    _log.debug('total=%s', dist.total())
    return dist


def expected_bin_dcs(bin_edges, rho_L):
    """
    Bin-averaged analytic dsigma/dtheta from the cumulative cross section.
    """
    cum = np.array([classical.cumulative_cross_section(float(t), rho_L)
                    for t in bin_edges])
    return np.diff(cum) / np.diff(bin_edges)


def compare_with_analytic(dist, n_sigma=4.0):
    """
    Fraction of nonempty bins within n_sigma standard errors of the
    bin-averaged analytic DCS.
    """
    expected = expected_bin_dcs(dist.bin_edges, dist.rho_L)
    nonempty = dist.counts > 0
    dev = np.abs(dist.dcs_estimate - expected)[nonempty]
    ok = dev <= n_sigma * dist.std_error[nonempty]
    return float(np.mean(ok)), expected
