"""
Two-body propagation oracle (planar, mu = 1)

Universal-variable Kepler solver with Lagrange f and g coefficients, valid
for every conic type, plus first-integral extractors.
"""

import logging
import math
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from config_settings import SolverConfig
from core_errors import CollisionWithinInterval, NoConvergence, RectilinearState
from core_rectilinear import collision_leg_time
from utils_numerics import DEFAULT_CONFIG, Numerics

logger = logging.getLogger(__name__)

SERIES_BAND = 0.1
RADIAL_TOL = 1e-12
MAX_HYPERBOLIC_ARGUMENT = 700.0  # sqrt(-z) ceiling for cosh and sinh


@dataclass(frozen=True)
class KeplerState:
    pos: Tuple[float, float]
    vel: Tuple[float, float]

    @classmethod
    def from_arrays(cls, pos, vel) -> "KeplerState":
        return cls((float(pos[0]), float(pos[1])), (float(vel[0]), float(vel[1])))

    @property
    def r(self) -> np.ndarray:
        return np.asarray(self.pos, dtype=float)

    @property
    def v(self) -> np.ndarray:
        return np.asarray(self.vel, dtype=float)


def stumpff_c2(z: float) -> float:
    """C(z) = (1 - cos sqrt z) / z, series near zero"""
    if abs(z) < SERIES_BAND:
        term, total, k = 0.5, 0.0, 0
        while abs(term) > 1e-18:
            total += term
            term *= -z / ((2 * k + 3) * (2 * k + 4))
            k += 1
        return total
    if z > 0:
        return (1.0 - math.cos(math.sqrt(z))) / z
    return (math.cosh(math.sqrt(-z)) - 1.0) / (-z)


def stumpff_c3(z: float) -> float:
    """S(z) = (sqrt z - sin sqrt z) / z^1.5, series near zero"""
    if abs(z) < SERIES_BAND:
        term, total, k = 1.0 / 6.0, 0.0, 0
        while abs(term) > 1e-18:
            total += term
            term *= -z / ((2 * k + 4) * (2 * k + 5))
            k += 1
        return total
    if z > 0:
        sz = math.sqrt(z)
        return (sz - math.sin(sz)) / sz ** 3
    sz = math.sqrt(-z)
    return (math.sinh(sz) - sz) / sz ** 3


def energy(s: KeplerState) -> float:
    return 0.5 * float(s.v @ s.v) - 1.0 / float(np.linalg.norm(s.r))


def angular_momentum(s: KeplerState) -> float:
    x, y = s.pos
    vx, vy = s.vel
    return x * vy - y * vx


def eccentricity_vector(s: KeplerState) -> Tuple[float, float, float]:
    """(alpha, beta, gamma) with r = alpha x + beta y + gamma along the orbit"""
    x, y = s.pos
    vx, vy = s.vel
    r = math.hypot(x, y)
    c = angular_momentum(s)
    if abs(c) <= RADIAL_TOL * r * math.hypot(vx, vy):
        raise RectilinearState("zero angular momentum")
    return x / r - c * vy, y / r + c * vx, c * c


class KeplerPropagator:
    """Propagate planar two-body states for an arbitrary time"""

    def __init__(self, config: SolverConfig = DEFAULT_CONFIG):
        self.config = config

    def _check_collision(self, s: KeplerState, t: float) -> None:
        r0 = float(np.linalg.norm(s.r))
        h = energy(s)
        vr = float(s.r @ s.v) / r0
        leg = collision_leg_time(r0, h)

        falling = vr * t < 0.0 or vr == 0.0
        if falling:
            hit = leg
        elif h < 0.0:
            hit = 2.0 * math.pi * (-2.0 * h) ** -1.5 - leg
        else:
            return

        if abs(t) >= hit:
            raise CollisionWithinInterval(
                f"rectilinear state reaches O after {hit:.6g} (interval {t:.6g})"
            )

    @staticmethod
    def _unbounded_bracket(kepler, alpha: float, r0: float, t: float) -> Tuple[float, float]:
        """
        Bracket [span / 2, span] (mirrored for t < 0) on a parabolic or
        hyperbolic orbit, started from the logarithmic estimate when
        alpha < 0 and kept below the overflow of cosh
        """
        span = abs(t) / r0
        if alpha < 0.0:
            root_alpha = math.sqrt(-alpha)
            span = min(span, math.log(2.0 * (-alpha) ** 1.5 * abs(t) / r0 + 1.0) / root_alpha)
            limit = MAX_HYPERBOLIC_ARGUMENT / root_alpha
        else:
            limit = math.inf
        span = max(span, 1e-300)
        if span > limit:
            raise NoConvergence(f"universal anomaly beyond {limit:.6g} for t = {t:.6g}")

        def beyond(edge):
            return (kepler(math.copysign(edge, t))[0] > 0.0) == (t > 0.0)

        try:
            if beyond(span):
                while beyond(0.5 * span):
                    span *= 0.5
            else:
                while not beyond(span):
                    span *= 2.0
                    if span > limit:
                        raise NoConvergence(f"universal anomaly beyond {limit:.6g} for t = {t:.6g}")
        except OverflowError as e:
            raise NoConvergence(f"universal anomaly overflow for t = {t:.6g}") from e
        return (0.5 * span, span) if t > 0 else (-span, -0.5 * span)

    def propagate(self, s: KeplerState, t: float) -> KeplerState:
        """State after time t (t may be negative)"""
        if t == 0.0:
            return s

        r0_vec, v0_vec = s.r, s.v
        r0 = float(np.linalg.norm(r0_vec))
        v0 = float(np.linalg.norm(v0_vec))
        if abs(angular_momentum(s)) <= RADIAL_TOL * r0 * v0:
            self._check_collision(s, t)

        alpha = 2.0 / r0 - v0 * v0
        sigma = float(r0_vec @ v0_vec)  # r0 * radial velocity

        if alpha > RADIAL_TOL / r0:
            period = 2.0 * math.pi * alpha ** -1.5
            t_red = math.fmod(t, period)
            if t_red < 0.0:
                t_red += period
            if t_red == 0.0:
                return s
            lo, hi = 0.0, 2.0 * math.pi / math.sqrt(alpha)
        else:
            t_red = t
            lo, hi = 0.0, 0.0

        def kepler(chi):
            z = alpha * chi * chi
            c2, c3 = stumpff_c2(z), stumpff_c3(z)
            f = sigma * chi * chi * c2 + (1.0 - alpha * r0) * chi ** 3 * c3 + r0 * chi - t_red
            df = sigma * chi * (1.0 - z * c3) + (1.0 - alpha * r0) * chi * chi * c2 + r0
            return f, df

        start = None
        if hi == lo:
            lo, hi = self._unbounded_bracket(kepler, alpha, r0, t_red)
            start = hi if t_red > 0 else lo

        tol = self.config.kepler_tol
        try:
            chi, iterations = Numerics.safeguarded_newton(
                kepler, lo, hi, x0=start,
                ftol=tol * max(1.0, abs(t_red)),
                xtol=tol * max(1.0, abs(hi), abs(lo)),
                maxiter=self.config.kepler_maxiter,
            )
        except OverflowError as e:
            raise NoConvergence(f"universal anomaly overflow for t = {t:.6g}") from e
        logger.debug("Universal Kepler solved in %d iterations (chi=%.6g)", iterations, chi)

        z = alpha * chi * chi
        c2, c3 = stumpff_c2(z), stumpff_c3(z)
        f = 1.0 - chi * chi * c2 / r0
        g = t_red - chi ** 3 * c3
        r_vec = f * r0_vec + g * v0_vec
        r = float(np.linalg.norm(r_vec))
        fdot = chi * (z * c3 - 1.0) / (r * r0)
        gdot = 1.0 - chi * chi * c2 / r
        v_vec = fdot * r0_vec + gdot * v0_vec
        return KeplerState.from_arrays(r_vec, v_vec)


def propagate(s: KeplerState, t: float, config: SolverConfig = DEFAULT_CONFIG) -> KeplerState:
    return KeplerPropagator(config).propagate(s, t)
