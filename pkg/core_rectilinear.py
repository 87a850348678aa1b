"""
Rectilinear time-of-flight functions

Motion on a half-line through O (mu = 1), starting at x_A with velocity v_A
(positive = outward). The direct arc reaches x_B without touching O; the
indirect arc bounces elastically off O once. All times are functions of v_A.
"""

import logging
import math
from dataclasses import dataclass
from typing import Callable

from config_settings import SolverConfig
from core_errors import DegenerateDirect, DomainError, NonElliptic, TooCloseToEscape
from utils_numerics import DEFAULT_CONFIG, Numerics

logger = logging.getLogger(__name__)

SQRT2 = math.sqrt(2.0)
RADIAL_FORM_RATIO = 1e-2  # x_B / x_A below which integrals are taken in x


@dataclass(frozen=True)
class RectilinearArcQuery:
    xa: float
    xb: float
    va: float


def escape_velocity(xa: float) -> float:
    return math.sqrt(2.0 / xa)


def energy(va: float, xa: float) -> float:
    return 0.5 * va * va - 1.0 / xa


def x_of_u(u: float, q: RectilinearArcQuery) -> float:
    """Radius reached after the velocity has changed by u from v_A"""
    den = 1.0 / q.xa + q.va * u + 0.5 * u * u
    if den <= 0.0:
        raise DomainError(f"u = {u} lies past escape for this query")
    return 1.0 / den


def arrival_velocity(q: RectilinearArcQuery, indirect: bool = False) -> float:
    """Velocity at x_B: inbound for the direct arc, outbound after the bounce"""
    speed = math.sqrt(q.va * q.va + 2.0 / q.xb - 2.0 / q.xa) if q.xb > 0 else math.inf
    return speed if indirect else -speed


def _check(q: RectilinearArcQuery, config: SolverConfig) -> None:
    if not (q.xa > 0 and 0 <= q.xb < q.xa):
        raise DomainError(f"need 0 <= x_B < x_A (got {q.xa}, {q.xb})")
    if not math.isfinite(q.va):
        raise DomainError("v_A must be finite")
    ve = escape_velocity(q.xa)
    if q.va > ve * (1.0 - config.escape_margin):
        raise TooCloseToEscape(f"v_A = {q.va} within {config.escape_margin:g} v_E of escape (v_E = {ve})")


def _inbound_integral(x_top: float, v_top: float, xb: float, va: float,
                      g: Callable[[float, float], float], config: SolverConfig) -> float:
    """
    Integral of g(u, x) du along the inbound leg from x_top (velocity
    v_top <= 0) down to x_B, u = v - v_A

    Taken in x = x_B + (x_top - x_B)(1 - s^2) for s in [0, 1], so the range stays
    bounded when a small x_B makes the arrival speed, and the u-range, large.
    """
    span = x_top - xb

    def integrand(s):
        x = xb + span * (1.0 - s) * (1.0 + s)
        speed = math.sqrt(v_top * v_top + 2.0 * span * s * s / (x * x_top))
        if s > 0.0:
            w = v_top / s
            ratio = 2.0 * span / math.sqrt(w * w + 2.0 * span / (x * x_top))
        else:
            ratio = 0.0 if v_top != 0.0 else math.sqrt(2.0 * span) * x_top
        return g(-speed - va, x) * ratio / (x * x)

    return Numerics.integrate(integrand, 0.0, 1.0, config=config)


def _noncrossing_integral(xa: float, xb: float, va: float, power: int, config: SolverConfig) -> float:
    # integral of x(u)**power over u in [v_B - v_A, 0], v_A <= 0
    if xb < RADIAL_FORM_RATIO * xa:
        return _inbound_integral(xa, va, xb, va, lambda u, x: x ** power, config)
    vb = -math.sqrt(va * va + 2.0 / xb - 2.0 / xa)
    inv_xa = 1.0 / xa
    return Numerics.integrate(
        lambda u: (inv_xa + va * u + 0.5 * u * u) ** (-power),
        vb - va, 0.0, config=config,
    )


def _radial_integral(x_end: float, h: float, power: int, config: SolverConfig) -> float:
    """
    Integral of x**power / sqrt(2H + 2/x) for x in [0, x_end]

    power = 0 gives the fall time from x_end to O. The endpoint singularity at
    the apex (H < 0, x_end = -1/H) is removed by x = x_max sin^2 s, the one
    at O by x = x_end w^2.
    """
    if x_end == 0.0:
        return 0.0

    if h < 0.0:
        x_max = -1.0 / h
        s_end = math.asin(min(1.0, math.sqrt(x_end / x_max)))
        coef = SQRT2 * x_max ** 1.5

        def integrand(s):
            sin2 = math.sin(s) ** 2
            return coef * sin2 * (x_max * sin2) ** power

        return Numerics.integrate(integrand, 0.0, s_end, config=config)

    coef = 2.0 * x_end ** 1.5

    def integrand(w):
        w2 = w * w
        return coef * w2 * (x_end * w2) ** power / math.sqrt(2.0 * h * x_end * w2 + 2.0)

    return Numerics.integrate(integrand, 0.0, 1.0, config=config)


def fall_time(x_end: float, h: float, config: SolverConfig = DEFAULT_CONFIG) -> float:
    """Time from x_end straight to O at energy h (quadrature)"""
    return _radial_integral(x_end, h, 0, config)


def _series_e_minus_sin(e: float) -> float:
    # E - sin E, accurate for small E
    if e > 0.1:
        return e - math.sin(e)
    e2 = e * e
    term, total, k = e * e2 / 6.0, 0.0, 3
    while abs(term) > 1e-18 * abs(total + term):
        total += term
        term *= -e2 / ((k + 1) * (k + 2))
        k += 2
    return total + term


def _series_sinh_minus(f: float) -> float:
    # sinh F - F, accurate for small F
    if f > 0.1:
        return math.sinh(f) - f
    f2 = f * f
    term, total, k = f * f2 / 6.0, 0.0, 3
    while abs(term) > 1e-18 * abs(total + term):
        total += term
        term *= f2 / ((k + 1) * (k + 2))
        k += 2
    return total + term


def collision_leg_time(x_end: float, h: float) -> float:
    """Time from x_end straight to O at energy h (closed form)"""
    if x_end <= 0.0:
        return 0.0
    if h < 0.0:
        a = -1.0 / (2.0 * h)
        if x_end > 2.0 * a * (1 + 1e-12):
            raise DomainError("radius beyond the apex of the radial orbit")
        ecc_anomaly = math.acos(max(-1.0, 1.0 - x_end / a))
        return a ** 1.5 * _series_e_minus_sin(ecc_anomaly)
    if h == 0.0:
        return SQRT2 / 3.0 * x_end ** 1.5
    a = 1.0 / (2.0 * h)
    hyp_anomaly = math.acosh(1.0 + x_end / a)
    return a ** 1.5 * _series_sinh_minus(hyp_anomaly)


def period(va: float, xa: float) -> float:
    h = energy(va, xa)
    if h >= 0.0:
        raise NonElliptic(f"no period for H = {h} >= 0")
    return 2.0 * math.pi * (-2.0 * h) ** -1.5


def period_derivative(va: float, xa: float) -> float:
    h = energy(va, xa)
    if h >= 0.0:
        raise NonElliptic(f"no period for H = {h} >= 0")
    return 6.0 * math.pi * va * (-2.0 * h) ** -2.5


def period_second_derivative(va: float, xa: float) -> float:
    h = energy(va, xa)
    if h >= 0.0:
        raise NonElliptic(f"no period for H = {h} >= 0")
    m = -2.0 * h
    return 6.0 * math.pi * m ** -2.5 + 30.0 * math.pi * va * va * m ** -3.5


def _direct_noncrossing(xa: float, xb: float, va: float, config: SolverConfig) -> float:
    # v_A <= 0: T = integral of x(u)^2 over [v_B - v_A, 0]
    return _noncrossing_integral(xa, xb, va, 2, config)


def _direct_noncrossing_derivative(xa: float, xb: float, va: float, config: SolverConfig) -> float:
    vb = -math.sqrt(va * va + 2.0 / xb - 2.0 / xa)
    inv_xa = 1.0 / xa
    if xb < RADIAL_FORM_RATIO * xa:
        moment = _inbound_integral(xa, va, xb, va, lambda u, x: u * x ** 3, config)
    else:
        moment = Numerics.integrate(
            lambda u: u / (inv_xa + va * u + 0.5 * u * u) ** 3,
            vb - va, 0.0, config=config,
        )
    return -xb * xb * (va / vb - 1.0) - 2.0 * moment


def tof_direct(q: RectilinearArcQuery, config: SolverConfig = DEFAULT_CONFIG) -> float:
    """
    Time from x_A to x_B without collision

    For v_A > 0 the body first culminates; that stretch is evaluated as a
    full period minus two fall times, then the inbound part as for -v_A.
    """
    _check(q, config)
    if q.xb == 0.0:
        raise DegenerateDirect("direct time undefined for x_B = 0")

    if q.va <= 0.0:
        return _direct_noncrossing(q.xa, q.xb, q.va, config)

    h = energy(q.va, q.xa)
    excursion = period(q.va, q.xa) - 2.0 * fall_time(q.xa, h, config)
    return excursion + _direct_noncrossing(q.xa, q.xb, -q.va, config)


def tof_direct_derivative(q: RectilinearArcQuery, config: SolverConfig = DEFAULT_CONFIG) -> float:
    """dT/dv_A of the direct arc (strictly positive)"""
    _check(q, config)
    if q.xb == 0.0:
        raise DegenerateDirect("direct time undefined for x_B = 0")

    if q.va <= 0.0:
        return _direct_noncrossing_derivative(q.xa, q.xb, q.va, config)

    h = energy(q.va, q.xa)
    moment = _radial_integral(q.xa, h, 1, config)
    return (
        period_derivative(q.va, q.xa)
        + 2.0 * q.xa * q.xa
        - 4.0 * q.va * moment
        - _direct_noncrossing_derivative(q.xa, q.xb, -q.va, config)
    )


def tof_direct_second_derivative(q: RectilinearArcQuery, config: SolverConfig = DEFAULT_CONFIG) -> float:
    """d2T/dv_A2 of the direct arc (strictly positive)"""
    _check(q, config)
    if q.xb == 0.0:
        raise DegenerateDirect("direct time undefined for x_B = 0")

    xa, xb, va = q.xa, q.xb, q.va
    vb = -math.sqrt(va * va + 2.0 / xb - 2.0 / xa)
    inv_xa = 1.0 / xa

    def weight(u):
        return u * u / (inv_xa + va * u + 0.5 * u * u) ** 4

    if xb < RADIAL_FORM_RATIO * xa:
        if va > 0:
            # outbound to the culmination at u = -v_A, then inbound from the apex
            apex = -1.0 / energy(va, xa)
            integral = Numerics.integrate(weight, -va, 0.0, config=config)
            integral += _inbound_integral(apex, 0.0, xb, va, lambda u, x: u * u * x ** 4, config)
        else:
            integral = _inbound_integral(xa, va, xb, va, lambda u, x: u * u * x ** 4, config)
    else:
        # culmination (v = 0) sits at u = -v_A
        points = [-va] if va > 0 else None
        integral = Numerics.integrate(weight, vb - va, 0.0, points=points, config=config)
    boundary = -xb * xb * (vb * vb - va * va) / vb ** 3 + 2.0 * xb ** 3 * (vb - va) * (va - vb) / vb
    return boundary + 6.0 * integral


def tof_indirect(q: RectilinearArcQuery, config: SolverConfig = DEFAULT_CONFIG) -> float:
    """
    Time from x_A to x_B with one elastic bounce at O

    v_A < 0: fall to O, then climb to x_B. v_A >= 0: the body culminates
    first, so the time is a period minus the direct time for -v_A.
    """
    _check(q, config)
    h = energy(q.va, q.xa)
    if q.va < 0.0:
        return fall_time(q.xa, h, config) + fall_time(q.xb, h, config)

    if q.xb == 0.0:
        return period(q.va, q.xa) - fall_time(q.xa, h, config)
    return period(q.va, q.xa) - _direct_noncrossing(q.xa, q.xb, -q.va, config)


def tof_indirect_derivative(q: RectilinearArcQuery, config: SolverConfig = DEFAULT_CONFIG) -> float:
    """dT/dv_A of the simple indirect arc"""
    _check(q, config)
    xa, xb, va = q.xa, q.xb, q.va
    h = energy(va, xa)

    if va < 0.0:
        value = xa * xa + 2.0 * va * _radial_integral(xa, h, 1, config)
        if xb > 0.0:
            wb = arrival_velocity(q, indirect=True)
            value += -va * xb * xb / wb + 2.0 * va * _radial_integral(xb, h, 1, config)
        return value

    if xb == 0.0:
        return period_derivative(va, xa) + xa * xa - 2.0 * va * _radial_integral(xa, h, 1, config)
    return period_derivative(va, xa) + _direct_noncrossing_derivative(xa, xb, -va, config)


def flat_ellipse_time(xa: float, xb: float, va: float) -> float:
    """Direct time from eccentric anomalies of the radial ellipse (closed form)"""
    h = energy(va, xa)
    if h >= 0.0:
        raise NonElliptic("closed form needs H < 0")
    a = -1.0 / (2.0 * h)

    def anomaly(x):
        return math.acos(max(-1.0, min(1.0, 1.0 - x / a)))

    def kepler_time(e):
        return a ** 1.5 * (e - math.sin(e))

    e_a = anomaly(xa) if va > 0 else 2.0 * math.pi - anomaly(xa)
    e_b = 2.0 * math.pi - anomaly(xb)
    return kepler_time(e_b) - kepler_time(e_a)


def parabolic_times(xa: float, xb: float):
    """Zero-energy (direct, indirect) times"""
    k = SQRT2 / 3.0
    return k * (xa ** 1.5 - xb ** 1.5), k * (xa ** 1.5 + xb ** 1.5)


def indirect_convexity_defect(xa: float, xb: float, step: float = 1e-3,
                              config: SolverConfig = DEFAULT_CONFIG) -> float:
    """Second central difference of the indirect time at v_A = 0"""
    def t(v):
        return tof_indirect(RectilinearArcQuery(xa, xb, v), config)
    return (t(step) - 2.0 * t(0.0) + t(-step)) / (step * step)
