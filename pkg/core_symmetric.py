"""
Symmetric (isosceles) time-of-flight functions of the signed eccentricity

A at polar angle theta_A, B at pi - theta_A, both at radius r; the conic is
r(theta) = C^2 / (1 - eta sin(theta)) with C^2 = r (1 - eta sin(theta_A)).
"""

import logging
import math
from dataclasses import dataclass

from config_settings import SolverConfig
from core_errors import DomainError
from core_geometry import symmetric_images
from core_maps import va_from_eta_indirect
from core_rectilinear import RectilinearArcQuery, tof_indirect
from utils_numerics import DEFAULT_CONFIG, Numerics

logger = logging.getLogger(__name__)

POLE_MARGIN = 1e-9


@dataclass(frozen=True)
class SymmetricArcQuery:
    r: float
    theta_a: float
    eta: float


def _check_shape(q: SymmetricArcQuery) -> None:
    if not q.r > 0:
        raise DomainError("r must be positive")
    if not 0.0 < q.theta_a < math.pi / 2:
        raise DomainError(f"theta_A must lie in (0, pi/2) (got {q.theta_a})")


def _check_direct(q: SymmetricArcQuery) -> None:
    _check_shape(q)
    if not q.eta <= 1.0 - POLE_MARGIN:
        raise DomainError(f"direct symmetric arcs need eta < 1 (got {q.eta})")


def _half_integral(q: SymmetricArcQuery, integrand, config: SolverConfig) -> float:
    # the integrand is symmetric about pi/2, where the pole approaches as eta -> 1
    return 2.0 * q.r ** 1.5 * Numerics.integrate(integrand, q.theta_a, math.pi / 2, config=config)


def tof_direct_symmetric(q: SymmetricArcQuery, config: SolverConfig = DEFAULT_CONFIG) -> float:
    _check_direct(q)
    eta, p = q.eta, math.sin(q.theta_a)
    a = (1.0 - eta * p) ** 1.5
    return _half_integral(q, lambda t: a / (1.0 - eta * math.sin(t)) ** 2, config)


def tof_direct_symmetric_deta(q: SymmetricArcQuery, config: SolverConfig = DEFAULT_CONFIG) -> float:
    """dT/d(eta), strictly positive"""
    _check_direct(q)
    eta, p = q.eta, math.sin(q.theta_a)
    root = math.sqrt(1.0 - eta * p)

    def integrand(t):
        s = math.sin(t)
        b = 1.0 - eta * s
        k = 0.5 * p * b + 2.0 * (s - p)
        return root * k / b ** 3

    return _half_integral(q, integrand, config)


def tof_direct_symmetric_d2eta(q: SymmetricArcQuery, config: SolverConfig = DEFAULT_CONFIG) -> float:
    """d2T/d(eta)2 as a sum of two non-negative terms"""
    _check_direct(q)
    eta, p = q.eta, math.sin(q.theta_a)
    a = 1.0 - eta * p
    root = math.sqrt(a)

    def integrand(t):
        s = math.sin(t)
        b = 1.0 - eta * s
        return 0.75 * p * p / (root * b * b) + 6.0 * root * s * (s - p) / b ** 4

    return _half_integral(q, integrand, config)


def tof_indirect_symmetric(q: SymmetricArcQuery, config: SolverConfig = DEFAULT_CONFIG) -> float:
    """Indirect time through the rectilinear image"""
    _check_shape(q)
    pole = 1.0 / math.sin(q.theta_a)
    if not -1.0 < q.eta < pole:
        raise DomainError(f"indirect symmetric arcs need -1 < eta < {pole} (got {q.eta})")
    re = symmetric_images(q.r, q.theta_a)
    va = va_from_eta_indirect(q.eta, re.xa, re.xb)
    return tof_indirect(RectilinearArcQuery(re.xa, re.xb, va), config)
