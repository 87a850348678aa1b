"""
Parameter transports between equivalent problems

Direct and indirect maps between the signed eccentricity eta of the
symmetric image and the initial velocity v_A of the rectilinear image,
energies in each formulation, and the universal parameter beta-hat.
"""

import logging
import math
from enum import Enum

from core_errors import DomainError
from core_rectilinear import energy as _rect_energy
from utils_numerics import Numerics

logger = logging.getLogger(__name__)

ILL_CONDITIONED = 1e-8  # denominator below this fraction of x_A + x_B
PARABOLIC_BAND = 1e-12


class ConicType(str, Enum):
    ELLIPTIC = "elliptic"
    PARABOLIC = "parabolic"
    HYPERBOLIC = "hyperbolic"


def _check_pair(xa: float, xb: float) -> None:
    if not (xa > 0 and 0 <= xb < xa):
        raise DomainError(f"need 0 <= x_B < x_A (got {xa}, {xb})")


def _denominator(eta: float, xa: float, xb: float) -> float:
    den = 0.5 * (xa + xb) - eta * math.sqrt(xa * xb)
    if not den > 0.0:
        raise DomainError(f"eta = {eta} at or beyond the pole {(xa + xb) / (2 * math.sqrt(xa * xb))}")
    return math.sqrt(den)


def va_from_eta_direct(eta: float, xa: float, xb: float) -> float:
    """Increasing and convex in eta"""
    _check_pair(xa, xb)
    return (eta - math.sqrt(xb / xa)) / _denominator(eta, xa, xb)


def va_from_eta_indirect(eta: float, xa: float, xb: float) -> float:
    """Decreasing and concave in eta on (-1, (x_A + x_B) / (2 sqrt(x_A x_B)))"""
    _check_pair(xa, xb)
    if not eta > -1.0:
        raise DomainError(f"indirect map needs eta > -1 (got {eta})")
    return (math.sqrt(xb / xa) - eta) / _denominator(eta, xa, xb)


def _energy_roots(va: float, xa: float, xb: float):
    """
    Both roots of eta^2 + 2 H s eta - 1 - H (x_A + x_B) = 0, s = sqrt(x_A x_B)

    sqrt(x_B / x_A) always lies between them; the larger root is computed
    without cancellation and the smaller one from the product.
    """
    h = _rect_energy(va, xa)
    s = math.sqrt(xa * xb)
    b = h * s
    product = -1.0 - h * (xa + xb)
    disc = math.sqrt(max(b * b - product, 0.0))
    if b <= 0.0:
        big = -b + disc
        small = product / big
    else:
        small = -b - disc
        big = product / small
    return small, big


def _refine(mapping, target: float, eta0: float, xa: float, xb: float, increasing: bool) -> float:
    # Brent on the monotone map when the radical form is ill-conditioned
    pole = (xa + xb) / (2.0 * math.sqrt(xa * xb))
    width = max(abs(pole - eta0), 1e-300) * 4.0
    lo, hi = eta0 - width, min(eta0 + width, pole * (1 - 1e-16))
    if not increasing:
        lo = max(lo, -1.0 + 1e-16)

    def residual(eta):
        return mapping(eta, xa, xb) - target

    try:
        return Numerics.bracketed_root(residual, lo, hi)
    except ValueError:
        logger.debug("No sign change around eta = %r; keeping analytic value", eta0)
        return eta0


def eta_from_va_direct(va: float, xa: float, xb: float) -> float:
    """Inverse of va_from_eta_direct"""
    _check_pair(xa, xb)
    ve = math.sqrt(2.0 / xa)
    if not va < ve:
        raise DomainError(f"direct inverse needs v_A < v_E = {ve}")
    if va == 0.0:
        return math.sqrt(xb / xa)

    small, big = _energy_roots(va, xa, xb)
    eta = small if va < 0.0 else big

    if xb > 0.0:
        den = 0.5 * (xa + xb) - eta * math.sqrt(xa * xb)
        if den < ILL_CONDITIONED * (xa + xb):
            eta = _refine(va_from_eta_direct, va, eta, xa, xb, increasing=True)
    return eta


def eta_from_va_indirect(va: float, xa: float, xb: float) -> float:
    """Inverse of va_from_eta_indirect"""
    _check_pair(xa, xb)
    ve = math.sqrt(2.0 / xa)
    if not va < ve:
        raise DomainError(f"indirect inverse needs v_A < v_E = {ve}")
    if va == 0.0:
        return math.sqrt(xb / xa)

    small, big = _energy_roots(va, xa, xb)
    eta = big if va < 0.0 else small

    if xb > 0.0:
        den = 0.5 * (xa + xb) - eta * math.sqrt(xa * xb)
        if den < ILL_CONDITIONED * (xa + xb):
            eta = _refine(va_from_eta_indirect, va, eta, xa, xb, increasing=False)
    return eta


def energy_rect(va: float, xa: float) -> float:
    if not xa > 0:
        raise DomainError("x_A must be positive")
    return _rect_energy(va, xa)


def energy_sym(eta: float, r: float, theta_a: float) -> float:
    den = 1.0 - eta * math.sin(theta_a)
    if not den > 0.0:
        raise DomainError(f"1 - eta sin(theta_A) must be positive (eta = {eta})")
    return (eta * eta - 1.0) / (2.0 * r * den)


def beta_hat(alpha: float, beta: float) -> float:
    if not abs(alpha) < 1.0:
        raise DomainError(f"beta-hat undefined for |alpha| = {abs(alpha)} >= 1")
    return beta / math.sqrt(1.0 - alpha * alpha)


def energy_from_beta_hat(beta_hat_value: float, sum_r: float, chord: float) -> float:
    if not 0 < chord <= sum_r:
        raise DomainError("need 0 < chord <= r_A + r_B")
    den = sum_r - beta_hat_value * math.sqrt(max(sum_r * sum_r - chord * chord, 0.0))
    if not den > 0.0:
        raise DomainError(f"beta-hat = {beta_hat_value} beyond the admissible range")
    return (beta_hat_value ** 2 - 1.0) / den


def conic_type(h: float, scale: float = 1.0) -> ConicType:
    """Classify an energy; |H| within PARABOLIC_BAND * scale counts as zero"""
    if abs(h) <= PARABOLIC_BAND * scale:
        return ConicType.PARABOLIC
    return ConicType.ELLIPTIC if h < 0 else ConicType.HYPERBOLIC


def second_focus_class(va: float) -> str:
    """Direct elliptic arcs: class of the arc seen from the empty focus"""
    return "direct" if va < 0.0 else "indirect"
