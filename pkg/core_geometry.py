"""
Problem representation, chord-aligned frames and the reduction of a
triangle (O, A, B) to its rectilinear and symmetric equivalents.

Everything here is in units with mu = 1.
"""

import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Tuple, Union

import numpy as np

from core_errors import CoincidentPoints, Degenerate, DomainError

logger = logging.getLogger(__name__)

COLLINEAR_TOL = 1e-12


class Configuration(str, Enum):
    """Relative position of O, A and B"""
    GENERAL = "general"
    OPPOSITE_RAYS = "opposite_rays"  # O on the open segment AB
    SAME_RAY = "same_ray"  # A and B on one ray from O


@dataclass(frozen=True)
class BoundaryProblem:
    """Endpoints relative to O and the elapsed time"""
    pos_a: Tuple[float, float]
    pos_b: Tuple[float, float]
    tof: Optional[float] = None
    collinear_tol: float = COLLINEAR_TOL

    def __post_init__(self):
        a, b = self.a, self.b
        if not (np.all(np.isfinite(a)) and np.all(np.isfinite(b))):
            raise DomainError("endpoints must be finite")
        if np.linalg.norm(a) == 0.0 or np.linalg.norm(b) == 0.0:
            raise CoincidentPoints("an endpoint coincides with the center O")
        if np.linalg.norm(a - b) <= self.collinear_tol * max(np.linalg.norm(a), np.linalg.norm(b)):
            raise CoincidentPoints("A and B coincide")
        if self.tof is not None and not self.tof > 0:
            raise DomainError("elapsed time must be positive")

    @property
    def a(self) -> np.ndarray:
        return np.asarray(self.pos_a, dtype=float)

    @property
    def b(self) -> np.ndarray:
        return np.asarray(self.pos_b, dtype=float)

    @property
    def r_a(self) -> float:
        return float(np.linalg.norm(self.a))

    @property
    def r_b(self) -> float:
        return float(np.linalg.norm(self.b))

    @property
    def chord(self) -> float:
        return float(np.linalg.norm(self.a - self.b))

    @property
    def transfer_angle(self) -> float:
        """Counterclockwise angle from A to B, in [0, 2*pi)"""
        a, b = self.a, self.b
        cross = a[0] * b[1] - a[1] * b[0]
        dot = float(a @ b)
        if self.configuration is Configuration.OPPOSITE_RAYS:
            return math.pi
        if self.configuration is Configuration.SAME_RAY:
            return 0.0
        return math.atan2(cross, dot) % (2 * math.pi)

    @property
    def configuration(self) -> Configuration:
        a, b = self.a, self.b
        cross = a[0] * b[1] - a[1] * b[0]
        if abs(cross) > self.collinear_tol * self.r_a * self.r_b:
            return Configuration.GENERAL
        return Configuration.OPPOSITE_RAYS if a @ b < 0 else Configuration.SAME_RAY

    def with_tof(self, tof: float) -> "BoundaryProblem":
        return BoundaryProblem(self.pos_a, self.pos_b, tof, self.collinear_tol)


@dataclass(frozen=True)
class RectilinearEquivalent:
    """Flat image of the triangle: 0 <= x_B < x_A with x_A + x_B = r_A + r_B and x_A - x_B = c"""
    xa: float
    xb: float

    def __post_init__(self):
        if not (self.xa > 0 and 0 <= self.xb < self.xa):
            raise DomainError(f"rectilinear equivalent needs 0 <= x_B < x_A (got {self.xa}, {self.xb})")

    @property
    def degenerate(self) -> bool:
        """O on the open segment AB"""
        return self.xb == 0.0

    @property
    def total(self) -> float:
        return self.xa + self.xb

    @property
    def chord(self) -> float:
        return self.xa - self.xb

    @property
    def geometric_mean(self) -> float:
        return math.sqrt(self.xa * self.xb)

    @property
    def q(self) -> float:
        """sqrt(x_B / x_A)"""
        return math.sqrt(self.xb / self.xa)

    @property
    def escape_velocity(self) -> float:
        return math.sqrt(2.0 / self.xa)


@dataclass(frozen=True)
class SymmetricEquivalent:
    """Isosceles image: r_A = r_B = r, A at angle theta_A and B at pi - theta_A"""
    r: float
    theta_a: float


@dataclass(frozen=True)
class LBVariables:
    """Scaled speed x = vA / vE and signed q = sqrt(xB / xA)"""
    x: float
    q_abs: float
    q_sign: int


def reduce_to_rectilinear(p: Union[BoundaryProblem, RectilinearEquivalent]) -> RectilinearEquivalent:
    """Flat triangle with the same chord and radius sum"""
    if isinstance(p, RectilinearEquivalent):
        return p

    total = p.r_a + p.r_b
    config = p.configuration
    if config is Configuration.OPPOSITE_RAYS:
        logger.debug("O on segment AB: x_B forced to 0")
        return RectilinearEquivalent(total, 0.0)
    if config is Configuration.SAME_RAY:
        return RectilinearEquivalent(max(p.r_a, p.r_b), min(p.r_a, p.r_b))

    # (r_A + r_B)^2 - c^2 = 2 r_A r_B (1 + cos theta), taken from the cross
    # product when theta is near pi so x_B keeps its relative precision
    a, b = p.a, p.b
    cross = float(a[0] * b[1] - a[1] * b[0])
    dot = float(a @ b)
    ab = p.r_a * p.r_b
    product = cross * cross / (ab - dot) if dot < 0.0 else ab + dot
    c = p.chord
    return RectilinearEquivalent(0.5 * (total + c), product / (total + c))


def reduce_to_symmetric(re: RectilinearEquivalent) -> SymmetricEquivalent:
    """Isosceles triangle with the same chord and radius sum"""
    if re.xb <= 0.0:
        raise Degenerate("symmetric equivalent undefined for x_B = 0")
    r = 0.5 * re.total
    theta_a = 2.0 * math.atan(re.q)
    return SymmetricEquivalent(r, theta_a)


def symmetric_images(r: float, theta_a: float) -> RectilinearEquivalent:
    """Inverse of reduce_to_symmetric"""
    if not (r > 0 and 0 < theta_a < math.pi / 2):
        raise DomainError("symmetric image needs r > 0 and 0 < theta_A < pi/2")
    return RectilinearEquivalent(r * (1 + math.cos(theta_a)), r * (1 - math.cos(theta_a)))


def chord_frame(pos_a, pos_b, collinear_tol: float = COLLINEAR_TOL) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    Rotation about O making the chord horizontal with y_A = y_B >= 0

    Returns (rotation, framed_a, framed_b); rotation is a proper 2x2 matrix
    applied as rotation @ pos. When O, A, B are collinear, A is placed at
    larger abscissa than B.
    """
    a = np.asarray(pos_a, dtype=float)
    b = np.asarray(pos_b, dtype=float)
    d = b - a
    length = np.linalg.norm(d)
    if length == 0.0:
        raise CoincidentPoints("chord frame undefined for A = B")

    e1 = d / length
    e2 = np.array([-e1[1], e1[0]])
    height = float(e2 @ a)

    # same test as BoundaryProblem.configuration: |a x b| = height * length
    collinear = abs(height) * length <= collinear_tol * np.linalg.norm(a) * np.linalg.norm(b)
    if height < 0 or collinear:
        e1, e2 = -e1, -e2

    rotation = np.vstack([e1, e2])
    framed_a = rotation @ a
    framed_b = rotation @ b

    y = 0.0 if collinear else 0.5 * (framed_a[1] + framed_b[1])
    framed_a[1] = framed_b[1] = abs(y)
    return rotation, framed_a, framed_b


def alpha(framed_a, framed_b) -> float:
    """Abscissa of the eccentricity vector shared by every conic through A and B"""
    fa = np.asarray(framed_a, dtype=float)
    fb = np.asarray(framed_b, dtype=float)
    return float((np.linalg.norm(fa) - np.linalg.norm(fb)) / (fa[0] - fb[0]))


def beta_upper_bound(framed_a, framed_b) -> float:
    """Supremum of beta keeping the semi-latus rectum positive"""
    fa = np.asarray(framed_a, dtype=float)
    fb = np.asarray(framed_b, dtype=float)
    y = fa[1]
    if y == 0.0:
        return math.inf
    a = alpha(fa, fb)
    total = np.linalg.norm(fa) + np.linalg.norm(fb)
    return float((1 - a * a) * total / (2 * y))


def lb_variables(va: float, re: RectilinearEquivalent, vb_sign: int) -> LBVariables:
    return LBVariables(x=va / re.escape_velocity, q_abs=re.q, q_sign=1 if vb_sign >= 0 else -1)


def problem_from_triangle(
    r_a: float,
    r_b: float,
    theta: Optional[float] = None,
    chord: Optional[float] = None,
    tof: Optional[float] = None,
    collinear_tol: float = COLLINEAR_TOL,
) -> BoundaryProblem:
    """Place A on the +x axis and B at counterclockwise angle theta"""
    if not (r_a > 0 and r_b > 0):
        raise DomainError("radii must be positive")
    if (theta is None) == (chord is None):
        raise DomainError("give exactly one of theta, chord")

    if chord is not None:
        if not abs(r_a - r_b) <= chord <= r_a + r_b:
            raise DomainError("chord violates the triangle inequality")
        cos_theta = (r_a * r_a + r_b * r_b - chord * chord) / (2 * r_a * r_b)
        theta = math.acos(min(1.0, max(-1.0, cos_theta)))
    elif not 0 <= theta < 2 * math.pi:
        raise DomainError("transfer angle must lie in [0, 2*pi)")

    pos_b = (r_b * math.cos(theta), r_b * math.sin(theta))
    return BoundaryProblem((r_a, 0.0), pos_b, tof, collinear_tol)


def problem_from_rectilinear(xa: float, xb: float, tof: Optional[float] = None,
                             collinear_tol: float = COLLINEAR_TOL) -> BoundaryProblem:
    """Flat representative: A and B on the +x ray"""
    RectilinearEquivalent(xa, xb)
    if xb == 0.0:
        raise DomainError("x_B = 0 has no flat representative; give the triangle instead")
    return BoundaryProblem((xa, 0.0), (xb, 0.0), tof, collinear_tol)
