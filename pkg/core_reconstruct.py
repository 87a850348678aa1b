"""
Conic reconstruction: from a solution parameter back to an initial state

In the chord frame (y_A = y_B >= 0) every conic through A and B reads
r = alpha x + beta y + gamma with alpha fixed by the triangle; beta follows
from the solution's beta-hat and gamma from the passage conditions.
"""

import logging
import math
from dataclasses import dataclass
from enum import IntEnum
from typing import List, Optional

import numpy as np
from scipy.spatial import ConvexHull

from config_settings import SolverConfig
from core_errors import (
    CollisionWithinInterval,
    DomainError,
    InconsistentSolution,
    NonpositiveLatus,
    RectilinearDegenerate,
)
from core_geometry import BoundaryProblem, Configuration, alpha, chord_frame
from core_maps import beta_hat
from core_propagator import KeplerPropagator, KeplerState, eccentricity_vector
from core_rectilinear import RectilinearArcQuery, arrival_velocity
from core_solver import ArcClass, ArcKind, LambertSolution, Tail
from utils_numerics import DEFAULT_CONFIG

logger = logging.getLogger(__name__)

VERIFY_TOL = 1e-8


class Orientation(IntEnum):
    CCW = 1
    CW = -1


@dataclass(frozen=True)
class ConicBranch:
    alpha: float
    beta: float
    gamma: float

    @property
    def eccentricity(self) -> float:
        return math.hypot(self.alpha, self.beta)

    @property
    def energy(self) -> float:
        return (self.alpha ** 2 + self.beta ** 2 - 1.0) / (2.0 * self.gamma)

    def radius(self, phi):
        """r at polar angle phi (chord frame)"""
        return self.gamma / (1.0 - self.alpha * np.cos(phi) - self.beta * np.sin(phi))


@dataclass
class ResidualRecord:
    state_index: int
    status: str  # ok | failed | skipped
    residual: Optional[float]
    swept_angle: Optional[float] = None
    note: str = ""


def conic_through(framed_a, framed_b, beta: float) -> ConicBranch:
    """Conic with ordinate beta of the eccentricity vector through A and B"""
    fa = np.asarray(framed_a, dtype=float)
    fb = np.asarray(framed_b, dtype=float)
    if abs(fa[1] - fb[1]) > 1e-12 * max(np.linalg.norm(fa), np.linalg.norm(fb)):
        raise DomainError("points are not in a chord frame (y_A != y_B)")
    a = alpha(fa, fb)
    total = np.linalg.norm(fa) + np.linalg.norm(fb)
    gamma = 0.5 * ((1.0 - a * a) * total - 2.0 * beta * fa[1])
    if not gamma > 0.0:
        raise NonpositiveLatus(f"beta = {beta} gives gamma = {gamma} <= 0")
    return ConicBranch(a, float(beta), float(gamma))


def direct_orientation(framed_a, framed_b) -> Orientation:
    """Sense in which the sweep from A to B is shorter than pi"""
    return Orientation.CCW if framed_a[0] > framed_b[0] else Orientation.CW


def swept_angle(framed_a, framed_b, orientation: Orientation) -> float:
    phi_a = math.atan2(framed_a[1], framed_a[0])
    phi_b = math.atan2(framed_b[1], framed_b[0])
    return (orientation * (phi_b - phi_a)) % (2.0 * math.pi)


def classify_arc(conic: ConicBranch, framed_a, framed_b, orientation: Orientation) -> ArcClass:
    """Direct iff the angle swept from A to B is below pi"""
    sweep = swept_angle(framed_a, framed_b, orientation)
    phi_mid = math.atan2(framed_a[1], framed_a[0]) + orientation * 0.5 * sweep
    if not conic.radius(phi_mid) > 0.0:
        raise DomainError("the sweep leaves the focal branch of the conic")
    return ArcClass.simple(Tail.DIRECT if sweep < math.pi else Tail.INDIRECT)


def arc_hull_contains_origin(conic: ConicBranch, framed_a, framed_b, orientation: Orientation,
                             samples: int = 256) -> bool:
    """Convex-hull test on sampled arc points"""
    phi_a = math.atan2(framed_a[1], framed_a[0])
    sweep = swept_angle(framed_a, framed_b, orientation)
    phi = phi_a + orientation * np.linspace(0.0, sweep, samples)
    r = conic.radius(phi)
    points = np.column_stack([r * np.cos(phi), r * np.sin(phi)])
    hull = ConvexHull(points)
    # facets are n.x + offset <= 0 inside; at x = O only the offsets remain
    return bool(np.all(hull.equations[:, -1] < -1e-12 * np.max(r)))


def _state_in_frame(framed_a, conic: ConicBranch, orientation: Orientation) -> np.ndarray:
    x, y = framed_a
    r = math.hypot(x, y)
    c = orientation * math.sqrt(conic.gamma)
    return np.array([(conic.beta - y / r) / c, (x / r - conic.alpha) / c])


class Reconstructor:
    """Initial states for solutions of a boundary problem"""

    def __init__(self, config: SolverConfig = DEFAULT_CONFIG):
        self.config = config
        self.propagator = KeplerPropagator(config)

    def _arrival_error(self, p: BoundaryProblem, state: KeplerState, tof: float) -> float:
        arrived = self.propagator.propagate(state, tof)
        return float(np.linalg.norm(arrived.r - p.b))

    def _radial_state(self, p: BoundaryProblem, sol: LambertSolution) -> KeplerState:
        """A and B on one ray: the arc is the rectilinear one itself"""
        unit = p.a / p.r_a
        if p.r_a >= p.r_b:
            speed = sol.va
        else:
            # time-reversed flat arc, started from its arrival
            q = RectilinearArcQuery(sol.re.xa, sol.re.xb, sol.va)
            speed = -arrival_velocity(q, indirect=sol.tail is Tail.INDIRECT)
        return KeplerState.from_arrays(p.a, speed * unit)

    def _collision_free(self, sol: LambertSolution) -> bool:
        return sol.arc_class.kind is ArcKind.DIRECT_SIMPLE

    def initial_states(self, p: BoundaryProblem, sol: LambertSolution) -> List[KeplerState]:
        """One state per planar arc: two mirror states when O lies on segment AB"""
        tof = sol.tof
        scale = max(p.r_a, p.r_b)
        tol = self.config.probe_tol * scale

        if p.configuration is Configuration.SAME_RAY:
            state = self._radial_state(p, sol)
            if self._collision_free(sol) and self._arrival_error(p, state, tof) > tol:
                raise InconsistentSolution("radial state misses B")
            return [state]

        rotation, fa, fb = chord_frame(p.a, p.b, p.collinear_tol)
        a = alpha(fa, fb)
        base = direct_orientation(fa, fb)
        orientation = base if sol.tail is Tail.DIRECT else Orientation(-base)
        beta = sol.beta_hat * math.sqrt(1.0 - a * a)

        def build(b, o):
            conic = conic_through(fa, fb, b)
            vel = rotation.T @ _state_in_frame(fa, conic, o)
            return KeplerState.from_arrays(p.a, vel)

        candidates = [(beta, orientation), (beta, Orientation(-orientation)),
                      (-beta, orientation), (-beta, Orientation(-orientation))]
        chosen = None
        for k, (b, o) in enumerate(candidates):
            try:
                state = build(b, o)
                error = self._arrival_error(p, state, tof)
            except (NonpositiveLatus, CollisionWithinInterval):
                continue
            if error <= tol:
                if k > 0:
                    logger.warning("Reconstruction needed sign fallback #%d (beta=%.6g, %s)", k, b, o.name)
                chosen = (b, o, state)
                break
            logger.debug("Candidate %d misses B by %.3e", k, error)

        if chosen is None:
            raise InconsistentSolution(f"no sign choice reaches B for {sol.arc_class}")

        b, o, state = chosen
        states = [state]
        if p.configuration is Configuration.OPPOSITE_RAYS:
            mirror = build(-b, Orientation(-o))
            if self._arrival_error(p, mirror, tof) > tol:
                raise InconsistentSolution("mirror arc misses B")
            states.append(mirror)
        return states

    def initial_state(self, p: BoundaryProblem, sol: LambertSolution) -> KeplerState:
        return self.initial_states(p, sol)[0]

    def beta_hat_of_solution(self, p: BoundaryProblem, sol: LambertSolution) -> float:
        """beta-hat read back from the reconstructed state"""
        if p.configuration is Configuration.SAME_RAY:
            raise RectilinearDegenerate("A and B on one ray: |alpha| = 1")
        state = self.initial_state(p, sol)
        rotation, _, _ = chord_frame(p.a, p.b, p.collinear_tol)
        framed = KeplerState.from_arrays(rotation @ state.r, rotation @ state.v)
        a, b, _ = eccentricity_vector(framed)
        return beta_hat(a, b)

    def accumulated_angle(self, state: KeplerState, tof: float, steps: int = 64) -> float:
        """Signed polar angle swept along the propagated trajectory"""
        times = np.linspace(0.0, tof, steps + 1)
        angles = []
        for t in times:
            s = self.propagator.propagate(state, float(t))
            angles.append(math.atan2(s.pos[1], s.pos[0]))
        unwrapped = np.unwrap(np.array(angles))
        return float(unwrapped[-1] - unwrapped[0])

    def verify_solution(self, p: BoundaryProblem, sol: LambertSolution) -> List[ResidualRecord]:
        """Arrival error of every emitted state, relative to r_A"""
        records = []
        states = self.initial_states(p, sol)
        for k, state in enumerate(states):
            if p.configuration is Configuration.SAME_RAY and not self._collision_free(sol):
                records.append(ResidualRecord(k, "skipped", None, note="rectilinear arc through O"))
                continue
            residual = self._arrival_error(p, state, sol.tof) / p.r_a
            sweep = None
            if p.configuration is not Configuration.SAME_RAY:
                sweep = self.accumulated_angle(state, sol.tof, steps=64 * (sol.revs + 1))
            status = "ok" if residual <= VERIFY_TOL else "failed"
            if status == "failed":
                logger.warning("Solution %s arrives %.3e r_A from B", sol.arc_class, residual)
            records.append(ResidualRecord(k, status, residual, sweep))
        return records
