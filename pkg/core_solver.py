"""
Lambert Solver Engine
Simple arcs, multi-revolution pairs and solution census on the rectilinear image
"""

import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, List, Optional, Tuple, Union

import numpy as np
import pandas as pd

from config_settings import SolverConfig
from core_errors import (
    DegenerateDirect,
    DomainError,
    NoConvergence,
    QuadratureFailure,
    SamplingInconclusive,
    TooCloseToEscape,
)
from core_geometry import BoundaryProblem, RectilinearEquivalent, reduce_to_rectilinear
from core_maps import ConicType, conic_type, eta_from_va_direct, eta_from_va_indirect, second_focus_class
from core_rectilinear import (
    RectilinearArcQuery,
    energy,
    period,
    period_derivative,
    period_second_derivative,
    tof_direct,
    tof_direct_derivative,
    tof_direct_second_derivative,
    tof_indirect,
    tof_indirect_derivative,
)
from utils_numerics import DEFAULT_CONFIG, Numerics

logger = logging.getLogger(__name__)

CERTIFIED_NEWTON_STEPS = 64


class ArcKind(str, Enum):
    DIRECT_SIMPLE = "DirectSimple"
    INDIRECT_SIMPLE = "IndirectSimple"
    MULTI_REV = "MultiRev"


class Tail(str, Enum):
    DIRECT = "direct"
    INDIRECT = "indirect"


@dataclass(frozen=True)
class ArcClass:
    kind: ArcKind
    revs: int = 0
    tail: Tail = Tail.DIRECT

    def __post_init__(self):
        if self.kind is ArcKind.MULTI_REV and self.revs < 1:
            raise DomainError("multi-revolution arcs need n >= 1")
        if self.kind is not ArcKind.MULTI_REV and self.revs != 0:
            raise DomainError("simple arcs have n = 0")

    @classmethod
    def simple(cls, tail: Tail) -> "ArcClass":
        kind = ArcKind.DIRECT_SIMPLE if tail is Tail.DIRECT else ArcKind.INDIRECT_SIMPLE
        return cls(kind, 0, tail)

    @classmethod
    def multirev(cls, n: int, tail: Tail) -> "ArcClass":
        return cls(ArcKind.MULTI_REV, n, tail)


@dataclass(frozen=True)
class LambertSolution:
    """One arc of the rectilinear image, with its transported parameters"""
    arc_class: ArcClass
    re: RectilinearEquivalent
    tof: float
    va: float
    eta: float
    energy: float
    tof_residual: float
    certified: bool
    iterations: int = 0
    multiplicity: int = 1
    conic_type: ConicType = ConicType.ELLIPTIC
    second_focus: Optional[str] = None

    @property
    def beta_hat(self) -> float:
        """Universal parameter shared by every planar arc of this class; equals eta"""
        return self.eta

    @property
    def revs(self) -> int:
        return self.arc_class.revs

    @property
    def tail(self) -> Tail:
        return self.arc_class.tail

    def sort_key(self):
        return (self.revs, 0 if self.tail is Tail.DIRECT else 1, self.va)


@dataclass
class CensusRow:
    n: int
    direct: Optional[int]
    indirect: Optional[int]
    direct_certified: bool
    indirect_certified: bool
    tmin_direct: Optional[float] = None


@dataclass
class SolutionCensus:
    tof: float
    rows: List[CensusRow] = field(default_factory=list)

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame([vars(row) for row in self.rows],
                            columns=["n", "direct", "indirect", "direct_certified",
                                     "indirect_certified", "tmin_direct"])

    def total(self) -> int:
        return int(sum((row.direct or 0) + (row.indirect or 0) for row in self.rows))


def _as_tail(value: Union[str, Tail]) -> Tail:
    return value if isinstance(value, Tail) else Tail(str(value).lower())


class LambertSolver:
    """Root finding and counting on the rectilinear time-of-flight functions"""

    def __init__(self, config: SolverConfig = DEFAULT_CONFIG):
        self.config = config

    # time functions

    def time(self, re: RectilinearEquivalent, va: float, tail: Tail, n: int = 0) -> float:
        q = RectilinearArcQuery(re.xa, re.xb, va)
        t = tof_direct(q, self.config) if tail is Tail.DIRECT else tof_indirect(q, self.config)
        return t + n * period(va, re.xa) if n else t

    def time_derivative(self, re: RectilinearEquivalent, va: float, tail: Tail, n: int = 0) -> float:
        q = RectilinearArcQuery(re.xa, re.xb, va)
        if tail is Tail.DIRECT:
            d = tof_direct_derivative(q, self.config)
        else:
            d = tof_indirect_derivative(q, self.config)
        return d + n * period_derivative(va, re.xa) if n else d

    # brackets

    def _escape_side(self, re: RectilinearEquivalent, func: Callable[[float], float], target: float,
                     sign: float, eps0: float = 0.5) -> float:
        """Point sign * v_E * (1 - eps), eps <= eps0, where func exceeds target"""
        ve = re.escape_velocity
        eps = eps0
        floor = 2.0 * self.config.escape_margin
        while True:
            va = sign * ve * (1.0 - eps)
            if func(va) > target:
                return va
            if eps <= floor:
                raise TooCloseToEscape(f"T = {target} beyond reach below the escape margin")
            eps = max(eps * 0.1, floor)

    def _fast_side(self, re: RectilinearEquivalent, tail: Tail, target: float) -> float:
        """Very negative v_A where the simple time drops below target"""
        scale = re.chord if tail is Tail.DIRECT else re.total
        va = -2.0 * scale / target - re.escape_velocity
        while self.time(re, va, tail) >= target:
            va *= 2.0
        return va

    def _newton(self, funcs, lo, hi, x0, target, ve):
        return Numerics.safeguarded_newton(
            funcs, lo, hi, x0=x0,
            ftol=self.config.root_rtol * target,
            xtol=self.config.root_step_tol * ve,
            maxiter=self.config.root_maxiter,
        )

    def _solution(self, re: RectilinearEquivalent, va: float, target: float, arc_class: ArcClass,
                  iterations: int, certified: bool) -> LambertSolution:
        tail = arc_class.tail
        reached = self.time(re, va, tail, arc_class.revs)
        eta = eta_from_va_direct(va, re.xa, re.xb) if tail is Tail.DIRECT else eta_from_va_indirect(va, re.xa, re.xb)
        h = energy(va, re.xa)
        kind = conic_type(h, 1.0 / re.xa)
        focus = second_focus_class(va) if tail is Tail.DIRECT and kind is ConicType.ELLIPTIC else None
        return LambertSolution(
            arc_class=arc_class,
            re=re,
            tof=target,
            va=va,
            eta=eta,
            energy=h,
            tof_residual=abs(reached - target) / target,
            certified=certified,
            iterations=iterations,
            multiplicity=2 if re.degenerate else 1,
            conic_type=kind,
            second_focus=focus,
        )

    # simple arcs

    def solve_simple(self, re: RectilinearEquivalent, tof: float, arc_class: Union[str, Tail]) -> LambertSolution:
        """The unique simple arc of the given class"""
        tail = _as_tail(arc_class)
        if not tof > 0:
            raise DomainError("elapsed time must be positive")
        if tail is Tail.DIRECT and re.degenerate:
            raise DegenerateDirect("O on segment AB: both simple arcs are indirect")

        ve = re.escape_velocity
        hi = self._escape_side(re, lambda v: self.time(re, v, tail), tof, 1.0)
        lo = self._fast_side(re, tail, tof)

        def funcs(va):
            return self.time(re, va, tail) - tof, self.time_derivative(re, va, tail)

        va, iterations = self._newton(funcs, lo, hi, hi, tof, ve)
        logger.debug("Simple %s arc: v_A=%.15g after %d Newton steps", tail.value, va, iterations)
        if tail is Tail.DIRECT and iterations > CERTIFIED_NEWTON_STEPS:
            logger.warning("Direct Newton took %d steps (certificate expects <= %d)",
                           iterations, CERTIFIED_NEWTON_STEPS)
        return self._solution(re, va, tof, ArcClass.simple(tail), iterations, certified=True)

    # multi-revolution arcs

    def tmin_multirev(self, re: RectilinearEquivalent, n: int,
                      tail: Union[str, Tail] = Tail.DIRECT) -> Tuple[float, float]:
        """Least time of an n-revolution arc with a direct tail: (T_min, v_A at the minimum)"""
        tail = _as_tail(tail)
        if n < 1:
            raise DomainError("n must be at least 1")
        if tail is not Tail.DIRECT:
            raise DomainError("T_min is certified for direct tails only")
        if re.degenerate:
            raise DegenerateDirect("no direct tail when O lies on segment AB")

        ve = re.escape_velocity

        def total(va):
            return self.time(re, va, Tail.DIRECT, n)

        def slope(va):
            return n * period_derivative(va, re.xa) + tof_direct_derivative(RectilinearArcQuery(re.xa, re.xb, va), self.config)

        def curvature(va):
            q = RectilinearArcQuery(re.xa, re.xb, va)
            return n * period_second_derivative(va, re.xa) + tof_direct_second_derivative(q, self.config)

        # slope(0) = x_A^2 > 0 and slope -> -infinity toward -v_E
        lo = self._escape_side(re, lambda v: -slope(v), 0.0, -1.0)
        hi = 0.0

        try:
            va_min, iterations = Numerics.safeguarded_newton(
                lambda v: (slope(v), curvature(v)), lo, hi,
                xtol=self.config.root_rtol * ve,
                maxiter=self.config.root_maxiter,
            )
            logger.debug("T_min(n=%d) Newton converged in %d steps", n, iterations)
        except (NoConvergence, QuadratureFailure) as e:
            logger.warning("T_min Newton failed (%s); using golden-section search", e)
            va_min, _ = Numerics.golden_minimum(total, lo, hi, xtol=self.config.root_rtol)
        return total(va_min), va_min

    def solve_multirev(self, re: RectilinearEquivalent, n: int, tof: float,
                       tail: Union[str, Tail] = Tail.DIRECT) -> List[LambertSolution]:
        """0, 1 or 2 arcs with n revolutions and a direct tail"""
        tail = _as_tail(tail)
        if tail is Tail.INDIRECT:
            return self.solve_multirev_indirect(re, n, tof)
        if not tof > 0:
            raise DomainError("elapsed time must be positive")

        t_min, va_min = self.tmin_multirev(re, n)
        arc_class = ArcClass.multirev(n, Tail.DIRECT)
        ve = re.escape_velocity

        if abs(tof - t_min) <= self.config.tie_band * tof:
            return [self._solution(re, va_min, tof, arc_class, 0, certified=True)]
        if tof < t_min:
            logger.info("T = %.6g below T_min(%d) = %.6g: no arc", tof, n, t_min)
            return []

        def total(va):
            return self.time(re, va, Tail.DIRECT, n)

        def rising(va):
            return total(va) - tof, self.time_derivative(re, va, Tail.DIRECT, n)

        def falling(va):
            return tof - total(va), -self.time_derivative(re, va, Tail.DIRECT, n)

        lo = self._escape_side(re, total, tof, -1.0, eps0=0.5 * (1.0 + va_min / ve))
        hi = self._escape_side(re, total, tof, 1.0)

        # start each branch where T exceeds the target (convex certificate)
        left, it_left = self._newton(falling, lo, va_min, lo, tof, ve)
        right, it_right = self._newton(rising, va_min, hi, hi, tof, ve)
        return [
            self._solution(re, left, tof, arc_class, it_left, certified=True),
            self._solution(re, right, tof, arc_class, it_right, certified=True),
        ]

    def solve_multirev_indirect(self, re: RectilinearEquivalent, n: int, tof: float,
                                samples: Optional[int] = None) -> List[LambertSolution]:
        """
        Arcs with n revolutions and an indirect tail, by dense sampling

        Best effort: the time curve is not known to be convex, so the list is
        not certified complete.
        """
        if n < 1:
            raise DomainError("n must be at least 1")
        if not tof > 0:
            raise DomainError("elapsed time must be positive")

        samples = samples or self.config.indirect_samples
        ve = re.escape_velocity
        phi = np.linspace(0.0, math.pi, samples + 2)[1:-1]
        grid = -ve * np.cos(phi)

        def excess(va):
            return self.time(re, va, Tail.INDIRECT, n) - tof

        values = np.array([excess(v) for v in grid])
        roots: List[float] = []
        tangent_band = 1e3 * self.config.tie_band * tof

        for i in range(len(grid) - 1):
            if values[i] == 0.0:
                roots.append(float(grid[i]))
            elif values[i] * values[i + 1] < 0.0:
                roots.append(Numerics.bracketed_root(excess, grid[i], grid[i + 1]))

        for i in range(1, len(grid) - 1):
            g0, g1, g2 = values[i - 1], values[i], values[i + 1]
            is_min = g1 <= g0 and g1 <= g2 and g1 > 0.0
            is_max = g1 >= g0 and g1 >= g2 and g1 < 0.0
            if not (is_min or is_max):
                continue
            sign = 1.0 if is_min else -1.0
            v_ext, g_ext = Numerics.golden_minimum(lambda v: sign * excess(v), grid[i - 1], grid[i + 1], grid=8)
            g_ext *= sign
            if abs(g_ext) <= tangent_band:
                raise SamplingInconclusive(f"time curve tangent to T near v_A = {v_ext:.6g}")
            if g_ext * g1 < 0.0:
                logger.debug("Hidden root pair near v_A = %.6g", v_ext)
                roots.append(Numerics.bracketed_root(excess, grid[i - 1], v_ext))
                roots.append(Numerics.bracketed_root(excess, v_ext, grid[i + 1]))

        arc_class = ArcClass.multirev(n, Tail.INDIRECT)
        unique = sorted(set(roots))
        if unique:
            logger.info("Indirect n=%d: %d arcs found by sampling (uncertified)", n, len(unique))
        return [self._solution(re, va, tof, arc_class, 0, certified=False) for va in unique]

    # census

    def count_solutions(self, p: Union[BoundaryProblem, RectilinearEquivalent], tof: float, n_max: int,
                        classes: str = "all", samples: Optional[int] = None) -> SolutionCensus:
        """Number of arcs per revolution count"""
        if n_max < 0:
            raise DomainError("n_max must be nonnegative")
        if not tof > 0:
            raise DomainError("elapsed time must be positive")
        re = reduce_to_rectilinear(p)
        want_direct = classes in ("all", "direct")
        want_indirect = classes in ("all", "indirect")
        census = SolutionCensus(tof)

        if re.degenerate:
            census.rows.append(CensusRow(0, 0 if want_direct else None, 2 if want_indirect else None, True, True))
        else:
            census.rows.append(CensusRow(0, 1 if want_direct else None, 1 if want_indirect else None, True, True))

        for n in range(1, n_max + 1):
            row = CensusRow(n, None, None, True, False)
            if want_direct:
                if re.degenerate:
                    row.direct = 0
                else:
                    t_min, _ = self.tmin_multirev(re, n)
                    row.tmin_direct = t_min
                    if abs(tof - t_min) <= self.config.tie_band * tof:
                        row.direct = 1
                    else:
                        row.direct = 0 if tof < t_min else 2
            if want_indirect:
                found = self.solve_multirev_indirect(re, n, tof, samples)
                row.indirect = len(found) * (2 if re.degenerate else 1)
            census.rows.append(row)
        return census

    def solve_all(self, p: Union[BoundaryProblem, RectilinearEquivalent], tof: float, n_max: int = 0,
                  classes: str = "all", samples: Optional[int] = None) -> List[LambertSolution]:
        """Every arc up to n_max revolutions, ordered by (n, tail, v_A)"""
        re = reduce_to_rectilinear(p)
        solutions: List[LambertSolution] = []
        want_direct = classes in ("all", "direct")
        want_indirect = classes in ("all", "indirect")

        if want_direct and not re.degenerate:
            solutions.append(self.solve_simple(re, tof, Tail.DIRECT))
        if want_indirect:
            solutions.append(self.solve_simple(re, tof, Tail.INDIRECT))
        for n in range(1, n_max + 1):
            if want_direct and not re.degenerate:
                solutions.extend(self.solve_multirev(re, n, tof))
            if want_indirect:
                solutions.extend(self.solve_multirev_indirect(re, n, tof, samples))
        return sorted(solutions, key=LambertSolution.sort_key)
