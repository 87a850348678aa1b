"""
Module: Curve
Sampled time-of-flight curves for the direct and indirect simple arcs
"""

import logging
import math
from typing import Callable, Dict, List, Tuple

import numpy as np
import pandas as pd

from components_arguments import ArgumentsComponent
from components_output import CurveReport, OutputComponent
from config_settings import AppConfig, CliConfig, SolverConfig
from core_geometry import RectilinearEquivalent, lb_variables
from core_maps import eta_from_va_direct, eta_from_va_indirect, va_from_eta_direct, va_from_eta_indirect
from core_solver import LambertSolver, Tail
from utils_helpers import Helpers
from utils_numerics import DEFAULT_CONFIG

logger = logging.getLogger(__name__)

# fastest sampled start, in units of v_E
FAST_END = -3.0


class CurveModule:
    """Curve subcommand"""

    @staticmethod
    def _eta_maps(tail: Tail) -> Tuple[Callable, Callable]:
        if tail is Tail.DIRECT:
            return va_from_eta_direct, eta_from_va_direct
        return va_from_eta_indirect, eta_from_va_indirect

    @staticmethod
    def grid(re: RectilinearEquivalent, tail: Tail, parameter: str, points: int) -> Tuple[np.ndarray, np.ndarray]:
        """(parameter values, v_A values) on a uniform grid in the parameter"""
        ve = re.escape_velocity
        margin = AppConfig.CURVE_EDGE_MARGIN
        va_lo, va_hi = FAST_END * ve, ve * (1.0 - margin)

        if parameter == "vA":
            values = np.linspace(va_lo, va_hi, points)
            return values, values
        if parameter == "x":
            values = np.linspace(FAST_END, 1.0 - margin, points)
            return values, values * ve

        to_va, to_eta = CurveModule._eta_maps(tail)
        if tail is Tail.DIRECT:
            lo, hi = to_eta(va_lo, re.xa, re.xb), to_eta(va_hi, re.xa, re.xb)
        else:
            # the indirect map decreases: v_E at eta = -1
            lo, hi = to_eta(va_hi, re.xa, re.xb), to_eta(va_lo, re.xa, re.xb)
        values = np.linspace(lo, hi, points)
        return values, np.array([to_va(float(e), re.xa, re.xb) for e in values])

    @staticmethod
    def sample(re: RectilinearEquivalent, tail: Tail, parameter: str, points: int, mu: float,
               solver: LambertSolver) -> List[Dict]:
        values, velocities = CurveModule.grid(re, tail, parameter, points)
        _, to_eta = CurveModule._eta_maps(tail)
        times = np.array([solver.time(re, float(v), tail) for v in velocities])

        if parameter == "vA":
            abscissa = np.array([Helpers.velocity_to_user(v, mu) for v in values])
        else:
            abscissa = values
        times_user = times / math.sqrt(mu)
        first = np.gradient(times_user, abscissa)
        second = np.gradient(first, abscissa)

        rows = []
        for k, va in enumerate(velocities):
            va = float(va)
            eta = to_eta(va, re.xa, re.xb)
            lb = lb_variables(va, re, 1 if tail is Tail.DIRECT else -1)
            rows.append({
                "tail": tail.value,
                "vA": Helpers.velocity_to_user(va, mu),
                "eta": eta,
                "betaHat": eta,
                "x": lb.x,
                "q": lb.q_sign * lb.q_abs,
                "T": float(times_user[k]),
                "dT": float(first[k]),
                "d2T": float(second[k]),
            })
        return rows

    @staticmethod
    def compute(config: CliConfig, solver_config: SolverConfig = DEFAULT_CONFIG) -> Dict:
        inp = ArgumentsComponent.build_problem(config, solver_config)
        solver = LambertSolver(solver_config)

        tails = []
        if config.arc_class in ("all", "direct"):
            if inp.re.degenerate:
                logger.info("O on segment AB: no direct curve")
            else:
                tails.append(Tail.DIRECT)
        if config.arc_class in ("all", "indirect"):
            tails.append(Tail.INDIRECT)

        rows = []
        for tail in tails:
            rows.extend(CurveModule.sample(inp.re, tail, config.parameter, config.points, config.mu, solver))
        logger.info("Sampled %d curve points against %s", len(rows), config.parameter)

        frame = pd.DataFrame(rows, columns=AppConfig.CURVE_COLUMNS)
        report = CurveReport(problem=OutputComponent.problem_record(inp, config),
                             parameter=config.parameter, rows=rows)
        return {
            'success': True,
            'exit_code': AppConfig.EXIT_OK,
            'report': report,
            'frame': frame,
        }

    @staticmethod
    def run(config: CliConfig, solver_config: SolverConfig = DEFAULT_CONFIG) -> int:
        result = CurveModule.compute(config, solver_config)
        OutputComponent.write(OutputComponent.render(result['report'], result['frame'], config), config.out)
        return result['exit_code']
