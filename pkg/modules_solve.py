"""
Module: Solve
Every arc from A to B in the elapsed time, with its initial state
"""

import logging
import math
from typing import Dict, List, Tuple

import pandas as pd

from components_arguments import ArgumentsComponent, ProblemInput
from components_output import OutputComponent, SolutionRecord, SolutionReport, StateRecord
from config_settings import AppConfig, CliConfig, SolverConfig
from core_propagator import KeplerState, angular_momentum
from core_reconstruct import Reconstructor
from core_solver import LambertSolution, LambertSolver, Tail
from utils_helpers import Helpers
from utils_numerics import DEFAULT_CONFIG

logger = logging.getLogger(__name__)


def state_direction(state: KeplerState) -> str:
    c = angular_momentum(state)
    scale = float(abs(state.r).max() * abs(state.v).max()) or 1.0
    if abs(c) <= 1e-12 * scale:
        return "radial"
    return "ccw" if c > 0 else "cw"


class SolveModule:
    """Solve subcommand"""

    @staticmethod
    def find_solutions(config: CliConfig, inp: ProblemInput, solver: LambertSolver) -> List[LambertSolution]:
        """Solutions selected by --class, --revs and --n-max, sorted by (n, tail, v_A)"""
        if config.revs is None:
            return solver.solve_all(inp.re, inp.tof, config.n_max, config.arc_class, config.samples)

        found: List[LambertSolution] = []
        if config.arc_class in ("all", "direct") and not inp.re.degenerate:
            found.extend(solver.solve_multirev(inp.re, config.revs, inp.tof, Tail.DIRECT))
        if config.arc_class in ("all", "indirect"):
            found.extend(solver.solve_multirev_indirect(inp.re, config.revs, inp.tof, config.samples))
        return sorted(found, key=LambertSolution.sort_key)

    @staticmethod
    def states_for(config: CliConfig, inp: ProblemInput, sol: LambertSolution,
                   reconstructor: Reconstructor) -> List[Tuple[int, KeplerState, str]]:
        """(index, state, direction) of every emitted state passing --direction"""
        if inp.problem is None:
            return []
        states = reconstructor.initial_states(inp.problem.with_tof(inp.tof), sol)
        kept = []
        for index, state in enumerate(states):
            direction = state_direction(state)
            if config.direction == "any" or config.direction == direction:
                kept.append((index, state, direction))
        return kept

    @staticmethod
    def solution_record(sol: LambertSolution, states, mu: float) -> SolutionRecord:
        root_mu = math.sqrt(mu)
        return SolutionRecord(
            n=sol.revs,
            kind=sol.arc_class.kind.value,
            tail=sol.tail.value,
            vA=Helpers.velocity_to_user(sol.va, mu),
            eta=sol.eta,
            betaHat=sol.beta_hat,
            H=Helpers.energy_to_user(sol.energy, mu),
            conicType=sol.conic_type.value,
            secondFocus=sol.second_focus,
            tofResidual=sol.tof_residual,
            certified=sol.certified,
            multiplicity=sol.multiplicity,
            iterations=sol.iterations,
            states=[
                StateRecord(pos=list(s.pos), vel=[v * root_mu for v in s.vel], direction=d)
                for _, s, d in states
            ],
        )

    @staticmethod
    def to_frame(records: List[SolutionRecord]) -> pd.DataFrame:
        """One row per emitted state; solutions without a state get one row"""
        rows = []
        for rec in records:
            base = {
                "n": rec.n, "kind": rec.kind, "tail": rec.tail, "vA": rec.vA, "eta": rec.eta,
                "betaHat": rec.betaHat, "H": rec.H, "conicType": rec.conicType,
                "tofResidual": rec.tofResidual, "certified": rec.certified,
                "multiplicity": rec.multiplicity,
            }
            if not rec.states:
                rows.append({**base, "direction": None, "posX": None, "posY": None, "velX": None, "velY": None})
            for s in rec.states:
                rows.append({**base, "direction": s.direction, "posX": s.pos[0], "posY": s.pos[1],
                             "velX": s.vel[0], "velY": s.vel[1]})
        return pd.DataFrame(rows, columns=AppConfig.SOLUTION_COLUMNS)

    @staticmethod
    def compute(config: CliConfig, solver_config: SolverConfig = DEFAULT_CONFIG) -> Dict:
        """Result dict: success, exit_code, report, frame"""
        inp = ArgumentsComponent.build_problem(config, solver_config)
        solver = LambertSolver(solver_config)
        reconstructor = Reconstructor(solver_config)

        solutions = SolveModule.find_solutions(config, inp, solver)
        logger.info("Found %d arcs (T=%.6g, n_max=%d)", len(solutions), inp.tof, config.n_max)

        records = []
        for sol in solutions:
            states = SolveModule.states_for(config, inp, sol, reconstructor)
            if inp.problem is not None and not states:
                continue
            if inp.problem is None and config.direction != "any":
                continue
            records.append(SolveModule.solution_record(sol, states, config.mu))

        report = SolutionReport(problem=OutputComponent.problem_record(inp, config), solutions=records)
        exit_code = AppConfig.EXIT_OK if records else AppConfig.EXIT_EMPTY
        return {
            'success': True,
            'exit_code': exit_code,
            'report': report,
            'frame': SolveModule.to_frame(records),
        }

    @staticmethod
    def run(config: CliConfig, solver_config: SolverConfig = DEFAULT_CONFIG) -> int:
        """Run the subcommand and write its report"""
        result = SolveModule.compute(config, solver_config)
        OutputComponent.write(OutputComponent.render(result['report'], result['frame'], config), config.out)
        if result['exit_code'] == AppConfig.EXIT_EMPTY:
            Helpers.show_warning("No arc matches the request")
        elif config.out:
            Helpers.show_success(f"{len(result['report'].solutions)} arcs written to {config.out}")
        return result['exit_code']
