"""
Module: Verify
Propagates every reconstructed state and reports how close it lands to B
"""

import logging
from typing import Dict

import pandas as pd

from components_arguments import ArgumentsComponent
from components_output import OutputComponent, ResidualEntry, VerifyReport
from config_settings import AppConfig, CliConfig, SolverConfig
from core_errors import UsageError
from core_reconstruct import VERIFY_TOL, Reconstructor
from core_solver import LambertSolver
from modules_solve import SolveModule
from utils_helpers import Helpers
from utils_numerics import DEFAULT_CONFIG

logger = logging.getLogger(__name__)


class VerifyModule:
    """Verify subcommand"""

    @staticmethod
    def compute(config: CliConfig, solver_config: SolverConfig = DEFAULT_CONFIG) -> Dict:
        inp = ArgumentsComponent.build_problem(config, solver_config)
        if inp.problem is None:
            raise UsageError("x_B = 0 has no planar representative to propagate; give the endpoints instead")
        problem = inp.problem.with_tof(inp.tof)

        solutions = SolveModule.find_solutions(config, inp, LambertSolver(solver_config))
        reconstructor = Reconstructor(solver_config)

        entries = []
        for sol in solutions:
            for record in reconstructor.verify_solution(problem, sol):
                entries.append(ResidualEntry(
                    n=sol.revs,
                    kind=sol.arc_class.kind.value,
                    tail=sol.tail.value,
                    vA=Helpers.velocity_to_user(sol.va, config.mu),
                    stateIndex=record.state_index,
                    status=record.status,
                    residual=record.residual,
                    sweptAngle=record.swept_angle,
                    note=record.note,
                ))

        passed = all(e.status != "failed" for e in entries)
        report = VerifyReport(problem=OutputComponent.problem_record(inp, config), tolerance=VERIFY_TOL,
                              passed=passed, records=entries)
        frame = pd.DataFrame([e.model_dump() for e in entries],
                             columns=list(ResidualEntry.model_fields))

        if not entries:
            exit_code = AppConfig.EXIT_EMPTY
        elif not passed:
            exit_code = AppConfig.EXIT_NUMERICAL
        else:
            exit_code = AppConfig.EXIT_OK
        logger.info("Verified %d states: %s", len(entries), "ok" if passed else "failed")
        return {
            'success': passed,
            'exit_code': exit_code,
            'report': report,
            'frame': frame,
        }

    @staticmethod
    def run(config: CliConfig, solver_config: SolverConfig = DEFAULT_CONFIG) -> int:
        result = VerifyModule.compute(config, solver_config)
        OutputComponent.write(OutputComponent.render(result['report'], result['frame'], config), config.out)
        if result['exit_code'] == AppConfig.EXIT_NUMERICAL:
            Helpers.show_error("At least one solution misses B under propagation")
        return result['exit_code']
