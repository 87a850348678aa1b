"""
Module: Census
Number of arcs per revolution count
"""

import logging
from typing import Dict

import pandas as pd

from components_arguments import ArgumentsComponent
from components_output import CensusReport, OutputComponent
from config_settings import AppConfig, CliConfig, SolverConfig
from core_solver import LambertSolver
from utils_helpers import Helpers
from utils_numerics import DEFAULT_CONFIG

logger = logging.getLogger(__name__)


class CensusModule:
    """Count subcommand"""

    @staticmethod
    def compute(config: CliConfig, solver_config: SolverConfig = DEFAULT_CONFIG) -> Dict:
        inp = ArgumentsComponent.build_problem(config, solver_config)
        n_max = config.revs if config.revs is not None else config.n_max
        census = LambertSolver(solver_config).count_solutions(
            inp.re, inp.tof, n_max, config.arc_class, config.samples
        )

        rows = []
        for row in census.rows:
            if config.revs is not None and row.n not in (0, config.revs):
                continue
            entry = dict(vars(row))
            if row.tmin_direct is not None:
                entry["tmin_direct"] = Helpers.time_to_user(row.tmin_direct, config.mu)
            rows.append(entry)
        frame = pd.DataFrame(rows, columns=AppConfig.CENSUS_COLUMNS)

        total = int(sum((r["direct"] or 0) + (r["indirect"] or 0) for r in rows))
        report = CensusReport(problem=OutputComponent.problem_record(inp, config), nMax=n_max,
                              total=total, rows=rows)
        logger.info("Census up to n=%d: %d arcs", n_max, total)
        return {
            'success': True,
            'exit_code': AppConfig.EXIT_OK,
            'report': report,
            'frame': frame,
        }

    @staticmethod
    def run(config: CliConfig, solver_config: SolverConfig = DEFAULT_CONFIG) -> int:
        result = CensusModule.compute(config, solver_config)
        OutputComponent.write(OutputComponent.render(result['report'], result['frame'], config), config.out)
        sampled = [row["n"] for row in result['report'].rows if row["n"] > 0 and row["indirect"] is not None]
        if sampled:
            Helpers.show_info(f"Indirect counts for n = {', '.join(map(str, sampled))} come from sampling "
                              "and are not certified")
        return result['exit_code']
