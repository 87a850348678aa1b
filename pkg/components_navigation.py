"""
Subcommand Navigation Component
Routes a validated invocation to its module and maps failures to exit codes
"""

import logging
from concurrent.futures import ProcessPoolExecutor
from typing import Dict, List

from config_settings import AppConfig, CliConfig, SolverConfig
from core_errors import InputError, NumericalFailure
from utils_helpers import Helpers

logger = logging.getLogger(__name__)


class Navigation:
    """Subcommand dispatch"""

    @staticmethod
    def module_for(subcommand: str):
        """Module class for a subcommand, imported on demand"""
        if subcommand == "solve":
            from modules_solve import SolveModule
            return SolveModule
        if subcommand == "count":
            from modules_census import CensusModule
            return CensusModule
        if subcommand == "curve":
            from modules_curve import CurveModule
            return CurveModule
        if subcommand == "verify":
            from modules_verify import VerifyModule
            return VerifyModule
        raise ValueError(f"unknown subcommand {subcommand!r}")

    @staticmethod
    def dispatch(config: CliConfig, solver_config: SolverConfig) -> int:
        """Run one invocation; returns the process exit code"""
        try:
            module = Navigation.module_for(config.subcommand)
            return module.run(config, solver_config)
        except InputError as e:
            Helpers.show_error(f"{type(e).__name__}: {e}")
            return AppConfig.EXIT_USAGE
        except NumericalFailure as e:
            logger.debug("Numerical failure", exc_info=True)
            Helpers.show_error(f"{type(e).__name__}: {e}")
            return AppConfig.EXIT_NUMERICAL

    @staticmethod
    def compute_one(config: CliConfig, solver_config: SolverConfig) -> Dict:
        """Result dict for one batch entry; errors are captured, not raised"""
        try:
            return Navigation.module_for(config.subcommand).compute(config, solver_config)
        except InputError as e:
            return {'success': False, 'exit_code': AppConfig.EXIT_USAGE, 'error': f"{type(e).__name__}: {e}"}
        except NumericalFailure as e:
            return {'success': False, 'exit_code': AppConfig.EXIT_NUMERICAL, 'error': f"{type(e).__name__}: {e}"}

    @staticmethod
    def run_batch(configs: List[CliConfig], solver_config: SolverConfig, workers: int = None) -> List[Dict]:
        """Independent problems in parallel, results in input order"""
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(Navigation.compute_one, configs, [solver_config] * len(configs)))

    @staticmethod
    def batch_exit_code(results: List[Dict]) -> int:
        """Worst outcome across the batch"""
        codes = [r['exit_code'] for r in results]
        for code in (AppConfig.EXIT_NUMERICAL, AppConfig.EXIT_USAGE, AppConfig.EXIT_EMPTY):
            if code in codes:
                return code
        return AppConfig.EXIT_OK
