"""
Lambert Boundary Solver
Every Keplerian arc from A to B in a given time, with certified counts
"""

import logging
import sys
from typing import Optional, Sequence

from components_arguments import ArgumentsComponent
from components_navigation import Navigation
from components_output import OutputComponent
from config_settings import AppConfig
from core_errors import UsageError
from utils_helpers import Helpers

logger = logging.getLogger(__name__)


def configure_logging(verbose: bool = False):
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Main application entry point"""
    try:
        config = ArgumentsComponent.parse(argv)
    except UsageError as e:
        Helpers.show_error(str(e))
        return AppConfig.EXIT_USAGE

    configure_logging(config.verbose)
    solver_config = AppConfig.load_solver_config()
    logger.debug("Solver settings: %s", solver_config.model_dump())

    if config.batch is None:
        return Navigation.dispatch(config, solver_config)

    try:
        configs = ArgumentsComponent.batch_configs(config)
    except UsageError as e:
        Helpers.show_error(str(e))
        return AppConfig.EXIT_USAGE

    results = Navigation.run_batch(configs, solver_config)
    OutputComponent.write(OutputComponent.render_batch(results, config), config.out)
    failed = sum(1 for r in results if r.get('report') is None)
    if failed:
        Helpers.show_warning(f"{failed} of {len(results)} batch problems failed")
    return Navigation.batch_exit_code(results)


if __name__ == "__main__":
    sys.exit(main())
