"""
Command-line Argument Component
Builds the argument surface and turns it into validated problem inputs
"""

import argparse
import json
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Sequence

from pydantic import ValidationError

from config_settings import AppConfig, CliConfig, SolverConfig
from core_errors import UsageError
from core_geometry import (
    BoundaryProblem,
    RectilinearEquivalent,
    problem_from_rectilinear,
    problem_from_triangle,
    reduce_to_rectilinear,
)
from utils_helpers import Helpers

INPUT_FIELDS = ("ax", "ay", "bx", "by", "ra", "rb", "theta", "chord", "xa", "xb", "rectilinear")

# flag spellings accepted in batch files
KEY_ALIASES = {"class": "arc_class", "format": "output_format"}


class LambertArgumentParser(argparse.ArgumentParser):
    """Usage errors raise instead of exiting with argparse's own status"""

    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


@dataclass
class ProblemInput:
    """A parsed problem in solver units (mu = 1)"""
    problem: Optional[BoundaryProblem]
    re: RectilinearEquivalent
    tof: Optional[float]


class ArgumentsComponent:
    """Argument parsing and problem construction"""

    @staticmethod
    def _add_common(parser: argparse.ArgumentParser):
        cartesian = parser.add_argument_group("cartesian endpoints")
        cartesian.add_argument("--ax", type=float, help="x of A relative to O")
        cartesian.add_argument("--ay", type=float, help="y of A relative to O")
        cartesian.add_argument("--bx", type=float, help="x of B relative to O")
        cartesian.add_argument("--by", type=float, help="y of B relative to O")

        triangle = parser.add_argument_group("triangle scalars")
        triangle.add_argument("--ra", type=float, help="|OA|")
        triangle.add_argument("--rb", type=float, help="|OB|")
        triangle.add_argument("--theta", type=float, help="transfer angle AOB in radians")
        triangle.add_argument("--chord", type=float, help="|AB|")

        flat = parser.add_argument_group("rectilinear equivalent")
        flat.add_argument("--xa", type=float, help="x_A = (r_A + r_B + c) / 2")
        flat.add_argument("--xb", type=float, help="x_B = (r_A + r_B - c) / 2")
        flat.add_argument("--rectilinear", action="store_true", help="interpret --xa/--xb as the input")

        parser.add_argument("--mu", type=float, default=1.0, help="gravitational parameter")
        parser.add_argument("--tof", type=float, help="elapsed time T")
        parser.add_argument("--revs", type=int, help="only arcs with exactly this many revolutions")
        parser.add_argument("--n-max", dest="n_max", type=int, default=0, help="largest revolution count")
        parser.add_argument("--class", dest="arc_class", default="all", choices=AppConfig.ARC_CLASSES)
        parser.add_argument("--direction", default="any", choices=AppConfig.DIRECTIONS)
        parser.add_argument("--format", dest="output_format", default="json", choices=AppConfig.OUTPUT_FORMATS)
        parser.add_argument("--compact", action="store_true", help="single-line JSON")
        parser.add_argument("--samples", type=int, default=None,
                            help="grid size for indirect multi-rev sampling (default: LAMBERT_INDIRECT_SAMPLES)")
        parser.add_argument("--out", help="write the report to PATH instead of stdout")
        parser.add_argument("--batch", help="JSON list of problem objects")
        parser.add_argument("--verbose", "-v", action="store_true", help="debug logging")

    @staticmethod
    def build_parser() -> argparse.ArgumentParser:
        parser = LambertArgumentParser(
            prog="lambert",
            description=f"{AppConfig.APP_NAME} {AppConfig.APP_VERSION}",
        )
        parser.add_argument("--version", action="version", version=AppConfig.APP_VERSION)
        subparsers = parser.add_subparsers(dest="subcommand", metavar="COMMAND", parser_class=LambertArgumentParser)
        subparsers.required = True

        commands = {
            "solve": "Find every arc from A to B in time T",
            "count": "Count arcs per revolution number",
            "curve": "Emit time-of-flight curves as a table",
            "verify": "Propagate each solution and report arrival residuals",
        }
        for name, help_text in commands.items():
            sub = subparsers.add_parser(name, help=help_text, description=help_text)
            ArgumentsComponent._add_common(sub)
            if name == "curve":
                sub.add_argument("--parameter", default="vA", choices=AppConfig.CURVE_PARAMETERS,
                                 help="abscissa of the sampling grid")
                sub.add_argument("--points", type=int, default=AppConfig.DEFAULT_CURVE_POINTS)
        return parser

    @staticmethod
    def _validated(values: Dict[str, Any]) -> CliConfig:
        try:
            return CliConfig(**values)
        except ValidationError as e:
            messages = "; ".join(err["msg"] for err in e.errors())
            raise UsageError(messages) from e

    @staticmethod
    def parse(argv: Optional[Sequence[str]] = None) -> CliConfig:
        """Parse and validate a command line"""
        namespace = ArgumentsComponent.build_parser().parse_args(argv)
        return ArgumentsComponent._validated(vars(namespace))

    @staticmethod
    def batch_configs(config: CliConfig) -> List[CliConfig]:
        """One config per batch entry; command-line options act as defaults"""
        try:
            with open(config.batch, "r") as f:
                entries = json.load(f)
        except (OSError, json.JSONDecodeError) as e:
            raise UsageError(f"cannot read batch file {config.batch}: {e}") from e
        if not isinstance(entries, list):
            raise UsageError("batch file must hold a JSON list of problem objects")

        base = config.model_dump(exclude={"batch", *INPUT_FIELDS})
        configs = []
        for index, entry in enumerate(entries):
            if not isinstance(entry, dict):
                raise UsageError(f"batch entry {index} is not an object")
            values = dict(base)
            for key, value in entry.items():
                name = key.replace("-", "_")
                values[KEY_ALIASES.get(name, name)] = value
            try:
                configs.append(ArgumentsComponent._validated(values))
            except UsageError as e:
                raise UsageError(f"batch entry {index}: {e}") from e
        return configs

    @staticmethod
    def build_problem(config: CliConfig, solver_config: Optional[SolverConfig] = None) -> ProblemInput:
        """Problem geometry from the active input mode, times scaled to mu = 1"""
        tol = (solver_config or SolverConfig()).collinear_tol
        tof = Helpers.time_to_internal(config.tof, config.mu) if config.tof is not None else None
        mode = config.input_mode

        if mode == "cartesian":
            problem = BoundaryProblem((config.ax, config.ay), (config.bx, config.by), tof, tol)
        elif mode == "triangle":
            problem = problem_from_triangle(config.ra, config.rb, theta=config.theta, chord=config.chord, tof=tof,
                                            collinear_tol=tol)
        else:
            re = RectilinearEquivalent(config.xa, config.xb)
            problem = problem_from_rectilinear(config.xa, config.xb, tof, tol) if not re.degenerate else None
            return ProblemInput(problem, re, tof)

        return ProblemInput(problem, reduce_to_rectilinear(problem), tof)
