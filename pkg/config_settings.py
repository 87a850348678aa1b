"""
Application Configuration and Settings
"""

import logging
import os
from typing import Dict, List, Optional

from dotenv import load_dotenv
from pydantic import BaseModel, Field, ValidationError, field_validator, model_validator

logger = logging.getLogger(__name__)


class SolverConfig(BaseModel):
    """Numerical tolerances shared by the core modules"""

    model_config = {"frozen": True}

    # Quadrature
    quad_atol: float = 1e-13
    quad_rtol: float = 1e-12
    quad_limit: int = 200
    quad_accept: float = 1e-9  # relative abserr accepted when QUADPACK flags roundoff

    # Root finding
    escape_margin: float = 1e-9  # fraction of v_E kept clear of escape
    root_rtol: float = 1e-12
    root_step_tol: float = 1e-14  # fraction of v_E
    root_maxiter: int = 100
    tie_band: float = 1e-12  # T within this fraction of T_min counts as tangent

    # Kepler propagation
    kepler_tol: float = 1e-14
    kepler_maxiter: int = 60

    # Geometry
    collinear_tol: float = 1e-12

    # Sampling and verification
    indirect_samples: int = 2048
    probe_tol: float = 1e-6

    @field_validator(
        "quad_atol", "quad_rtol", "quad_accept", "escape_margin", "root_rtol",
        "root_step_tol", "tie_band", "kepler_tol", "collinear_tol", "probe_tol",
    )
    @classmethod
    def _positive_tolerance(cls, value: float) -> float:
        if not value > 0:
            raise ValueError("tolerance must be positive")
        return value

    @field_validator("quad_limit", "root_maxiter", "kepler_maxiter")
    @classmethod
    def _positive_count(cls, value: int) -> int:
        if value < 1:
            raise ValueError("iteration limits must be at least 1")
        return value

    @field_validator("indirect_samples")
    @classmethod
    def _enough_samples(cls, value: int) -> int:
        if value < 16:
            raise ValueError("indirect sampling needs at least 16 points")
        return value


class CliConfig(BaseModel):
    """One validated command-line invocation"""

    subcommand: str
    # cartesian endpoints
    ax: Optional[float] = None
    ay: Optional[float] = None
    bx: Optional[float] = None
    by: Optional[float] = None
    # triangle scalars
    ra: Optional[float] = None
    rb: Optional[float] = None
    theta: Optional[float] = None
    chord: Optional[float] = None
    # rectilinear equivalent
    xa: Optional[float] = None
    xb: Optional[float] = None
    rectilinear: bool = False

    mu: float = 1.0
    tof: Optional[float] = None
    revs: Optional[int] = None
    n_max: int = 0
    arc_class: str = "all"
    direction: str = "any"
    output_format: str = "json"
    compact: bool = False
    samples: Optional[int] = Field(default=None, ge=16)  # None: SolverConfig.indirect_samples
    points: int = Field(default=200, ge=5)
    parameter: str = "vA"
    out: Optional[str] = None
    batch: Optional[str] = None
    verbose: bool = False

    @field_validator("mu")
    @classmethod
    def _positive_mu(cls, value: float) -> float:
        if not value > 0:
            raise ValueError("mu must be positive")
        return value

    @field_validator("tof")
    @classmethod
    def _positive_tof(cls, value: Optional[float]) -> Optional[float]:
        if value is not None and not value > 0:
            raise ValueError("tof must be positive")
        return value

    @field_validator("revs")
    @classmethod
    def _positive_revs(cls, value: Optional[int]) -> Optional[int]:
        if value is not None and value < 1:
            raise ValueError("revs must be at least 1")
        return value

    @field_validator("n_max")
    @classmethod
    def _nonnegative_n_max(cls, value: int) -> int:
        if value < 0:
            raise ValueError("n-max must be nonnegative")
        return value

    @field_validator("arc_class")
    @classmethod
    def _known_class(cls, value: str) -> str:
        if value not in AppConfig.ARC_CLASSES:
            raise ValueError(f"class must be one of {AppConfig.ARC_CLASSES}")
        return value

    @field_validator("direction")
    @classmethod
    def _known_direction(cls, value: str) -> str:
        if value not in AppConfig.DIRECTIONS:
            raise ValueError(f"direction must be one of {AppConfig.DIRECTIONS}")
        return value

    @field_validator("output_format")
    @classmethod
    def _known_format(cls, value: str) -> str:
        if value not in AppConfig.OUTPUT_FORMATS:
            raise ValueError(f"format must be one of {AppConfig.OUTPUT_FORMATS}")
        return value

    @field_validator("parameter")
    @classmethod
    def _known_parameter(cls, value: str) -> str:
        if value not in AppConfig.CURVE_PARAMETERS:
            raise ValueError(f"parameter must be one of {AppConfig.CURVE_PARAMETERS}")
        return value

    @model_validator(mode="after")
    def _one_input_mode(self) -> "CliConfig":
        if self.batch is not None:
            return self
        modes = self.input_modes()
        if len(modes) != 1:
            found = ", ".join(modes) or "none"
            raise ValueError(f"exactly one input mode required (found: {found})")
        mode = modes[0]
        if mode == "cartesian" and None in (self.ax, self.ay, self.bx, self.by):
            raise ValueError("cartesian input needs --ax --ay --bx --by")
        if mode == "triangle":
            if self.ra is None or self.rb is None:
                raise ValueError("triangle input needs --ra and --rb")
            if (self.theta is None) == (self.chord is None):
                raise ValueError("triangle input needs exactly one of --theta, --chord")
        if mode == "rectilinear" and (self.xa is None or self.xb is None):
            raise ValueError("rectilinear input needs --xa and --xb")
        if self.subcommand in ("solve", "count", "verify") and self.tof is None:
            raise ValueError(f"{self.subcommand} requires --tof")
        return self

    def input_modes(self) -> List[str]:
        """Input modes with at least one flag present"""
        modes = []
        if any(v is not None for v in (self.ax, self.ay, self.bx, self.by)):
            modes.append("cartesian")
        if any(v is not None for v in (self.ra, self.rb, self.theta, self.chord)):
            modes.append("triangle")
        if self.rectilinear or any(v is not None for v in (self.xa, self.xb)):
            modes.append("rectilinear")
        return modes

    @property
    def input_mode(self) -> str:
        return self.input_modes()[0]


class AppConfig:
    """Global application configuration"""

    # Application metadata
    APP_NAME = "Lambert Boundary Solver"
    APP_VERSION = "1.0.0"
    SCHEMA_VERSION = 1

    # CLI vocabularies
    SUBCOMMANDS = ["solve", "count", "curve", "verify"]
    ARC_CLASSES = ["direct", "indirect", "all"]
    DIRECTIONS = ["any", "ccw", "cw"]
    OUTPUT_FORMATS = ["human", "json", "csv"]
    CURVE_PARAMETERS = ["vA", "eta", "betaHat", "x"]

    # Exit codes
    EXIT_OK = 0
    EXIT_USAGE = 1
    EXIT_EMPTY = 2
    EXIT_NUMERICAL = 3

    # Curve sampling
    DEFAULT_CURVE_POINTS = 200
    CURVE_EDGE_MARGIN = 1e-3

    # Report columns
    SOLUTION_COLUMNS = [
        "n", "kind", "tail", "direction", "vA", "eta", "betaHat", "H",
        "conicType", "tofResidual", "certified", "multiplicity",
        "posX", "posY", "velX", "velY",
    ]
    CURVE_COLUMNS = ["tail", "vA", "eta", "betaHat", "x", "q", "T", "dT", "d2T"]
    CENSUS_COLUMNS = [
        "n", "direct", "indirect", "direct_certified", "indirect_certified", "tmin_direct",
    ]

    ENV_PREFIX = "LAMBERT_"

    @staticmethod
    def load_solver_config(env_file: Optional[str] = None) -> SolverConfig:
        """Load solver tolerances from LAMBERT_* environment variables (and .env)"""
        load_dotenv(env_file)
        overrides: Dict[str, str] = {}
        for name in SolverConfig.model_fields:
            raw = os.environ.get(AppConfig.ENV_PREFIX + name.upper())
            if raw is not None:
                overrides[name] = raw

        try:
            return SolverConfig(**overrides)
        except ValidationError as e:
            logger.warning("Ignoring invalid solver settings from environment: %s", e)
            return SolverConfig()

    @staticmethod
    def get_exit_codes() -> Dict[str, int]:
        """Exit code table used by the CLI"""
        return {
            "ok": AppConfig.EXIT_OK,
            "usage": AppConfig.EXIT_USAGE,
            "empty": AppConfig.EXIT_EMPTY,
            "numerical": AppConfig.EXIT_NUMERICAL,
        }
