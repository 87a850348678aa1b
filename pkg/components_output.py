"""
Report Output Component
JSON, CSV and human-readable writers for solver reports
"""

import json
import logging
import sys
from typing import Any, Dict, List, Optional

import pandas as pd
from pydantic import BaseModel, Field

from config_settings import AppConfig, CliConfig
from utils_helpers import Helpers

logger = logging.getLogger(__name__)


class StateRecord(BaseModel):
    pos: List[float]
    vel: List[float]
    direction: str


class SolutionRecord(BaseModel):
    n: int
    kind: str
    tail: str
    vA: float
    eta: float
    betaHat: float
    H: float
    conicType: str
    secondFocus: Optional[str] = None
    tofResidual: float
    certified: bool
    multiplicity: int
    iterations: int
    states: List[StateRecord] = Field(default_factory=list)


class ProblemRecord(BaseModel):
    mu: float
    tof: Optional[float] = None
    xA: float
    xB: float
    rA: Optional[float] = None
    rB: Optional[float] = None
    chord: float
    transferAngle: Optional[float] = None
    configuration: Optional[str] = None


class SolutionReport(BaseModel):
    schemaVersion: int = AppConfig.SCHEMA_VERSION
    command: str = "solve"
    problem: ProblemRecord
    solutions: List[SolutionRecord] = Field(default_factory=list)


class CensusReport(BaseModel):
    schemaVersion: int = AppConfig.SCHEMA_VERSION
    command: str = "count"
    problem: ProblemRecord
    nMax: int
    total: int
    rows: List[Dict[str, Any]] = Field(default_factory=list)


class ResidualEntry(BaseModel):
    n: int
    kind: str
    tail: str
    vA: float
    stateIndex: int
    status: str
    residual: Optional[float] = None
    sweptAngle: Optional[float] = None
    note: str = ""


class VerifyReport(BaseModel):
    schemaVersion: int = AppConfig.SCHEMA_VERSION
    command: str = "verify"
    problem: ProblemRecord
    tolerance: float
    passed: bool
    records: List[ResidualEntry] = Field(default_factory=list)


class CurveReport(BaseModel):
    schemaVersion: int = AppConfig.SCHEMA_VERSION
    command: str = "curve"
    problem: ProblemRecord
    parameter: str
    rows: List[Dict[str, Any]] = Field(default_factory=list)


class OutputComponent:
    """Render reports in the requested format"""

    @staticmethod
    def problem_record(inp, config: CliConfig) -> ProblemRecord:
        """Problem summary in user units"""
        p = inp.problem
        record = ProblemRecord(mu=config.mu, tof=config.tof, xA=inp.re.xa, xB=inp.re.xb, chord=inp.re.chord)
        if p is not None:
            record.rA = p.r_a
            record.rB = p.r_b
            record.transferAngle = p.transfer_angle
            record.configuration = p.configuration.value
        return record

    @staticmethod
    def to_json(report: BaseModel, compact: bool = False) -> str:
        return report.model_dump_json(indent=None if compact else 2)

    @staticmethod
    def to_csv(frame: pd.DataFrame) -> str:
        return frame.to_csv(index=False)

    @staticmethod
    def to_human(report: BaseModel, frame: pd.DataFrame) -> str:
        """Short header followed by an aligned table"""
        lines = [f"{AppConfig.APP_NAME} :: {report.command}"]
        problem = report.problem
        lines.append(
            f"  x_A = {Helpers.format_number(problem.xA)}   x_B = {Helpers.format_number(problem.xB)}"
            f"   c = {Helpers.format_number(problem.chord)}   mu = {Helpers.format_number(problem.mu)}"
        )
        if problem.transferAngle is not None:
            lines.append(f"  transfer angle = {Helpers.format_angle(problem.transferAngle)}")
        if problem.tof is not None:
            lines.append(f"  T = {Helpers.format_number(problem.tof)}")
        if isinstance(report, CensusReport):
            lines.append(f"  total arcs = {report.total}")
        if isinstance(report, VerifyReport):
            status = "ok" if report.passed else "failed"
            lines.append(f"  {Helpers.get_status_icon(status)} propagation check {status}")

        if frame.empty:
            lines.append("  (no rows)")
        else:
            shown = frame.apply(lambda col: col.map(Helpers.format_number) if col.dtype.kind == "f" else col)
            lines.append(shown.to_string(index=False))
        return "\n".join(lines) + "\n"

    @staticmethod
    def render(report: BaseModel, frame: pd.DataFrame, config: CliConfig) -> str:
        if config.output_format == "csv":
            return OutputComponent.to_csv(frame)
        if config.output_format == "human":
            return OutputComponent.to_human(report, frame)
        return OutputComponent.to_json(report, config.compact) + "\n"

    @staticmethod
    def render_batch(results: List[Dict[str, Any]], config: CliConfig) -> str:
        """Batch results in input order"""
        if config.output_format == "csv":
            frames = []
            for index, result in enumerate(results):
                frame = result.get("frame")
                if frame is not None:
                    frames.append(frame.assign(problem=index))
            if not frames:
                return ""
            combined = pd.concat(frames, ignore_index=True)
            columns = ["problem"] + [c for c in combined.columns if c != "problem"]
            return combined[columns].to_csv(index=False)

        if config.output_format == "human":
            blocks = []
            for index, result in enumerate(results):
                if result.get("report") is not None:
                    blocks.append(f"# problem {index}\n" + OutputComponent.to_human(result["report"], result["frame"]))
                else:
                    blocks.append(f"# problem {index}\n  {Helpers.get_status_icon('failed')} {result['error']}\n")
            return "\n".join(blocks)

        payload = []
        for result in results:
            if result.get("report") is not None:
                payload.append(result["report"].model_dump(mode="json"))
            else:
                payload.append({"schemaVersion": AppConfig.SCHEMA_VERSION, "error": result["error"],
                                "exitCode": result["exit_code"]})
        return json.dumps(payload, indent=None if config.compact else 2) + "\n"

    @staticmethod
    def write(text: str, out: Optional[str] = None):
        """Write to PATH or stdout"""
        if out:
            with open(out, "w", newline="") as f:
                f.write(text)
            logger.info("Report written to %s", out)
        else:
            sys.stdout.write(text)
