"""
Reports produced by the command-line subcommands.

A report is plain data: the command, its inputs, numeric results and a table
of invariant checks. Serialization is deterministic (sorted keys, fixed
separators, no timestamps) so identical runs give byte-identical output.
"""

from dataclasses import dataclass, field
import json
import math
from typing import Any, Dict, List, Optional

import numpy as np

from exparabola_geom.core_geometry import Homogeneous3, Point2, Vec2

REPORT_SCHEMA_VERSION = "1.0"


@dataclass
class InvariantCheck:
    """
    One row of the invariant table.

    Attributes:
        name: Invariant identifier, e.g. "orthocenter"
        residual: Worst observed residual (dimensionless or relative to R)
        tolerance: Pass threshold; the check passes when residual <= tolerance
        detail: Optional free-form context
    """
    name: str
    residual: float
    tolerance: float
    detail: Optional[str] = None

    @property
    def passed(self) -> bool:
        return math.isfinite(self.residual) and self.residual <= self.tolerance

    def to_dict(self) -> Dict[str, Any]:
        row = {
            "name": self.name,
            "residual": self.residual,
            "tolerance": self.tolerance,
            "passed": self.passed,
        }
        if self.detail is not None:
            row["detail"] = self.detail
        return row

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'InvariantCheck':
        residual = data["residual"]
        return cls(name=data["name"],
                   residual=math.inf if residual is None else float(residual),
                   tolerance=float(data["tolerance"]), detail=data.get("detail"))


@dataclass
class Report:
    """
    Result of one subcommand.

    Attributes:
        command: Subcommand name
        inputs: Echo of the parsed inputs
        results: Numeric results
        invariants: Invariant checks
        version: Package version that produced the report
        seed: Random seed, when the command is randomized
    """
    command: str
    inputs: Dict[str, Any] = field(default_factory=dict)
    results: Dict[str, Any] = field(default_factory=dict)
    invariants: List[InvariantCheck] = field(default_factory=list)
    version: str = ""
    seed: Optional[int] = None

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.invariants)

    def check(self, name: str, residual: float, tolerance: float,
              detail: Optional[str] = None) -> InvariantCheck:
        """Append an invariant row and return it."""
        row = InvariantCheck(name, float(residual), float(tolerance), detail)
        self.invariants.append(row)
        return row

    def failures(self) -> List[InvariantCheck]:
        return [check for check in self.invariants if not check.passed]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "schema_version": REPORT_SCHEMA_VERSION,
            "command": self.command,
            "version": self.version,
            "seed": self.seed,
            "status": "PASS" if self.passed else "FAIL",
            "inputs": to_jsonable(self.inputs),
            "results": to_jsonable(self.results),
            "invariants": [to_jsonable(check.to_dict()) for check in self.invariants],
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'Report':
        return cls(
            command=data["command"],
            inputs=data.get("inputs", {}),
            results=data.get("results", {}),
            invariants=[InvariantCheck.from_dict(row) for row in data.get("invariants", [])],
            version=data.get("version", ""),
            seed=data.get("seed"),
        )


def to_jsonable(value: Any) -> Any:
    """
    Convert results into JSON-compatible data.

    Points and vectors become [x, y], homogeneous triples [x0, x1, x2],
    complex numbers [re, im], objects with to_dict() their dict, and
    non-finite floats null.
    """
    if isinstance(value, (bool, str)) or value is None:
        return value
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        return float(value) if math.isfinite(value) else None
    if isinstance(value, (complex, np.complexfloating)):
        return [to_jsonable(value.real), to_jsonable(value.imag)]
    if isinstance(value, Point2):
        return [to_jsonable(value.x), to_jsonable(value.y)]
    if isinstance(value, Vec2):
        return [to_jsonable(value.dx), to_jsonable(value.dy)]
    if isinstance(value, Homogeneous3):
        return [to_jsonable(v) for v in value.as_tuple()]
    if isinstance(value, np.ndarray):
        return to_jsonable(value.tolist())
    if isinstance(value, dict):
        return {str(key): to_jsonable(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(item) for item in value]
    if hasattr(value, "to_dict"):
        return to_jsonable(value.to_dict())
    raise TypeError(f"Cannot serialize {type(value).__name__} into a report")


def dumps(report: Report, pretty: bool = False) -> str:
    """Serialize a report; identical reports give identical text."""
    if pretty:
        text = json.dumps(report.to_dict(), sort_keys=True, indent=2, allow_nan=False)
    else:
        text = json.dumps(report.to_dict(), sort_keys=True, separators=(",", ":"),
                          allow_nan=False)
    return text + "\n"


def loads(text: str) -> Report:
    return Report.from_dict(json.loads(text))
