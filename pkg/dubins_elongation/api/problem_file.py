"""
Problem file schema and loader.

A problem file is a JSON document::

    {
      "kappa": 1.0,
      "vehicles": [
        {"id": "1",
         "start": {"x": 3.5313, "y": -0.8619, "theta": 0.5305},
         "goal": {"x": 1.7320508, "y": 0.0, "theta": 0.0},
         "target_length": 9.7219}
      ]
    }

Headings are radians, counterclockwise from +x. Unknown fields are
rejected; ``target_length`` is optional per vehicle.
"""

import json
from pathlib import Path
from typing import List, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, PositiveFloat, ValidationError, field_validator

from ..core.errors import ProblemFileError
from ..core.fleet import FleetProblem, Vehicle
from ..utils.geometry import CurvatureBound, OrientedPose
from ..utils.logging import logger


class PoseModel(BaseModel):
    model_config = ConfigDict(extra='forbid')

    x: float = Field(allow_inf_nan=False)
    y: float = Field(allow_inf_nan=False)
    theta: float = Field(allow_inf_nan=False)

    def to_pose(self) -> OrientedPose:
        return OrientedPose(self.x, self.y, self.theta)


class VehicleModel(BaseModel):
    model_config = ConfigDict(extra='forbid')

    id: Union[int, str]
    start: PoseModel
    goal: PoseModel
    target_length: Optional[PositiveFloat] = None

    @field_validator('id')
    @classmethod
    def _id_as_text(cls, value: Union[int, str]) -> str:
        text = str(value).strip()
        if not text:
            raise ValueError("vehicle id must not be empty")
        return text


class ProblemFile(BaseModel):
    model_config = ConfigDict(extra='forbid')

    kappa: PositiveFloat = Field(allow_inf_nan=False)
    vehicles: List[VehicleModel] = Field(min_length=1)

    @field_validator('vehicles')
    @classmethod
    def _unique_ids(cls, vehicles: List[VehicleModel]) -> List[VehicleModel]:
        ids = [str(v.id) for v in vehicles]
        duplicates = sorted({i for i in ids if ids.count(i) > 1})
        if duplicates:
            raise ValueError(f"duplicate vehicle ids: {', '.join(duplicates)}")
        return vehicles

    @property
    def bound(self) -> CurvatureBound:
        return CurvatureBound(self.kappa)

    def to_fleet_problem(self) -> FleetProblem:
        """
        Raises:
            DegenerateInput: if any vehicle's start equals its goal
        """
        return FleetProblem(
            bound=self.bound,
            vehicles=tuple(Vehicle(str(v.id), v.start.to_pose(), v.goal.to_pose()) for v in self.vehicles),
        )


def parse_problem(text: str, source: str = '<string>') -> ProblemFile:
    """
    Parse problem-file JSON.

    Raises:
        ProblemFileError: on malformed JSON (with line/column) or schema violations
    """
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ProblemFileError(f"{source}: invalid JSON: {exc.msg}", line=exc.lineno, column=exc.colno) from exc

    try:
        problem = ProblemFile.model_validate(data)
    except ValidationError as exc:
        details = '; '.join(
            f"{'.'.join(str(part) for part in err['loc']) or '<root>'}: {err['msg']}"
            for err in exc.errors()
        )
        raise ProblemFileError(f"{source}: {details}") from exc

    logger.debug("Loaded %s: kappa=%s, %d vehicles", source, problem.kappa, len(problem.vehicles))
    return problem


def load_problem(path: Union[str, Path]) -> ProblemFile:
    """Read and parse a problem file from disk."""
    path = Path(path)
    try:
        text = path.read_text(encoding='utf-8')
    except OSError as exc:
        raise ProblemFileError(f"Cannot read problem file {path}: {exc.strerror}") from exc
    return parse_problem(text, source=str(path))
