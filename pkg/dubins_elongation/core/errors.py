"""
Exception hierarchy for path analysis and synthesis.

Every exception derives from ValueError so callers that only guard
against bad input keep working.
"""

from typing import Any, Optional


class DubinsPathError(ValueError):
    """Base class for all errors raised by dubins_elongation."""


class DegenerateInput(DubinsPathError):
    """Start and goal poses coincide exactly."""


class NotInNablaO(DubinsPathError):
    """Operation requires a pair with no O1-O5 membership and a CSC shortest path."""

    def __init__(self, message: str, classification: Any = None):
        super().__init__(message)
        self.classification = classification


class NoParallelTangents(DubinsPathError):
    """Path has no arc of at least π radians."""


class NotAStraight(DubinsPathError):
    """Requested segment is missing or is not a straight."""

    def __init__(self, message: str, index: int):
        super().__init__(message)
        self.index = index


class SegmentTooShort(DubinsPathError):
    """Straight is shorter than the chord a wave deformation needs."""

    def __init__(self, message: str, available: float, required: float):
        super().__init__(message)
        self.available = available
        self.required = required


class FamilyDiscontinuity(DubinsPathError):
    """No continuous one-parameter family joins the requested paths."""


class InfeasibleLength(DubinsPathError):
    """Requested length lies below the shortest length or inside the gap."""

    def __init__(self, target: float, feasible_set: Any):
        describe = getattr(feasible_set, 'describe', None)
        shown = describe() if callable(describe) else str(feasible_set)
        super().__init__(f"Length {target:.12g} is not achievable; feasible lengths: {shown}")
        self.target = target
        self.feasible_set = feasible_set


class ToleranceNotMet(DubinsPathError):
    """Root finding stopped before reaching the requested length."""

    def __init__(self, target: float, achieved: Optional[float], detail: str = ""):
        achieved_text = "none" if achieved is None else f"{achieved:.12g}"
        message = f"Could not reach length {target:.12g} (closest achieved {achieved_text})"
        if detail:
            message = f"{message}: {detail}"
        super().__init__(message)
        self.target = target
        self.achieved = achieved


class NoSolutionFound(DubinsPathError):
    """Brute-force search found no path meeting the boundary conditions."""


class ProblemFileError(DubinsPathError):
    """Problem file could not be parsed or failed schema validation."""

    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None):
        if line is not None:
            message = f"line {line}, column {column}: {message}"
        super().__init__(message)
        self.line = line
        self.column = column
