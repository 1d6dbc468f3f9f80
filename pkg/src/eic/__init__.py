"""Embedded index coding: exact and heuristic broadcast schedules over GF(2)."""

from .errors import (
    CoverError,
    EicError,
    GenerationError,
    ParseError,
    SimulationError,
    SizeError,
    UnsupportedError,
    ValidationError,
)
from .limits import DEFAULT_LIMITS, Limits
from .problem import EicProblem, RequirementPair, parse, requirement_pairs, serialize

__version__ = "0.1.0"

__all__ = [
    "CoverError",
    "DEFAULT_LIMITS",
    "EicError",
    "EicProblem",
    "GenerationError",
    "Limits",
    "ParseError",
    "RequirementPair",
    "SimulationError",
    "SizeError",
    "UnsupportedError",
    "ValidationError",
    "parse",
    "requirement_pairs",
    "serialize",
]
