"""
Shared utilities: error hierarchy
"""
from .errors import (
    ComputationalError,
    DegenerateObjectiveError,
    PreconditionError,
    TeleportationError,
    ValidationError,
)

__all__ = [
    "ComputationalError",
    "DegenerateObjectiveError",
    "PreconditionError",
    "TeleportationError",
    "ValidationError",
]
