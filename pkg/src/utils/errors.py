"""
Exception hierarchy for the teleportation toolkit

Validation and precondition errors subclass ValueError so callers that
already catch ValueError keep working.
"""


class TeleportationError(Exception):
    """Base class for all errors raised by the package"""


class ValidationError(TeleportationError, ValueError):
    """Malformed input: wrong shape, non-symmetric matrix, bad JSON field"""


class PreconditionError(TeleportationError, ValueError):
    """Well-formed input that violates an operation's precondition"""


class ComputationalError(TeleportationError, ArithmeticError):
    """Numerically impossible intermediate result"""


class DegenerateObjectiveError(ComputationalError):
    """The objective matrix of the optimal-noise formula is singular"""
