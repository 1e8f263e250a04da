"""
Error Types

Every failure the library raises on purpose derives from SemicutError and
carries its structured fields as attributes. The CLI maps these to exit
code 2.
"""

from typing import Optional


class SemicutError(Exception):
    """Base class for all semicut errors."""


# =============================================================================
# Instance validation
# =============================================================================

class InvalidInstanceError(SemicutError, ValueError):
    """The input does not describe a valid semi-complete digraph."""


class MatrixShapeError(InvalidInstanceError):
    def __init__(self, message: str):
        super().__init__(message)


class LoopPresentError(InvalidInstanceError):
    def __init__(self, vertex: int):
        self.vertex = vertex
        super().__init__(f"loop present at vertex {vertex}")


class MissingArcPairError(InvalidInstanceError):
    def __init__(self, u: int, v: int):
        self.u = u
        self.v = v
        super().__init__(f"neither arc ({u},{v}) nor ({v},{u}) is present")


class WeightBelowOneError(InvalidInstanceError):
    def __init__(self, u: int, v: int, weight: object):
        self.u = u
        self.v = v
        self.weight = weight
        super().__init__(f"weight {weight} of arc ({u},{v}) is below 1")


class WeightOnMissingArcError(InvalidInstanceError):
    def __init__(self, u: int, v: int):
        self.u = u
        self.v = v
        super().__init__(f"weight given for missing arc ({u},{v})")


# =============================================================================
# Parameters and calls
# =============================================================================

class InvalidParameterError(SemicutError, ValueError):
    """A numeric argument is outside its documented range."""


class WeightedCalledOnUnweightedError(SemicutError):
    def __init__(self, operation: str = "weighted operation"):
        self.operation = operation
        super().__init__(f"{operation} requires a weighted instance")


class ParseError(SemicutError):
    def __init__(self, message: str, line: int, column: int = 1):
        self.line = line
        self.column = column
        self.reason = message
        super().__init__(f"line {line}, column {column}: {message}")


class InstanceTooLargeForOracleError(SemicutError):
    def __init__(self, n: int, limit: int):
        self.n = n
        self.limit = limit
        super().__init__(f"instance has {n} vertices, brute force is limited to {limit}")


class SourceOrSinkMissingError(SemicutError):
    def __init__(self, message: str = "cut graph lacks (∅,V) or (V,∅)"):
        super().__init__(message)


class MalformedSolutionError(SemicutError):
    """A candidate certificate is not a solution of the right shape."""


class IOFailureError(SemicutError):
    def __init__(self, path: str, reason: Optional[str] = None):
        self.path = path
        self.reason = reason
        super().__init__(f"cannot access {path}" + (f": {reason}" if reason else ""))


class SolverInvariantError(SemicutError):
    """A certificate produced by a solver failed independent re-verification."""
