"""
Error hierarchy shared by every layer of the workbench.

Library code raises these; the CLI service layer maps them to exit codes.
"""

from typing import Optional


class GorhomError(Exception):
    """Base class for all workbench errors."""


class DimensionMismatchError(GorhomError, ValueError):
    """Matrix or module shapes do not compose."""


class RingMismatchError(GorhomError, ValueError):
    """Operands live over different base rings."""


class UnsupportedRingError(GorhomError):
    """The operation is refused for this ring (e.g. cosyzygies over Z)."""


class NotComputableError(GorhomError):
    """A class membership or dimension cannot be decided in this context."""


class InvariantViolationError(GorhomError):
    """A constructed object failed its re-verification."""

    def __init__(self, message: str, degree: Optional[int] = None):
        if degree is not None:
            message = f"{message} (at degree {degree})"
        super().__init__(message)
        self.degree = degree


class PreconditionError(GorhomError, ValueError):
    """A documented precondition of an operation does not hold."""


class FiltrationError(GorhomError):
    """The peeling strategy produced no admissible chain."""


class OracleBoundError(GorhomError):
    """An exhaustive enumeration would exceed its configured cap."""


class LiteralParseError(GorhomError):
    """Syntax or invariant error in literal text, with its source position."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column
        self.reason = message
