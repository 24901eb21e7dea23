"""Exception hierarchy shared by every shiftlap module.

Each error carries a stable kebab-case ``code`` so the HTTP service and the
CLI can report failures uniformly.
"""

from __future__ import annotations


class ShiftCalculusError(Exception):
    """Base class for all domain errors raised by this package."""

    code = "shift-calculus-error"


class AlphabetMismatchError(ShiftCalculusError):
    """Two operands were built over alphabets of different sizes."""

    code = "alphabet-mismatch"


class LevelTooSmallError(ShiftCalculusError):
    """A level argument is below the smallest level at which the point/operation exists."""

    code = "level-too-small"


class LevelMismatchError(ShiftCalculusError):
    """A level function does not live on the vertex set the operation expects."""

    code = "level-mismatch"


class LevelOrderError(ShiftCalculusError):
    """Level arguments violate a required strict ordering (e.g. target <= source)."""

    code = "level-order"


class ResourceLimitError(ShiftCalculusError):
    """An enumeration would exceed the configured point cap."""

    code = "resource-limit"


class DomainError(ShiftCalculusError):
    """An argument lies outside the set on which the operator is defined."""

    code = "domain"


class SamePointError(ShiftCalculusError):
    """The Green's kernel was requested on the diagonal, where it is not defined."""

    code = "same-point"


class BoundaryMismatchError(ShiftCalculusError):
    """A point does not belong to the declared boundary vertex set."""

    code = "boundary-mismatch"


class ArityError(ShiftCalculusError):
    """Boundary data does not have one entry per alphabet symbol."""

    code = "arity"


class IncompatibleBoundaryError(ShiftCalculusError):
    """Neumann data fails the exact compatibility condition.

    ``defect`` maps each symbol literal to the exact difference between the
    prescribed derivative and the one the load admits.
    """

    code = "incompatible-boundary-data"

    def __init__(self, message, defect):
        super().__init__(message)
        self.defect = defect


class FunctionSpecError(ShiftCalculusError):
    """A function specification (JSON or shorthand) is malformed."""

    code = "function-spec"
