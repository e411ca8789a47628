"""Exception hierarchy shared by all qsaa modules."""


class QsaaError(Exception):
    """Base class for all errors raised by this package."""


class InvalidOrderError(QsaaError):
    """Root-of-unity order is out of range for the requested operation."""


class OrderMismatchError(QsaaError):
    """Two exact scalars or elements live over different root orders."""


class ParseError(QsaaError):
    """A literal or element expression could not be parsed."""


class PresentationMismatchError(QsaaError):
    """A word or element uses generators foreign to its presentation."""


class InvalidParameterError(QsaaError):
    """A constructor argument violates its stated constraints."""


class InvariantViolationError(QsaaError):
    """A structural invariant (skew symmetry, module relations, ...) fails."""


class SingularMatrixError(QsaaError):
    """Matrix inversion was requested for a singular matrix."""


class TorsionError(QsaaError):
    """An operator that must act invertibly is singular on the module."""


class NeedsHintsError(QsaaError):
    """Classification needs eigenvalue/root hints not derivable over Q(zeta)."""


class ResourceLimitError(QsaaError):
    """A guarded computation exceeded its configured size limit."""
