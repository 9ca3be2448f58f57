"""Exception hierarchy shared across the package.

The CLI maps these onto process exit codes, so user-facing entry points
should raise the most specific class that applies.
"""


class QContourError(Exception):
    """Base class for all package-specific errors."""


class ModelFormatError(QContourError, ValueError):
    """A model or state file could not be parsed (CLI exit code 2)."""


class ValidationError(QContourError, ValueError):
    """Numerical validation of an input failed (CLI exit code 3)."""


class DimensionMismatchError(ValidationError):
    """Operands live in Hilbert spaces of different dimension."""


class ZeroNormalizationError(QContourError, ArithmeticError):
    """Every history consistent with the constraints carries zero weight,
    so relative measures are undefined (CLI exit code 4)."""


class EnumerationGuardError(QContourError, RuntimeError):
    """A requested exhaustive enumeration exceeds the guard limit
    (CLI exit code 5)."""
