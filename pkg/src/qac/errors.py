"""Exception types shared across the package.

Every validation error names the violated invariant and carries the
measured residual in its message, so CLI diagnostics can be produced
by printing the exception.
"""


class QacError(Exception):
    """Base class for all package errors."""


class DimensionMismatch(QacError):
    """Operands have incompatible dimensions."""


class NotHermitian(QacError):
    """Matrix deviates from its conjugate transpose beyond tolerance."""


class NotPositive(QacError):
    """Matrix has an eigenvalue below the negative tolerance."""


class TraceNotOne(QacError):
    """Trace deviates from 1 beyond tolerance."""


class NotNormalized(QacError):
    """Vector norm deviates from 1 beyond tolerance."""


class NotUnitary(QacError):
    """Columns are not orthonormal within tolerance."""


class NotPrimePower(QacError):
    """Dimension is not p^k for a prime p, so no complete MUB set is constructed."""


class CompletenessViolated(QacError):
    """Kraus operators do not sum to the identity within tolerance."""


class DimensionTooSmall(QacError):
    """Operation requires a larger dimension."""


class FileFormatError(QacError):
    """A JSON object file could not be parsed or fails its schema."""
