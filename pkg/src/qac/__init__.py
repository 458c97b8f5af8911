"""Skew-information coherence and average-correlation numerics for
bipartite quantum states, with a CLI verification harness.

Every averaged quantity is exposed through several independent routes
(complete-MUB averaging, Haar Monte-Carlo, closed forms, operator-basis
and channel formulations) so each can serve as an oracle for the others.
"""

__version__ = "0.1.0"

from .errors import (  # noqa: F401
    CompletenessViolated,
    DimensionMismatch,
    DimensionTooSmall,
    FileFormatError,
    NotHermitian,
    NotNormalized,
    NotPositive,
    NotPrimePower,
    NotUnitary,
    QacError,
    TraceNotOne,
)
