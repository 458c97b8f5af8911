"""Central numerical tolerances.

All validation and verification thresholds funnel through :func:`scaled`
so the ``QAC_TOLERANCE_SCALE`` environment variable (debugging only,
default 1) can loosen or tighten every check at once.
"""

from __future__ import annotations

import os

# Absolute tolerances; states have unit trace, so absolute ~ relative.
HERMITIAN = 1e-10
TRACE = 1e-10
EIGENVALUE = 1e-10
NORM = 1e-10
UNITARY = 1e-10
SQRT_RESIDUAL = 1e-9
MUB = 1e-10
KRAUS = 1e-10
EQUALITY = 1e-10
TIGHT = 1e-12


def scale() -> float:
    """Multiplier from QAC_TOLERANCE_SCALE, read at call time."""
    raw = os.environ.get("QAC_TOLERANCE_SCALE", "1")
    try:
        value = float(raw)
    except ValueError:
        return 1.0
    return value if value > 0 else 1.0


def scaled(tol: float) -> float:
    """Tolerance after applying the global debug scale."""
    return tol * scale()
