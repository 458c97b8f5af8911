"""Validated quantum-state types with cached square roots.

A ``DensityMatrix`` checks hermiticity, unit trace and positivity once at
construction and computes its PSD square root lazily, exactly once; every
measure reads that cache.  ``BipartiteDensityMatrix`` adds the (d_A, d_B)
split and reduced states.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import linalg, tolerances
from .errors import DimensionMismatch, NotNormalized, NotPositive, TraceNotOne


class DensityMatrix:
    """Hermitian, unit-trace, PSD matrix with a lazily cached square root.

    The instance is immutable after construction; the square-root cache is
    populate-once (concurrent initializations compute the same value, and
    attribute assignment is atomic, so readers see absent or final).
    """

    __slots__ = ("dim", "matrix", "_sqrt")

    def __init__(self, matrix) -> None:
        m = linalg.require_hermitian(matrix)
        tr = float(np.trace(m).real)
        if abs(tr - 1.0) > tolerances.scaled(tolerances.TRACE):
            raise TraceNotOne(f"trace residual {abs(tr - 1.0):.3e} exceeds 1e-10")
        w = np.linalg.eigvalsh(m)
        if float(w.min()) < -tolerances.scaled(tolerances.EIGENVALUE):
            raise NotPositive(f"eigenvalue {float(w.min()):.3e} below -1e-10")
        self.dim = m.shape[0]
        self.matrix = m
        self.matrix.setflags(write=False)
        self._sqrt = None

    @property
    def sqrt(self) -> np.ndarray:
        """PSD square root, computed at most once."""
        cached = self._sqrt
        if cached is None:
            cached = linalg.psd_sqrt(self.matrix)
            cached.setflags(write=False)
            self._sqrt = cached
        return cached

    def purity(self) -> float:
        """tr(rho^2)."""
        return float(np.trace(self.matrix @ self.matrix).real)

    def __repr__(self) -> str:  # pragma: no cover
        return f"DensityMatrix(dim={self.dim})"


@dataclass(frozen=True)
class PureState:
    """Unit-norm complex amplitude vector."""

    amplitudes: np.ndarray

    def __post_init__(self) -> None:
        amps = linalg.as_complex(self.amplitudes).reshape(-1)
        norm = float(np.linalg.norm(amps))
        if abs(norm - 1.0) > tolerances.scaled(tolerances.NORM):
            raise NotNormalized(f"norm residual {abs(norm - 1.0):.3e} exceeds 1e-10")
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    @property
    def dim(self) -> int:
        return self.amplitudes.size


class BipartiteDensityMatrix:
    """Density matrix on H^A x H^B with the A-major index convention."""

    __slots__ = ("dims", "state", "_reduced")

    def __init__(self, matrix, dims: tuple[int, int]) -> None:
        d_a, d_b = int(dims[0]), int(dims[1])
        state = matrix if isinstance(matrix, DensityMatrix) else DensityMatrix(matrix)
        if state.dim != d_a * d_b:
            raise DimensionMismatch(
                f"state dimension {state.dim} does not equal {d_a} * {d_b}"
            )
        self.dims = (d_a, d_b)
        self.state = state
        self._reduced: dict[str, DensityMatrix] = {}

    @classmethod
    def from_pure(cls, psi: PureState, dims: tuple[int, int]) -> "BipartiteDensityMatrix":
        return cls(from_pure(psi), dims)

    @property
    def matrix(self) -> np.ndarray:
        return self.state.matrix

    @property
    def sqrt(self) -> np.ndarray:
        return self.state.sqrt

    def reduced(self, party: str) -> DensityMatrix:
        """Reduced state of ``party`` ("A" or "B"), cached."""
        if party not in ("A", "B"):
            raise ValueError(f"party must be 'A' or 'B', got {party!r}")
        out = self._reduced.get(party)
        if out is None:
            out = DensityMatrix(linalg.partial_trace(self.matrix, self.dims, over="B" if party == "A" else "A"))
            self._reduced[party] = out
        return out

    def __repr__(self) -> str:  # pragma: no cover
        return f"BipartiteDensityMatrix(dims={self.dims})"


def validate(matrix) -> DensityMatrix:
    """Validate a raw matrix as a density operator.

    Raises NotHermitian / TraceNotOne / NotPositive naming the violated
    invariant together with the measured residual.
    """
    return DensityMatrix(matrix)


def from_pure(psi: PureState) -> DensityMatrix:
    """Rank-1 projector |psi><psi|; it is its own PSD square root."""
    amps = psi.amplitudes / np.linalg.norm(psi.amplitudes)
    rho = DensityMatrix(np.outer(amps, amps.conj()))
    # A normalized projector is idempotent, so it is its own square root;
    # seeding the cache keeps pure-state measures exact.
    rho._sqrt = rho.matrix
    return rho


def reduced(state: BipartiteDensityMatrix, party: str) -> DensityMatrix:
    """Reduced state of one party of a bipartite state."""
    return state.reduced(party)
