"""Quantum channels in Kraus form.

Completeness (sum K^dag K = I) is verified at construction; application is
the standard sum K rho K^dag.  ``random_channel`` draws the Kraus family
as the blocks of a Haar-random isometry, which yields a uniform, always
valid channel for contractivity sweeps.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from . import linalg, tolerances
from .bases import HermitianOperatorBasis
from .errors import CompletenessViolated, DimensionMismatch
from .haar import SeededSampler, sample_unitary
from .states import BipartiteDensityMatrix, DensityMatrix


class KrausChannel:
    """Completely positive trace-preserving map as a list of Kraus operators."""

    __slots__ = ("dim_in", "dim_out", "kraus")

    def __init__(self, kraus: Sequence[np.ndarray]) -> None:
        ops = [linalg.as_complex(k) for k in kraus]
        if not ops:
            raise DimensionMismatch("a channel needs at least one Kraus operator")
        dim_out, dim_in = ops[0].shape
        if any(k.shape != (dim_out, dim_in) for k in ops):
            raise DimensionMismatch("Kraus operators have mixed shapes")
        residual = linalg.max_norm(
            sum(linalg.dagger(k) @ k for k in ops) - np.eye(dim_in)
        )
        if residual > tolerances.scaled(tolerances.KRAUS):
            raise CompletenessViolated(
                f"sum K^dag K deviates from identity by {residual:.3e}"
            )
        self.dim_in = dim_in
        self.dim_out = dim_out
        self.kraus = tuple(ops)

    def __len__(self) -> int:
        return len(self.kraus)

    def __repr__(self) -> str:  # pragma: no cover
        return f"KrausChannel(dim_in={self.dim_in}, dim_out={self.dim_out}, n={len(self.kraus)})"


def depolarizing_kraus(d: int, g: HermitianOperatorBasis) -> KrausChannel:
    """Depolarizing channel: identity plus a complete Hermitian operator
    basis, each rescaled by 1/sqrt(d+1).

    Yields d^2 + 1 Kraus operators; the constructor verifies completeness
    numerically rather than assuming it.
    """
    if g.dim != d:
        raise DimensionMismatch(f"operator basis dim {g.dim} does not match d={d}")
    scale = 1 / np.sqrt(d + 1.0)
    ops = [scale * np.eye(d, dtype=np.complex128)]
    ops.extend(scale * op for op in g)
    return KrausChannel(ops)


def apply(ch: KrausChannel, rho: DensityMatrix) -> DensityMatrix:
    """sum_K K rho K^dag, revalidated as a state."""
    if ch.dim_in != rho.dim:
        raise DimensionMismatch(f"channel input dim {ch.dim_in} != state dim {rho.dim}")
    out = sum(k @ rho.matrix @ linalg.dagger(k) for k in ch.kraus)
    return DensityMatrix(out)


def apply_on_b(ch: KrausChannel, rho: BipartiteDensityMatrix) -> BipartiteDensityMatrix:
    """Act with the channel on party B only: sum (I_A x K) rho (I_A x K)^dag."""
    d_a, d_b = rho.dims
    if ch.dim_in != d_b:
        raise DimensionMismatch(f"channel input dim {ch.dim_in} != d_B={d_b}")
    eye_a = np.eye(d_a, dtype=np.complex128)
    out = sum(
        (lifted := linalg.tensor_product(eye_a, k)) @ rho.matrix @ linalg.dagger(lifted)
        for k in ch.kraus
    )
    return BipartiteDensityMatrix(out, (d_a, ch.dim_out))


def random_channel(d: int, env_dim: int, seed: int) -> KrausChannel:
    """Channel from the d-column blocks of a Haar-random isometry d -> d * env_dim.

    Deterministic for a fixed seed; env_dim = 1 reduces to a single
    Haar-random unitary Kraus operator.
    """
    if env_dim < 1:
        raise DimensionMismatch("env_dim must be >= 1")
    sampler = SeededSampler(seed)
    u = sample_unitary(sampler, d * env_dim)
    isometry = u[:, :d]
    blocks = [isometry[e * d : (e + 1) * d, :] for e in range(env_dim)]
    return KrausChannel(blocks)
