"""Wave/particle features and their trade-off with system-environment
correlation.

For a reduced state rho_A and path basis Pi, the wave feature W is the sum
of squared off-diagonal magnitudes of rho_A in Pi and the particle feature
P the sum of squared diagonals, so W + P = tr(rho_A^2) identically.  For a
pure bipartite state the purity deficit of rho_A is exactly (d_A + 1)
times the average correlation with the environment, giving

    W + P + (d_A + 1) Q = (tr sqrt(rho_A))^2,

which fails for generic mixed joint states.
"""

from __future__ import annotations

import numpy as np

from . import linalg, measures
from .bases import ProjectiveBasis
from .errors import DimensionMismatch, NotNormalized
from .linalg import SchmidtDecomposition
from .states import BipartiteDensityMatrix, DensityMatrix, PureState


def _basis_frame(rho: DensityMatrix, basis: ProjectiveBasis) -> np.ndarray:
    if basis.dim != rho.dim:
        raise DimensionMismatch(f"basis dim {basis.dim} != state dim {rho.dim}")
    v = basis.vectors
    return linalg.dagger(v) @ rho.matrix @ v


def wave_feature(rho_a: DensityMatrix, basis: ProjectiveBasis) -> float:
    """Sum of squared off-diagonal magnitudes of rho_A in the path basis."""
    m = _basis_frame(rho_a, basis)
    off = np.abs(m) ** 2
    return float(off.sum() - np.trace(off))


def particle_feature(rho_a: DensityMatrix, basis: ProjectiveBasis) -> float:
    """Sum of squared diagonal magnitudes of rho_A in the path basis."""
    m = _basis_frame(rho_a, basis)
    return float(np.sum(np.abs(np.diag(m)) ** 2))


def duality_identity_residual(rho_a: DensityMatrix, basis: ProjectiveBasis) -> float:
    """|W + P - tr(rho_A^2)|; zero up to rounding for every state and basis."""
    w = wave_feature(rho_a, basis)
    p = particle_feature(rho_a, basis)
    return abs(w + p - rho_a.purity())


def complementarity_terms(
    rho_ae: BipartiteDensityMatrix, basis_a: ProjectiveBasis
) -> dict[str, float]:
    """W, P, the average correlation Q, and both sides of the trade-off
    W + P + (d_A + 1) Q = (tr sqrt(rho_A))^2."""
    d_a = rho_ae.dims[0]
    rho_a = rho_ae.reduced("A")
    w = wave_feature(rho_a, basis_a)
    p = particle_feature(rho_a, basis_a)
    q = measures.avg_correlation_closed(rho_ae)
    tr_root_a = float(np.trace(rho_a.sqrt).real)
    lhs = w + p + (d_a + 1) * q
    rhs = tr_root_a * tr_root_a
    return {"wave": w, "particle": p, "correlation": q, "lhs": lhs, "rhs": rhs,
            "residual": abs(lhs - rhs)}


def complementarity_residual(
    psi: PureState, dims: tuple[int, int], basis_a: ProjectiveBasis
) -> float:
    """Absolute residual of the pure-state trade-off for |psi> on A (x) E."""
    if basis_a.dim != dims[0]:
        raise DimensionMismatch(f"basis dim {basis_a.dim} != d_A={dims[0]}")
    rho_ae = BipartiteDensityMatrix.from_pure(psi, dims)
    return complementarity_terms(rho_ae, basis_a)["residual"]


def schmidt_avg_correlation(sd: SchmidtDecomposition, d_a: int) -> float:
    """Average correlation of a pure state from its Schmidt weights:
    [(sum_mu sqrt(c_mu))^2 - sum_mu c_mu^2] / (d_A + 1)."""
    c = np.asarray(sd.coefficients, dtype=np.float64)
    total = float(c.sum())
    if abs(total - 1.0) > 1e-8:
        raise NotNormalized(f"Schmidt weights sum to {total}, expected 1")
    root_sum = float(np.sqrt(np.clip(c, 0.0, None)).sum())
    return (root_sum * root_sum - float((c * c).sum())) / (d_a + 1)
