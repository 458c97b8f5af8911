"""Skew-information coherence and correlation measures.

Every averaged quantity is computable by at least two independent routes,
which the test suite plays against each other:

* average coherence: MUB mean, Haar Monte-Carlo, and the closed form
  (d - (tr sqrt(rho))^2) / (d + 1);
* average correlation of a bipartite state: MUB mean, Haar Monte-Carlo,
  the closed form
  [(tr sqrt(rho_A))^2 - tr((tr_A sqrt(rho_AB))^2)] / (d_A + 1),
  the local-observable (operator basis) sum, the depolarizing-channel
  route, and d_A/(d_A+1) times the twirling-channel correlation.
"""

from __future__ import annotations

import numpy as np

from . import linalg, tolerances
from .bases import HermitianOperatorBasis, MubSet, ProjectiveBasis
from .channels import KrausChannel
from .errors import DimensionMismatch
from .haar import McEstimate, SeededSampler, estimate, sample_unitary
from .states import BipartiteDensityMatrix, DensityMatrix


def skew_information(rho: DensityMatrix, obs: np.ndarray) -> float:
    """-1/2 tr([sqrt(rho), O]^2) for a Hermitian observable O.

    Equals half the squared Hilbert-Schmidt norm of [sqrt(rho), O], so the
    value is nonnegative up to rounding.
    """
    o = linalg.require_hermitian(obs)
    if o.shape[0] != rho.dim:
        raise DimensionMismatch(f"observable dim {o.shape[0]} != state dim {rho.dim}")
    comm = rho.sqrt @ o - o @ rho.sqrt
    return -0.5 * float(np.trace(comm @ comm).real)


def skew_information_general(rho: DensityMatrix, k: np.ndarray) -> float:
    """Skew information extended to arbitrary (non-Hermitian) arguments K.

    Defined as (tr(rho K K^dag) + tr(rho K^dag K)) / 2 - tr(sqrt(rho) K^dag sqrt(rho) K).
    Reduces to the commutator form for Hermitian K; for unitary K it is
    1 - tr(sqrt(rho) K^dag sqrt(rho) K).
    """
    k = linalg.as_complex(k)
    if k.shape != (rho.dim, rho.dim):
        raise DimensionMismatch(f"argument shape {k.shape} != state dim {rho.dim}")
    kd = linalg.dagger(k)
    root = rho.sqrt
    quad = 0.5 * float((np.trace(rho.matrix @ k @ kd) + np.trace(rho.matrix @ kd @ k)).real)
    cross = float(np.trace(root @ kd @ root @ k).real)
    return quad - cross


def coherence(rho: DensityMatrix, basis: ProjectiveBasis) -> float:
    """Sum of skew informations of the rank-1 projectors of the basis."""
    if basis.dim != rho.dim:
        raise DimensionMismatch(f"basis dim {basis.dim} != state dim {rho.dim}")
    return sum(skew_information(rho, basis.projector(i)) for i in range(basis.dim))


def partial_coherence(rho: BipartiteDensityMatrix, basis_a: ProjectiveBasis) -> float:
    """Coherence of a bipartite state under a local measurement on A,
    i.e. sum_i I(rho_AB, |i><i| (x) 1_B)."""
    d_a, d_b = rho.dims
    if basis_a.dim != d_a:
        raise DimensionMismatch(f"basis dim {basis_a.dim} != d_A={d_a}")
    eye_b = np.eye(d_b, dtype=np.complex128)
    return sum(
        skew_information(rho.state, linalg.tensor_product(basis_a.projector(i), eye_b))
        for i in range(d_a)
    )


def correlation(rho: BipartiteDensityMatrix, basis_a: ProjectiveBasis) -> float:
    """Global minus local basis coherence: C(rho_AB | Pi (x) I_B) - C(rho_A | Pi)."""
    return partial_coherence(rho, basis_a) - coherence(rho.reduced("A"), basis_a)


def avg_coherence_mub(rho: DensityMatrix, mubs: MubSet) -> float:
    """Arithmetic mean of the coherence over a complete MUB family."""
    if mubs.dim != rho.dim:
        raise DimensionMismatch(f"MUB dim {mubs.dim} != state dim {rho.dim}")
    return sum(coherence(rho, b) for b in mubs) / len(mubs)


def avg_coherence_closed(rho: DensityMatrix) -> float:
    """Closed form (d - (tr sqrt(rho))^2) / (d + 1) of the average coherence."""
    tr_root = float(np.trace(rho.sqrt).real)
    return (rho.dim - tr_root * tr_root) / (rho.dim + 1)


def avg_correlation_mub(rho: BipartiteDensityMatrix, mubs: MubSet) -> float:
    """Mean of the basis correlation over a complete MUB family on party A."""
    d_a = rho.dims[0]
    if mubs.dim != d_a:
        raise DimensionMismatch(f"MUB dim {mubs.dim} != d_A={d_a}")
    return sum(correlation(rho, b) for b in mubs) / len(mubs)


def avg_correlation_closed(rho: BipartiteDensityMatrix) -> float:
    """Closed form of the average correlation.

    [(tr sqrt(rho_A))^2 - tr(M^2)] / (d_A + 1) with M = tr_A sqrt(rho_AB),
    an operator on party B.
    """
    d_a = rho.dims[0]
    tr_root_a = float(np.trace(rho.reduced("A").sqrt).real)
    m = linalg.partial_trace(rho.sqrt, rho.dims, over="A")
    tr_m2 = float(np.trace(m @ m).real)
    return (tr_root_a * tr_root_a - tr_m2) / (d_a + 1)


def correlation_operator_basis(rho: BipartiteDensityMatrix, g: HermitianOperatorBasis) -> float:
    """Local-observable correlation:
    (1/(d_A+1)) sum_i [I(rho_AB, G_i (x) 1_B) - I(rho_A, G_i)]."""
    d_a, d_b = rho.dims
    if g.dim != d_a:
        raise DimensionMismatch(f"operator basis dim {g.dim} != d_A={d_a}")
    eye_b = np.eye(d_b, dtype=np.complex128)
    rho_a = rho.reduced("A")
    total = sum(
        skew_information(rho.state, linalg.tensor_product(op, eye_b))
        - skew_information(rho_a, op)
        for op in g
    )
    return total / (d_a + 1)


def channel_coherence(rho: DensityMatrix, ch: KrausChannel) -> float:
    """Coherence relative to a channel: sum of skew informations of its
    Kraus operators (general form, so non-Hermitian families work too)."""
    if ch.dim_in != rho.dim:
        raise DimensionMismatch(f"channel dim {ch.dim_in} != state dim {rho.dim}")
    return sum(skew_information_general(rho, k) for k in ch.kraus)


def depolarizing_correlation(rho: BipartiteDensityMatrix, ch: KrausChannel) -> float:
    """Correlation relative to the depolarizing channel on party A:
    C(rho_AB | E (x) I_B) - C(rho_A | E), with E given by its Kraus family."""
    d_a, d_b = rho.dims
    if ch.dim_in != d_a or ch.dim_out != d_a:
        raise DimensionMismatch(f"channel dims ({ch.dim_in}, {ch.dim_out}) != d_A={d_a}")
    eye_b = np.eye(d_b, dtype=np.complex128)
    global_part = sum(
        skew_information_general(rho.state, linalg.tensor_product(k, eye_b))
        for k in ch.kraus
    )
    local_part = channel_coherence(rho.reduced("A"), ch)
    return global_part - local_part


def twirling_correlation_closed(rho: BipartiteDensityMatrix) -> float:
    """Correlation relative to the twirling channel:
    [(tr sqrt(rho_A))^2 - tr((tr_A sqrt(rho_AB))^2)] / d_A."""
    d_a = rho.dims[0]
    return avg_correlation_closed(rho) * (d_a + 1) / d_a


def twirling_correlation_mc(rho: BipartiteDensityMatrix, n: int, seed: int) -> McEstimate:
    """Monte-Carlo twirling correlation:
    average of I(rho_AB, U_A (x) 1_B) - I(rho_A, U_A) over Haar U_A."""
    d_a, d_b = rho.dims
    eye_b = np.eye(d_b, dtype=np.complex128)
    rho_a = rho.reduced("A")
    sampler = SeededSampler(seed)
    values = []
    for _ in range(n):
        u = sample_unitary(sampler, d_a)
        values.append(
            skew_information_general(rho.state, linalg.tensor_product(u, eye_b))
            - skew_information_general(rho_a, u)
        )
    return estimate(values)
