"""Dense complex linear algebra primitives.

Everything downstream (states, bases, channels, measures) is built on the
operations here: Hermitian eigendecomposition, PSD matrix square root,
Kronecker products, partial traces, the swap operator and the Schmidt
decomposition.  The global index convention is A-major: on a composite
space the row index is ``a * d_B + b``, i.e. subsystem A varies slowest.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from . import tolerances
from .errors import DimensionMismatch, NotHermitian, NotNormalized, NotPositive


class EigenDecomposition(NamedTuple):
    """Hermitian eigendecomposition with ascending eigenvalues."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray  # orthonormal columns


class SchmidtDecomposition(NamedTuple):
    """Bipartite pure-state decomposition sum_mu sqrt(c_mu) |a_mu> x |b_mu>.

    ``coefficients`` are the squared Schmidt weights, descending, summing
    to 1 for a normalized input.
    """

    coefficients: np.ndarray
    basis_a: np.ndarray  # orthonormal columns on the A factor
    basis_b: np.ndarray  # orthonormal columns on the B factor


def as_complex(m) -> np.ndarray:
    """Coerce to a complex128 array and reject NaN/Inf entries."""
    out = np.asarray(m, dtype=np.complex128)
    if not np.all(np.isfinite(out.view(np.float64))):
        raise ValueError("matrix contains non-finite entries")
    return out


def dagger(m: np.ndarray) -> np.ndarray:
    """Conjugate transpose."""
    return m.conj().T


def max_norm(m: np.ndarray) -> float:
    """Largest entry magnitude; 0 for empty input."""
    return float(np.max(np.abs(m))) if m.size else 0.0


def hermiticity_residual(m: np.ndarray) -> float:
    """max |m - m^dagger|."""
    return max_norm(m - dagger(m))


def require_hermitian(m: np.ndarray, tol: float | None = None) -> np.ndarray:
    """Validate hermiticity and return the symmetrized matrix."""
    m = as_complex(m)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got shape {m.shape}")
    tol = tolerances.scaled(tolerances.HERMITIAN) if tol is None else tol
    res = hermiticity_residual(m)
    if res > tol:
        raise NotHermitian(f"hermiticity residual {res:.3e} exceeds {tol:.1e}")
    return (m + dagger(m)) / 2


def eig_hermitian(m: np.ndarray) -> EigenDecomposition:
    """Eigendecomposition of a Hermitian matrix, verified to reconstruct.

    The contract is the reconstruction quality, not the algorithm:
    ``V diag(w) V^dagger`` must match ``m`` and ``V^dagger V`` the identity,
    both within 1e-10 relative to the max-norm.
    """
    h = require_hermitian(m)
    w, v = np.linalg.eigh(h)
    tol = tolerances.scaled(1e-10) * max(1.0, max_norm(h))
    recon = (v * w) @ dagger(v)
    if max_norm(recon - h) > tol:
        raise ArithmeticError("eigendecomposition failed to reconstruct input")
    if max_norm(dagger(v) @ v - np.eye(h.shape[0])) > tol:
        raise ArithmeticError("eigenvector matrix is not unitary")
    return EigenDecomposition(w, v)


def psd_sqrt(m: np.ndarray) -> np.ndarray:
    """Hermitian PSD square root via eigendecomposition.

    Eigenvalues in [-tol, 0) are clamped to 0 (floating noise); anything
    below -tol, with tol = 1e-10 * max(1, max|eigenvalue|), is a hard
    NotPositive error.
    """
    w, v = eig_hermitian(m)
    tol = tolerances.scaled(tolerances.EIGENVALUE) * max(1.0, float(np.max(np.abs(w))) if w.size else 1.0)
    if np.any(w < -tol):
        raise NotPositive(f"eigenvalue {float(np.min(w)):.3e} below -{tol:.1e}")
    w = np.where(w < 0, 0.0, w)
    root = (v * np.sqrt(w)) @ dagger(v)
    return (root + dagger(root)) / 2


def tensor_product(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product with the A-major convention (row = a_row * d_b + b_row)."""
    return np.kron(as_complex(a), as_complex(b))


def partial_trace(m: np.ndarray, dims: tuple[int, int], over: str) -> np.ndarray:
    """Trace out one party of an operator on H^A x H^B.

    ``over`` is ``"A"`` or ``"B"``; the result lives on the remaining
    party.  The total trace is preserved exactly up to rounding.
    """
    m = as_complex(m)
    d_a, d_b = dims
    n = d_a * d_b
    if m.shape != (n, n):
        raise DimensionMismatch(f"matrix shape {m.shape} does not match dims {dims}")
    t = m.reshape(d_a, d_b, d_a, d_b)
    if over == "B":
        return np.einsum("abcb->ac", t)
    if over == "A":
        return np.einsum("abad->bd", t)
    raise ValueError(f"over must be 'A' or 'B', got {over!r}")


def swap_operator(d: int) -> np.ndarray:
    """Swap matrix F = sum_kl |k><l| x |l><k| on H_d x H_d.

    Entries are exactly 0/1; F = F^T = F^dagger, F^2 = I, and
    tr(F (rho x sigma)) = tr(rho sigma).
    """
    if d < 1:
        raise ValueError("d must be >= 1")
    f = np.zeros((d * d, d * d), dtype=np.complex128)
    for k in range(d):
        for l in range(d):
            f[k * d + l, l * d + k] = 1.0
    return f


def schmidt_decompose(psi: np.ndarray, dims: tuple[int, int]) -> SchmidtDecomposition:
    """Schmidt decomposition of a normalized bipartite state vector.

    The coefficients are the squared singular values of the d_A x d_B
    reshaping of ``psi`` (A-major), in descending order; ties keep the
    SVD's encounter order.
    """
    psi = as_complex(psi).reshape(-1)
    d_a, d_b = dims
    if psi.size != d_a * d_b:
        raise DimensionMismatch(f"vector length {psi.size} does not match dims {dims}")
    norm = float(np.linalg.norm(psi))
    if abs(norm - 1.0) > tolerances.scaled(tolerances.NORM):
        raise NotNormalized(f"norm residual {abs(norm - 1.0):.3e} exceeds 1e-10")
    mat = psi.reshape(d_a, d_b)
    u, s, vh = np.linalg.svd(mat, full_matrices=False)
    return SchmidtDecomposition(s * s, u, vh.T)
