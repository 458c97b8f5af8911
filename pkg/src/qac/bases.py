"""Measurement bases: projective bases, complete MUB families, and the
Hermitian operator basis.

``mub_construct`` builds a complete set of d+1 mutually unbiased bases for
any prime-power dimension d <= 64:

* d = 2: the three Pauli eigenbases (the generic exponent formula needs
  modification at characteristic 2, so the qubit is special-cased).
* odd prime power q = p^k: the computational basis plus, for each a in
  GF(q), the basis with components  omega_p^tr(a x^2 + b x) / sqrt(q)
  (omega_p = exp(2 pi i / p), tr the field trace to GF(p), b the vector
  index, x the component index).
* q = 2^k, k >= 2: the computational basis plus, for each a, the basis
  with components  i^(tr(ax) + 2 s(ax) + 2 tr(bx)) / sqrt(q), where s is
  the conjugate-pair sum from :mod:`qac.galois`.  The exponent is the
  Galois-ring trace of (a + 2b) x expressed through GF(2^k) data.

Every constructed or conjugated set is certified on the spot: pairwise
unbiasedness, the resolution sum_(t,i) |b><b| = (d+1) I, and the pair
identity sum_(t,i) |b><b| (x) |b><b| = I (x) I + F (F the swap operator),
all within 1e-10 max-norm.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import linalg, tolerances
from .errors import DimensionMismatch, NotUnitary, QacError
from .galois import MAX_FIELD_SIZE, GaloisField, prime_power_decomposition


class CertificationFailed(QacError):
    """A constructed basis family fails its defining identities."""


class ProjectiveBasis:
    """Orthonormal basis stored as the columns of a d x d matrix."""

    __slots__ = ("dim", "vectors")

    def __init__(self, vectors) -> None:
        v = linalg.as_complex(vectors)
        if v.ndim != 2 or v.shape[0] != v.shape[1]:
            raise DimensionMismatch(f"basis matrix must be square, got {v.shape}")
        gram_dev = linalg.max_norm(linalg.dagger(v) @ v - np.eye(v.shape[0]))
        if gram_dev > tolerances.scaled(tolerances.UNITARY):
            raise NotUnitary(f"Gram residual {gram_dev:.3e} exceeds 1e-10")
        v.setflags(write=False)
        self.dim = v.shape[0]
        self.vectors = v

    def vector(self, i: int) -> np.ndarray:
        return self.vectors[:, i]

    def projector(self, i: int) -> np.ndarray:
        v = self.vectors[:, i]
        return np.outer(v, v.conj())

    def __repr__(self) -> str:  # pragma: no cover
        return f"ProjectiveBasis(dim={self.dim})"


@dataclass(frozen=True)
class MubCertification:
    """Residuals of the three MUB identities and the verdict at tolerance."""

    dim: int
    n_bases: int
    tolerance: float
    max_unbiasedness_dev: float
    max_completeness_dev: float
    max_pair_identity_dev: float
    unbiased: bool
    complete: bool
    passed: bool


class MubSet:
    """A certified complete family of d+1 mutually unbiased bases."""

    __slots__ = ("dim", "bases")

    def __init__(self, bases: Sequence[ProjectiveBasis]) -> None:
        cert = mub_certify(bases)
        if not cert.passed:
            raise CertificationFailed(
                "MUB certification failed: "
                f"unbiasedness dev {cert.max_unbiasedness_dev:.3e}, "
                f"completeness dev {cert.max_completeness_dev:.3e}, "
                f"pair identity dev {cert.max_pair_identity_dev:.3e}"
            )
        self.dim = bases[0].dim
        self.bases = tuple(bases)

    def __len__(self) -> int:
        return len(self.bases)

    def __iter__(self):
        return iter(self.bases)

    def __repr__(self) -> str:  # pragma: no cover
        return f"MubSet(dim={self.dim}, n_bases={len(self.bases)})"


class HermitianOperatorBasis:
    """d^2 Hermitian matrices, orthonormal in the Hilbert-Schmidt inner product."""

    __slots__ = ("dim", "operators")

    def __init__(self, dim: int, operators: Sequence[np.ndarray]) -> None:
        ops = [linalg.require_hermitian(g) for g in operators]
        if len(ops) != dim * dim:
            raise DimensionMismatch(f"expected {dim * dim} operators, got {len(ops)}")
        flat = np.stack([g.reshape(-1) for g in ops])
        gram = flat @ flat.conj().T
        dev = linalg.max_norm(gram - np.eye(len(ops)))
        if dev > tolerances.scaled(tolerances.UNITARY):
            raise NotUnitary(f"HS Gram residual {dev:.3e} exceeds 1e-10")
        self.dim = dim
        self.operators = tuple(ops)

    def __iter__(self):
        return iter(self.operators)

    def __len__(self) -> int:
        return len(self.operators)


def standard_basis(d: int) -> ProjectiveBasis:
    """Computational basis."""
    if d < 1:
        raise DimensionMismatch("d must be >= 1")
    return ProjectiveBasis(np.eye(d, dtype=np.complex128))


def fourier_basis(d: int) -> ProjectiveBasis:
    """Discrete Fourier basis, unbiased with the computational one."""
    x = np.arange(d)
    mat = np.exp(2j * np.pi * np.outer(x, x) / d) / np.sqrt(d)
    return ProjectiveBasis(mat)


def _fix_phases(mat: np.ndarray) -> np.ndarray:
    """Make the first component of magnitude > 1e-12 of each column real positive."""
    out = mat.copy()
    for j in range(out.shape[1]):
        col = out[:, j]
        idx = np.flatnonzero(np.abs(col) > 1e-12)
        pivot = col[idx[0]]
        out[:, j] = col * (pivot.conjugate() / abs(pivot))
    return out


def _mub_qubit() -> list[np.ndarray]:
    s = 1 / np.sqrt(2.0)
    z = np.eye(2, dtype=np.complex128)
    x = np.array([[s, s], [s, -s]], dtype=np.complex128)
    y = np.array([[s, s], [1j * s, -1j * s]], dtype=np.complex128)
    return [z, x, y]


def _mub_odd_prime_power(gf: GaloisField) -> list[np.ndarray]:
    q, p = gf.order, gf.p
    omega = np.exp(2j * np.pi / p)
    xs = np.arange(q)
    sq = gf.mul_table[xs, xs]  # x^2
    mats = [np.eye(q, dtype=np.complex128)]
    for a in range(q):
        quad = gf.trace[gf.mul_table[a, sq]]  # tr(a x^2), per component x
        lin = gf.trace[gf.mul_table[np.arange(q)[None, :], xs[:, None]]]  # tr(b x): rows x, cols b
        expo = (quad[:, None] + lin) % p
        mats.append(omega**expo / np.sqrt(q))
    return mats


def _mub_even_prime_power(gf: GaloisField) -> list[np.ndarray]:
    q = gf.order
    xs = np.arange(q)
    s_map = gf.conj_pair_sum
    mats = [np.eye(q, dtype=np.complex128)]
    for a in range(q):
        ax = gf.mul_table[a, xs]  # per component x
        quad = (gf.trace[ax] + 2 * s_map[ax]) % 4  # Galois-ring trace of the Teichmueller lift
        lin = 2 * gf.trace[gf.mul_table[np.arange(q)[None, :], xs[:, None]]]  # rows x, cols b
        expo = (quad[:, None] + lin) % 4
        mats.append(1j**expo / np.sqrt(q))
    return mats


def mub_construct(d: int) -> MubSet:
    """Complete set of d+1 MUBs for a prime-power dimension d <= 64.

    Raises NotPrimePower for composite non-prime-power d (no complete set
    is known there, and the construction does not apply).
    """
    if d > MAX_FIELD_SIZE:
        raise ValueError(f"dimension {d} exceeds the cap {MAX_FIELD_SIZE}")
    p, k = prime_power_decomposition(d)
    if d == 2:
        mats = _mub_qubit()
    else:
        gf = GaloisField(p, k)
        mats = _mub_even_prime_power(gf) if p == 2 else _mub_odd_prime_power(gf)
    return MubSet([ProjectiveBasis(_fix_phases(m)) for m in mats])


def mub_certify(bases: Sequence[ProjectiveBasis], tol: float | None = None) -> MubCertification:
    """Measure how far a basis family is from a complete MUB set.

    Reports the worst deviation of cross-basis overlap magnitudes squared
    from 1/d, and of the two sum identities (resolution to (d+1) I and the
    pair identity against I (x) I + F).  ``passed`` requires all three
    within tolerance, which for the identities implies the family is
    complete (d+1 bases).
    """
    if not bases:
        raise DimensionMismatch("empty basis family")
    d = bases[0].dim
    if any(b.dim != d for b in bases):
        raise DimensionMismatch("bases have mixed dimensions")
    tol = tolerances.scaled(tolerances.MUB) if tol is None else tol

    w = np.hstack([b.vectors for b in bases])  # d x N, N = d * n_bases
    overlaps = np.abs(linalg.dagger(w) @ w) ** 2
    n = len(bases)
    unb_dev = 0.0
    for t in range(n):
        for s in range(t + 1, n):
            block = overlaps[t * d : (t + 1) * d, s * d : (s + 1) * d]
            unb_dev = max(unb_dev, float(np.max(np.abs(block - 1.0 / d))))

    completeness = w @ linalg.dagger(w) - (d + 1) * np.eye(d)
    comp_dev = linalg.max_norm(completeness)

    pair_cols = np.einsum("ik,jk->ijk", w, w).reshape(d * d, w.shape[1])
    pair_sum = pair_cols @ linalg.dagger(pair_cols)
    pair_dev = linalg.max_norm(pair_sum - np.eye(d * d) - linalg.swap_operator(d))

    unbiased = unb_dev <= tol
    complete = comp_dev <= tol and pair_dev <= tol
    return MubCertification(
        dim=d,
        n_bases=n,
        tolerance=tol,
        max_unbiasedness_dev=unb_dev,
        max_completeness_dev=comp_dev,
        max_pair_identity_dev=pair_dev,
        unbiased=unbiased,
        complete=complete,
        passed=unbiased and complete,
    )


def operator_basis(d: int) -> HermitianOperatorBasis:
    """Hermitian orthonormal basis {|i><i|} U {S_ij} U {T_ij} of the d x d operators.

    S_ij = (|i><j| + |j><i|) / sqrt(2),  T_ij = i (|i><j| - |j><i|) / sqrt(2)
    for i < j.  Satisfies sum tr(G)^2 = d and sum tr(G^2) = d^2.
    """
    if d < 1:
        raise DimensionMismatch("d must be >= 1")
    ops: list[np.ndarray] = []
    for i in range(d):
        e = np.zeros((d, d), dtype=np.complex128)
        e[i, i] = 1.0
        ops.append(e)
    inv_sqrt2 = 1 / np.sqrt(2.0)
    for i in range(d):
        for j in range(i + 1, d):
            s = np.zeros((d, d), dtype=np.complex128)
            s[i, j] = s[j, i] = inv_sqrt2
            ops.append(s)
            t = np.zeros((d, d), dtype=np.complex128)
            t[i, j] = 1j * inv_sqrt2
            t[j, i] = -1j * inv_sqrt2
            ops.append(t)
    return HermitianOperatorBasis(d, ops)


def conjugate_basis_set(mubs: MubSet, u: np.ndarray) -> MubSet:
    """Map every vector b -> u^dagger b; the result is re-certified."""
    u = linalg.as_complex(u)
    if u.shape != (mubs.dim, mubs.dim):
        raise DimensionMismatch(f"unitary shape {u.shape} does not match dim {mubs.dim}")
    res = linalg.max_norm(linalg.dagger(u) @ u - np.eye(mubs.dim))
    if res > tolerances.scaled(tolerances.UNITARY):
        raise NotUnitary(f"unitarity residual {res:.3e} exceeds 1e-10")
    ud = linalg.dagger(u)
    return MubSet([ProjectiveBasis(_fix_phases(ud @ b.vectors)) for b in mubs])
