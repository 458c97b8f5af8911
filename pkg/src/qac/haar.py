"""Seeded Haar-measure sampling and Monte-Carlo averaging.

Sampling is counter-based: sample ``i`` of a run is drawn from a fresh
substream derived from ``(seed, i)``, so a sample's value never depends on
call interleaving, and parallel evaluation with a sequential-by-index
reduction reproduces the single-threaded result bitwise.  Ginibre entries
are standard complex normals produced by Box-Muller from the substream's
uniforms; unitaries are their QR factors with the R-diagonal phase
correction, which makes the distribution exactly Haar.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .bases import ProjectiveBasis
from .errors import DimensionMismatch
from .states import DensityMatrix, PureState

_U64 = (1 << 64) - 1


@dataclass
class McEstimate:
    """Monte-Carlo estimate: sample mean, standard error of the mean, count."""

    mean: float
    stderr: float
    n: int


class SeededSampler:
    """Deterministic per-sample substreams keyed by (seed, counter)."""

    def __init__(self, seed: int, counter: int = 0) -> None:
        self.seed = int(seed) & _U64
        self.counter = int(counter)

    def substream(self, index: int) -> np.random.Generator:
        """Generator for sample ``index``, independent of any other index."""
        return np.random.default_rng(np.random.SeedSequence([self.seed, int(index) & _U64]))

    def next_rng(self) -> np.random.Generator:
        rng = self.substream(self.counter)
        self.counter += 1
        return rng


def _ginibre(rng: np.random.Generator, rows: int, cols: int) -> np.ndarray:
    """Standard complex normal entries (E|z|^2 = 1) via Box-Muller."""
    u1 = rng.random((rows, cols))
    u2 = rng.random((rows, cols))
    return np.sqrt(-np.log1p(-u1)) * np.exp(2j * np.pi * u2)


def _haar_from_ginibre(g: np.ndarray) -> np.ndarray:
    """QR with phase-corrected R diagonal; supports stacked inputs."""
    q, r = np.linalg.qr(g)
    diag = np.diagonal(r, axis1=-2, axis2=-1)
    mag = np.abs(diag)
    phase = np.where(mag > 0, diag / np.where(mag > 0, mag, 1.0), 1.0)
    return q * phase[..., None, :]


def sample_ginibre(s: SeededSampler, rows: int, cols: int) -> np.ndarray:
    """Matrix of independent standard complex normals."""
    return _ginibre(s.next_rng(), rows, cols)


def sample_unitary(s: SeededSampler, d: int) -> np.ndarray:
    """One Haar-random d x d unitary from the sampler's next substream."""
    if d < 1:
        raise DimensionMismatch("d must be >= 1")
    return _haar_from_ginibre(_ginibre(s.next_rng(), d, d))


def sample_density_hs(s: SeededSampler, d: int) -> DensityMatrix:
    """Hilbert-Schmidt random state G G^dagger / tr(G G^dagger)."""
    if d < 1:
        raise DimensionMismatch("d must be >= 1")
    g = _ginibre(s.next_rng(), d, d)
    m = g @ g.conj().T
    return DensityMatrix(m / np.trace(m).real)


def sample_pure(s: SeededSampler, d: int) -> PureState:
    """Haar-random pure state (normalized Ginibre vector)."""
    if d < 1:
        raise DimensionMismatch("d must be >= 1")
    v = _ginibre(s.next_rng(), d, 1).reshape(-1)
    return PureState(v / np.linalg.norm(v))


def second_moment_closed(a: np.ndarray, b: np.ndarray, x: np.ndarray) -> np.ndarray:
    """Exact Haar average of U^dag A U X U^dag B U over the unitary group.

    Evaluates
        [d tr(AB) - tr(A) tr(B)] / [d (d^2 - 1)] * tr(X) * I
      + [d tr(A) tr(B) - tr(AB)] / [d (d^2 - 1)] * X.
    For d = 1 the integrand is constant and A X B is returned directly.
    """
    a = np.asarray(a, dtype=np.complex128)
    b = np.asarray(b, dtype=np.complex128)
    x = np.asarray(x, dtype=np.complex128)
    d = a.shape[0]
    for m in (a, b, x):
        if m.shape != (d, d):
            raise DimensionMismatch("a, b, x must share one square shape")
    if d == 1:
        return a @ x @ b
    tr_ab = np.trace(a @ b)
    tr_a = np.trace(a)
    tr_b = np.trace(b)
    denom = d * (d * d - 1)
    c_id = (d * tr_ab - tr_a * tr_b) / denom
    c_x = (d * tr_a * tr_b - tr_ab) / denom
    return c_id * np.trace(x) * np.eye(d) + c_x * x


def second_moment_mc(
    a: np.ndarray,
    b: np.ndarray,
    x: np.ndarray,
    n: int,
    seed: int,
    chunk: int = 512,
) -> tuple[np.ndarray, np.ndarray]:
    """Sample mean of U^dag A U X U^dag B U over n Haar draws, with per-entry stderr.

    Samples are reduced in index order with a fixed chunk size, so the
    result is bitwise reproducible for fixed (seed, n).
    """
    a = np.asarray(a, dtype=np.complex128)
    b = np.asarray(b, dtype=np.complex128)
    x = np.asarray(x, dtype=np.complex128)
    d = a.shape[0]
    sampler = SeededSampler(seed)
    total = np.zeros((d, d), dtype=np.complex128)
    total_abs2 = np.zeros((d, d), dtype=np.float64)
    done = 0
    while done < n:
        m = min(chunk, n - done)
        gs = np.stack([_ginibre(sampler.substream(done + i), d, d) for i in range(m)])
        us = _haar_from_ginibre(gs)
        ud = us.conj().transpose(0, 2, 1)
        terms = ud @ a @ us @ x @ ud @ b @ us
        total += terms.sum(axis=0)
        total_abs2 += (terms.real**2 + terms.imag**2).sum(axis=0)
        done += m
    mean = total / n
    var = np.maximum(total_abs2 - n * (mean.real**2 + mean.imag**2), 0.0) / max(n - 1, 1)
    stderr = np.sqrt(var / n)
    return mean, stderr


def estimate(values: list[float]) -> McEstimate:
    """Two-pass mean/stderr with sequential-by-index accumulation."""
    n = len(values)
    mean = sum(values) / n
    if n < 2:
        return McEstimate(mean=mean, stderr=0.0, n=n)
    var = sum((v - mean) ** 2 for v in values) / (n - 1)
    return McEstimate(mean=mean, stderr=float(np.sqrt(var / n)), n=n)


def mc_average(
    f: Callable[[object, ProjectiveBasis], float],
    rho,
    d: int,
    n: int,
    seed: int,
) -> McEstimate:
    """Average f(rho, U Pi U^dag) over n Haar-conjugated computational bases."""
    sampler = SeededSampler(seed)
    values = []
    for i in range(n):
        u = _haar_from_ginibre(_ginibre(sampler.substream(i), d, d))
        values.append(float(f(rho, ProjectiveBasis(u))))
    return estimate(values)
