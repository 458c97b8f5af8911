"""Verification suites: seeded, machine-checkable batteries for every
claimed identity and inequality.

Each suite draws its randomness from substreams of one root seed, so a
report is byte-identical across runs with the same arguments.  The report
schema is versioned; a check passes when ``max_residual <= tolerance``
unless the check name ends in ``-exceeds`` (used for guard checks that
must witness a LARGE residual, e.g. the mixed-state counterexample of the
pure-state complementarity relation).
"""

from __future__ import annotations

import platform
from dataclasses import dataclass, field
from typing import Any, Callable

import numpy as np

from . import __version__, duality, linalg, measures
from .bases import ProjectiveBasis, conjugate_basis_set, mub_certify, mub_construct, operator_basis
from .channels import apply_on_b, depolarizing_kraus, random_channel
from .errors import DimensionMismatch
from .haar import (
    SeededSampler,
    mc_average,
    sample_density_hs,
    sample_ginibre,
    sample_pure,
    sample_unitary,
    second_moment_closed,
    second_moment_mc,
)
from .states import BipartiteDensityMatrix, DensityMatrix

SCHEMA_VERSION = 1


def derive_seed(seed: int, *tags: int) -> int:
    """Deterministic 64-bit sub-seed for an independent sampling context."""
    ss = np.random.SeedSequence([int(seed) & ((1 << 64) - 1), *[int(t) for t in tags]])
    return int(ss.generate_state(1, dtype=np.uint64)[0])


@dataclass
class CheckResult:
    name: str
    trials: int
    max_residual: float
    tolerance: float
    passed: bool

    def to_dict(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "trials": self.trials,
            "max_residual": self.max_residual,
            "tolerance": self.tolerance,
            "pass": self.passed,
        }


@dataclass
class VerifyReport:
    suite: str
    dims: tuple[int, ...]
    trials: int
    seed: int
    mc_samples: int
    checks: list[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_dict(self) -> dict[str, Any]:
        return {
            "schema_version": SCHEMA_VERSION,
            "suite": self.suite,
            "dims": list(self.dims),
            "trials": self.trials,
            "seed": self.seed,
            "mc_samples": self.mc_samples,
            "checks": [c.to_dict() for c in self.checks],
            "pass": self.passed,
            "versions": {
                "qac": __version__,
                "numpy": np.__version__,
                "python": platform.python_version(),
            },
        }


def _upper_check(name: str, trials: int, residual: float, tol: float) -> CheckResult:
    return CheckResult(name, trials, float(residual), tol, residual <= tol)


def _lower_check(name: str, trials: int, residual: float, tol: float) -> CheckResult:
    # pass when the witnessed residual EXCEEDS the tolerance
    return CheckResult(name, trials, float(residual), tol, residual > tol)


def _random_bipartite(sampler: SeededSampler, dims: tuple[int, int]) -> BipartiteDensityMatrix:
    d_a, d_b = dims
    return BipartiteDensityMatrix(sample_density_hs(sampler, d_a * d_b), dims)


def _random_product(sampler: SeededSampler, dims: tuple[int, int]) -> BipartiteDensityMatrix:
    d_a, d_b = dims
    rho_a = sample_density_hs(sampler, d_a)
    rho_b = sample_density_hs(sampler, d_b)
    return BipartiteDensityMatrix(
        linalg.tensor_product(rho_a.matrix, rho_b.matrix), dims
    )


def _mc_ratio(mean: float, target: float, stderr: float) -> float:
    if stderr == 0.0:
        return 0.0 if abs(mean - target) < 1e-12 else float("inf")
    return abs(mean - target) / stderr


# -- suites ---------------------------------------------------------------------


def suite_prop1a(dims, trials, seed, mc_samples) -> list[CheckResult]:
    """Non-negativity of the average correlation; zero on product states."""
    sampler = SeededSampler(seed)
    worst_neg = 0.0
    for _ in range(trials):
        q = measures.avg_correlation_closed(_random_bipartite(sampler, dims))
        worst_neg = max(worst_neg, -q)
    product_trials = max(1, trials // 5)
    worst_prod = 0.0
    for _ in range(product_trials):
        q = measures.avg_correlation_closed(_random_product(sampler, dims))
        worst_prod = max(worst_prod, abs(q))
    return [
        _upper_check("nonnegativity", trials, worst_neg, 1e-12),
        _upper_check("product-state-zero", product_trials, worst_prod, 1e-12),
    ]


def suite_prop1b(dims, trials, seed, mc_samples) -> list[CheckResult]:
    """Contractivity under channels on party B (environment dimension 2)."""
    sampler = SeededSampler(seed)
    worst = 0.0
    for t in range(trials):
        rho = _random_bipartite(sampler, dims)
        ch = random_channel(dims[1], 2, derive_seed(seed, 1, t))
        before = measures.avg_correlation_closed(rho)
        after = measures.avg_correlation_closed(apply_on_b(ch, rho))
        worst = max(worst, after - before)
    return [_upper_check("contractivity", trials, max(worst, 0.0), 1e-10)]


def suite_prop1c(dims, trials, seed, mc_samples) -> list[CheckResult]:
    """Invariance of the MUB-averaged correlation under local unitaries."""
    d_a, d_b = dims
    mubs = mub_construct(d_a)
    sampler = SeededSampler(seed)
    worst = 0.0
    for _ in range(trials):
        rho = _random_bipartite(sampler, dims)
        u_a = sample_unitary(sampler, d_a)
        u_b = sample_unitary(sampler, d_b)
        u = linalg.tensor_product(u_a, u_b)
        rotated = BipartiteDensityMatrix(u @ rho.matrix @ linalg.dagger(u), dims)
        worst = max(
            worst,
            abs(
                measures.avg_correlation_mub(rho, mubs)
                - measures.avg_correlation_mub(rotated, mubs)
            ),
        )
    return [_upper_check("local-unitary-invariance", trials, worst, 1e-10)]


def suite_prop2(dims, trials, seed, mc_samples) -> list[CheckResult]:
    """Haar Monte-Carlo average correlation against the closed form."""
    sampler = SeededSampler(seed)
    worst_ratio = 0.0
    for t in range(trials):
        rho = _random_bipartite(sampler, dims)
        est = mc_average(
            measures.correlation, rho, dims[0], mc_samples, derive_seed(seed, 2, t)
        )
        worst_ratio = max(
            worst_ratio, _mc_ratio(est.mean, measures.avg_correlation_closed(rho), est.stderr)
        )
    return [_upper_check("haar-mc-vs-closed(stderr-units)", trials, worst_ratio, 5.0)]


def suite_prop3(dims, trials, seed, mc_samples) -> list[CheckResult]:
    """Triple equality: MUB mean = closed form = operator-basis sum (+ MC spot check)."""
    d_a, _ = dims
    mubs = mub_construct(d_a)
    ob = operator_basis(d_a)
    sampler = SeededSampler(seed)
    worst_mub = worst_ob = 0.0
    first_state = None
    for _ in range(trials):
        rho = _random_bipartite(sampler, dims)
        if first_state is None:
            first_state = rho
        q_closed = measures.avg_correlation_closed(rho)
        worst_mub = max(worst_mub, abs(measures.avg_correlation_mub(rho, mubs) - q_closed))
        worst_ob = max(
            worst_ob, abs(measures.correlation_operator_basis(rho, ob) - q_closed)
        )
    checks = [
        _upper_check("mub-vs-closed", trials, worst_mub, 1e-10),
        _upper_check("operator-basis-vs-closed", trials, worst_ob, 1e-10),
    ]
    if first_state is not None and mc_samples > 0:
        est = mc_average(
            measures.correlation, first_state, d_a, mc_samples, derive_seed(seed, 3)
        )
        ratio = _mc_ratio(
            est.mean, measures.avg_correlation_closed(first_state), est.stderr
        )
        checks.append(_upper_check("haar-mc-vs-closed(stderr-units)", 1, ratio, 5.0))
    return checks


def suite_prop4(dims, trials, seed, mc_samples) -> list[CheckResult]:
    """Pure-state complementarity; the plain duality identity; and a mixed
    counterexample witnessing that the relation needs purity."""
    d_a, d_e = dims
    sampler = SeededSampler(seed)
    worst_wpc = 0.0
    for _ in range(trials):
        psi = sample_pure(sampler, d_a * d_e)
        basis = ProjectiveBasis(sample_unitary(sampler, d_a))
        worst_wpc = max(worst_wpc, duality.complementarity_residual(psi, dims, basis))
    worst_wpd = 0.0
    for _ in range(trials):
        rho = sample_density_hs(sampler, d_a)
        basis = ProjectiveBasis(sample_unitary(sampler, d_a))
        worst_wpd = max(worst_wpd, duality.duality_identity_residual(rho, basis))
    mixed = BipartiteDensityMatrix(
        np.eye(d_a * d_e, dtype=np.complex128) / (d_a * d_e), dims
    )
    counter = duality.complementarity_terms(mixed, ProjectiveBasis(np.eye(d_a)))["residual"]
    return [
        _upper_check("pure-state-complementarity", trials, worst_wpc, 1e-10),
        _upper_check("duality-identity", trials, worst_wpd, 1e-12),
        _lower_check("mixed-counterexample-exceeds", 1, counter, 1e-3),
    ]


def suite_eq1(dims, trials, seed, mc_samples) -> list[CheckResult]:
    """Average coherence: MUB mean vs closed form, invariance under a
    conjugated MUB family, and a Haar MC spot check."""
    d = dims[0]
    mubs = mub_construct(d)
    sampler = SeededSampler(seed)
    worst_eq = worst_conj = 0.0
    first_state = None
    for t in range(trials):
        rho = sample_density_hs(sampler, d)
        if first_state is None:
            first_state = rho
        closed = measures.avg_coherence_closed(rho)
        worst_eq = max(worst_eq, abs(measures.avg_coherence_mub(rho, mubs) - closed))
        rotated = conjugate_basis_set(mubs, sample_unitary(sampler, d))
        worst_conj = max(
            worst_conj, abs(measures.avg_coherence_mub(rho, rotated) - closed)
        )
    checks = [
        _upper_check("mub-vs-closed", trials, worst_eq, 1e-10),
        _upper_check("conjugated-mub-invariance", trials, worst_conj, 1e-10),
    ]
    if first_state is not None and mc_samples > 0:
        est = mc_average(
            measures.coherence, first_state, d, mc_samples, derive_seed(seed, 4)
        )
        ratio = _mc_ratio(est.mean, measures.avg_coherence_closed(first_state), est.stderr)
        checks.append(_upper_check("haar-mc-vs-closed(stderr-units)", 1, ratio, 5.0))
    return checks


def suite_haar_moment(dims, trials, seed, mc_samples) -> list[CheckResult]:
    """Second-moment unitary integral: closed form vs Monte-Carlo, plus the
    exact single-qubit diagonal case."""
    d = dims[0]
    sampler = SeededSampler(seed)
    worst_ratio = 0.0
    for t in range(trials):
        a = sample_ginibre(sampler, d, d)
        b = sample_ginibre(sampler, d, d)
        x = sample_ginibre(sampler, d, d)
        mean, stderr = second_moment_mc(a, b, x, mc_samples, derive_seed(seed, 5, t))
        closed = second_moment_closed(a, b, x)
        dev = np.abs(mean - closed)
        ratio = float(np.max(np.where(stderr > 0, dev / np.where(stderr > 0, stderr, 1.0), np.where(dev < 1e-12, 0.0, np.inf))))
        worst_ratio = max(worst_ratio, ratio)
    sigma_z = np.diag([1.0, -1.0]).astype(np.complex128)
    exact = second_moment_closed(sigma_z, sigma_z, sigma_z)
    exact_dev = linalg.max_norm(exact + sigma_z / 3)
    return [
        _upper_check("closed-vs-mc(stderr-units)", trials, worst_ratio, 5.0),
        _upper_check("exact-qubit-diagonal-case", 1, exact_dev, 1e-12),
    ]


def suite_mub_identities(dims, trials, seed, mc_samples) -> list[CheckResult]:
    """Certify constructed MUB families: unbiasedness plus both sum identities."""
    checks = []
    for d in dims:
        cert = mub_certify(mub_construct(d).bases)
        checks.extend(
            [
                _upper_check(f"unbiasedness-d{d}", 1, cert.max_unbiasedness_dev, 1e-10),
                _upper_check(f"completeness-d{d}", 1, cert.max_completeness_dev, 1e-10),
                _upper_check(f"pair-identity-d{d}", 1, cert.max_pair_identity_dev, 1e-10),
            ]
        )
    return checks


def suite_channel_eq(dims, trials, seed, mc_samples) -> list[CheckResult]:
    """Depolarizing-channel route vs operator-basis route vs twirling scaling."""
    d_a, _ = dims
    ob = operator_basis(d_a)
    depol = depolarizing_kraus(d_a, ob)
    sampler = SeededSampler(seed)
    worst_depol = worst_twirl = 0.0
    for _ in range(trials):
        rho = _random_bipartite(sampler, dims)
        q_ob = measures.correlation_operator_basis(rho, ob)
        worst_depol = max(
            worst_depol, abs(measures.depolarizing_correlation(rho, depol) - q_ob)
        )
        q_tw = measures.twirling_correlation_closed(rho)
        worst_twirl = max(worst_twirl, abs(q_ob - d_a / (d_a + 1) * q_tw))
    return [
        _upper_check("depolarizing-vs-operator-basis", trials, worst_depol, 1e-10),
        _upper_check("twirling-scaling", trials, worst_twirl, 1e-12),
    ]


SUITES: dict[str, Callable[..., list[CheckResult]]] = {
    "prop1a": suite_prop1a,
    "prop1b": suite_prop1b,
    "prop1c": suite_prop1c,
    "prop2": suite_prop2,
    "prop3": suite_prop3,
    "prop4": suite_prop4,
    "eq1": suite_eq1,
    "haar-moment": suite_haar_moment,
    "mub-identities": suite_mub_identities,
    "channel-eq": suite_channel_eq,
}

DEFAULT_DIMS: dict[str, tuple[int, ...]] = {
    "prop1a": (2, 2),
    "prop1b": (2, 2),
    "prop1c": (2, 2),
    "prop2": (2, 2),
    "prop3": (2, 3),
    "prop4": (2, 2),
    "eq1": (3,),
    "haar-moment": (3,),
    "mub-identities": (2, 3, 4, 5, 7, 8, 9, 11, 13),
    "channel-eq": (2, 2),
}

DEFAULT_TRIALS: dict[str, int] = {
    "prop2": 5,
    "haar-moment": 5,
    "mub-identities": 1,
}


def run_suite(
    suite: str,
    dims: tuple[int, ...] | None = None,
    trials: int | None = None,
    seed: int = 0,
    mc_samples: int = 10_000,
) -> VerifyReport:
    if suite not in SUITES:
        raise KeyError(f"unknown suite {suite!r}; choose from {sorted(SUITES)}")
    dims = DEFAULT_DIMS[suite] if dims is None else tuple(dims)
    trials = DEFAULT_TRIALS.get(suite, 50) if trials is None else trials
    if suite not in ("eq1", "haar-moment", "mub-identities") and len(dims) != 2:
        raise DimensionMismatch(f"suite {suite} needs dims d_A,d_B, got {dims}")
    if suite in ("eq1", "haar-moment") and len(dims) != 1:
        raise DimensionMismatch(f"suite {suite} needs a single dim, got {dims}")
    checks = SUITES[suite](dims, trials, seed, mc_samples)
    return VerifyReport(
        suite=suite, dims=dims, trials=trials, seed=seed, mc_samples=mc_samples,
        checks=checks,
    )
