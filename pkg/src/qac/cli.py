"""Command-line front end.

Exit codes: 0 success / all checks pass; 1 invariant violation or
dimension mismatch; 2 unknown measure or failed verification check;
64 file, parse and usage errors.
"""

from __future__ import annotations

import json
import sys

import click
import numpy as np

from . import duality, fileio, measures
from .bases import MubSet, ProjectiveBasis, mub_certify, mub_construct, operator_basis, standard_basis
from .channels import depolarizing_kraus, random_channel
from .errors import DimensionMismatch, FileFormatError, NotPrimePower, QacError
from .haar import SeededSampler, sample_density_hs, sample_pure, sample_unitary
from .states import BipartiteDensityMatrix, DensityMatrix
from .verify import SUITES, run_suite


class _Failure(Exception):
    """Carries a non-zero exit code with a printable message."""

    def __init__(self, code: int, message: str) -> None:
        super().__init__(message)
        self.code = code


def _fmt(value: float) -> str:
    return f"{value:.12g}"


def _parse_dims(text: str | None) -> tuple[int, ...] | None:
    if text is None:
        return None
    try:
        dims = tuple(int(part) for part in text.split(","))
    except ValueError as exc:
        raise click.UsageError(f"--dims must be comma-separated integers: {exc}")
    if not dims or any(d < 1 for d in dims):
        raise click.UsageError(f"--dims must be positive integers, got {text!r}")
    return dims


@click.group()
def cli() -> None:
    """Coherence / average-correlation measures and verification suites."""


@cli.command()
@click.argument("path", type=click.Path())
def validate(path: str) -> None:
    """Validate a state file; exit 0 if it encodes a density matrix."""
    state = fileio.load_state(path)
    dims = state.dims if isinstance(state, BipartiteDensityMatrix) else (state.dim,)
    click.echo(f"valid: dims={list(dims)}")


MEASURES = (
    "skew",
    "coherence",
    "avg-coherence",
    "avg-coherence-mub",
    "partial-coherence",
    "correlation",
    "avg-correlation",
    "avg-correlation-mub",
    "qob",
    "depolarizing",
    "twirling",
    "twirling-mc",
    "wave",
    "particle",
    "wp-residual",
)

_BIPARTITE_ONLY = {
    "partial-coherence",
    "correlation",
    "avg-correlation",
    "avg-correlation-mub",
    "qob",
    "depolarizing",
    "twirling",
    "twirling-mc",
}


def _global_state(state) -> DensityMatrix:
    return state.state if isinstance(state, BipartiteDensityMatrix) else state


def _local_state(state) -> DensityMatrix:
    return state.reduced("A") if isinstance(state, BipartiteDensityMatrix) else state


def _need_bipartite(state, name: str) -> BipartiteDensityMatrix:
    if not isinstance(state, BipartiteDensityMatrix):
        raise DimensionMismatch(
            f"measure {name!r} needs a bipartite state (two dims in the file)"
        )
    return state


def _basis_for(state: DensityMatrix, basis_path: str | None) -> ProjectiveBasis:
    if basis_path is None:
        return standard_basis(state.dim)
    basis = fileio.load_basis(basis_path)
    return basis


def _mubs_for(dim: int, mub_path: str | None) -> MubSet:
    return mub_construct(dim) if mub_path is None else fileio.load_mubs(mub_path)


@cli.command()
@click.argument("path", type=click.Path())
@click.argument("name")
@click.option("--basis", "basis_path", type=click.Path(), default=None,
              help="Projective basis file (default: computational).")
@click.option("--observable", "observable_path", type=click.Path(), default=None,
              help="Hermitian matrix file for the 'skew' measure.")
@click.option("--mub", "mub_path", type=click.Path(), default=None,
              help="MUB family file (default: constructed for the dimension).")
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--trials", "-n", "n", type=int, default=10_000, show_default=True,
              help="Sample count for Monte-Carlo measures.")
@click.option("--json", "as_json", is_flag=True, default=False)
def measure(path, name, basis_path, observable_path, mub_path, seed, n, as_json):
    """Evaluate one measure of the state in PATH."""
    if name not in MEASURES:
        raise _Failure(2, f"unknown measure {name!r}; choose from {', '.join(MEASURES)}")
    state = fileio.load_state(path)
    if name in _BIPARTITE_ONLY:
        _need_bipartite(state, name)

    stderr = count = None
    if name == "skew":
        if observable_path is None:
            raise click.UsageError("measure 'skew' needs --observable")
        value = measures.skew_information(
            _global_state(state), fileio.load_matrix(observable_path)
        )
    elif name == "coherence":
        rho = _global_state(state)
        value = measures.coherence(rho, _basis_for(rho, basis_path))
    elif name == "avg-coherence":
        value = measures.avg_coherence_closed(_global_state(state))
    elif name == "avg-coherence-mub":
        rho = _global_state(state)
        value = measures.avg_coherence_mub(rho, _mubs_for(rho.dim, mub_path))
    elif name == "partial-coherence":
        value = measures.partial_coherence(
            state, _basis_for(state.reduced("A"), basis_path)
        )
    elif name == "correlation":
        value = measures.correlation(state, _basis_for(state.reduced("A"), basis_path))
    elif name == "avg-correlation":
        value = measures.avg_correlation_closed(state)
    elif name == "avg-correlation-mub":
        value = measures.avg_correlation_mub(state, _mubs_for(state.dims[0], mub_path))
    elif name == "qob":
        value = measures.correlation_operator_basis(state, operator_basis(state.dims[0]))
    elif name == "depolarizing":
        d_a = state.dims[0]
        value = measures.depolarizing_correlation(
            state, depolarizing_kraus(d_a, operator_basis(d_a))
        )
    elif name == "twirling":
        value = measures.twirling_correlation_closed(state)
    elif name == "twirling-mc":
        est = measures.twirling_correlation_mc(state, n, seed)
        value, stderr, count = est.mean, est.stderr, est.n
    elif name == "wave":
        rho = _local_state(state)
        value = duality.wave_feature(rho, _basis_for(rho, basis_path))
    elif name == "particle":
        rho = _local_state(state)
        value = duality.particle_feature(rho, _basis_for(rho, basis_path))
    else:  # wp-residual
        rho = _local_state(state)
        value = duality.duality_identity_residual(rho, _basis_for(rho, basis_path))

    if as_json:
        payload = {"measure": name, "value": value}
        if stderr is not None:
            payload.update({"stderr": stderr, "n": count})
        click.echo(json.dumps(payload))
    elif stderr is not None:
        click.echo(f"{_fmt(value)} stderr={_fmt(stderr)} n={count}")
    else:
        click.echo(_fmt(value))


@cli.command()
@click.option("--dim", type=int, default=None, help="Construct a complete MUB family.")
@click.option("--out", "out_path", type=click.Path(), default=None)
@click.option("--certify", "certify_path", type=click.Path(), default=None,
              help="Certify the basis family in this file instead.")
@click.option("--json", "as_json", is_flag=True, default=False)
def mub(dim, out_path, certify_path, as_json):
    """Construct or certify complete MUB families."""
    if certify_path is not None:
        cert = mub_certify(fileio.decode_bases(fileio.load_json(certify_path)))
        if as_json:
            click.echo(json.dumps(cert.__dict__))
        else:
            click.echo(f"unbiasedness deviation:  {cert.max_unbiasedness_dev:.3e}")
            click.echo(f"completeness deviation:  {cert.max_completeness_dev:.3e}")
            click.echo(f"pair-identity deviation: {cert.max_pair_identity_dev:.3e}")
            click.echo("pass" if cert.passed else "FAIL")
        if not cert.passed:
            raise _Failure(2, "certification failed")
        return
    if dim is None:
        raise click.UsageError("provide --dim with --out, or --certify FILE")
    mubs = mub_construct(dim)
    if out_path is None:
        raise click.UsageError("provide --out to write the constructed family")
    fileio.dump_json(out_path, fileio.encode_mubs(mubs))
    click.echo(f"wrote {len(mubs.bases)} bases of dimension {dim} to {out_path}")


@cli.command("random")
@click.option("--kind", type=click.Choice(["state", "pure", "bipartite", "unitary", "channel"]),
              required=True)
@click.option("--dims", "dims_text", default=None,
              help="Dimension(s), e.g. '3' or '2,3' (bipartite).")
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--env-dim", type=int, default=2, show_default=True,
              help="Environment dimension for --kind channel.")
@click.option("--out", "out_path", type=click.Path(), required=True)
def random_cmd(kind, dims_text, seed, env_dim, out_path):
    """Write a seeded random object (reproducible for a fixed seed)."""
    dims = _parse_dims(dims_text) or (2,)
    sampler = SeededSampler(seed)
    if kind == "bipartite":
        if len(dims) != 2:
            raise click.UsageError("--kind bipartite needs --dims d_A,d_B")
        rho = BipartiteDensityMatrix(sample_density_hs(sampler, dims[0] * dims[1]), dims)
        fileio.dump_json(out_path, fileio.encode_state(rho))
    elif kind == "state":
        fileio.dump_json(out_path, fileio.encode_state(sample_density_hs(sampler, dims[0])))
    elif kind == "pure":
        d = dims[0] if len(dims) == 1 else dims[0] * dims[1]
        psi = sample_pure(sampler, d)
        fileio.dump_json(out_path, fileio.encode_pure(psi, list(dims)))
    elif kind == "unitary":
        fileio.dump_json(out_path, fileio.encode_unitary(sample_unitary(sampler, dims[0])))
    else:  # channel
        ch = random_channel(dims[0], env_dim, seed)
        fileio.dump_json(out_path, fileio.encode_channel(ch))
    click.echo(f"wrote {kind} to {out_path}")


@cli.command()
@click.option("--suite", required=True, type=click.Choice(sorted(SUITES)))
@click.option("--dims", "dims_text", default=None)
@click.option("--trials", type=int, default=None)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--mc-samples", type=int, default=10_000, show_default=True)
@click.option("--report", "report_path", type=click.Path(), default=None)
@click.option("--json", "as_json", is_flag=True, default=False)
def verify(suite, dims_text, trials, seed, mc_samples, report_path, as_json):
    """Run a verification suite; exit 0 iff every check passes."""
    report = run_suite(
        suite, dims=_parse_dims(dims_text), trials=trials, seed=seed,
        mc_samples=mc_samples,
    )
    payload = report.to_dict()
    if report_path is not None:
        fileio.dump_json(report_path, payload)
    if as_json:
        click.echo(json.dumps(payload))
    else:
        for check in report.checks:
            status = "pass" if check.passed else "FAIL"
            click.echo(
                f"[{status}] {check.name}: max residual {check.max_residual:.3e} "
                f"(tolerance {check.tolerance:.1e}, trials {check.trials})"
            )
        click.echo(f"suite {suite}: {'pass' if report.passed else 'FAIL'}")
    if not report.passed:
        raise _Failure(2, f"suite {suite} failed")


@cli.command()
@click.argument("path", type=click.Path())
@click.option("--basis", "basis_path", type=click.Path(), default=None)
@click.option("--json", "as_json", is_flag=True, default=False)
def wp(path, basis_path, as_json):
    """Wave/particle features and the correlation trade-off for a bipartite state."""
    state = fileio.load_state(path)
    state = _need_bipartite(state, "wp")
    basis = _basis_for(state.reduced("A"), basis_path)
    terms = duality.complementarity_terms(state, basis)
    if as_json:
        click.echo(json.dumps(terms))
    else:
        click.echo(f"wave W        = {_fmt(terms['wave'])}")
        click.echo(f"particle P    = {_fmt(terms['particle'])}")
        click.echo(f"correlation Q = {_fmt(terms['correlation'])}")
        click.echo(f"W + P + (d_A+1) Q = {_fmt(terms['lhs'])}")
        click.echo(f"(tr sqrt(rho_A))^2 = {_fmt(terms['rhs'])}")
        click.echo(f"residual = {_fmt(terms['residual'])}")


def main(argv: list[str] | None = None) -> int:
    """Entry point with the documented exit-code contract."""
    try:
        cli.main(args=argv, standalone_mode=False)
        return 0
    except _Failure as exc:
        click.echo(str(exc), err=True)
        return exc.code
    except click.UsageError as exc:
        click.echo(f"usage error: {exc.format_message()}", err=True)
        return 64
    except click.exceptions.Exit as exc:
        return int(exc.exit_code)
    except click.Abort:
        return 64
    except FileFormatError as exc:
        click.echo(f"{type(exc).__name__}: {exc}", err=True)
        return 64
    except QacError as exc:
        click.echo(f"{type(exc).__name__}: {exc}", err=True)
        return 1


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
