"""JSON file formats for states, bases, channels and reports.

Complex data is stored as explicit ``{"re": ..., "im": ...}`` real arrays
(row-major) for portability; every file carries
``"index_convention": "A-major"`` stating that on composite spaces the
subsystem-A index varies slowest.  Floats keep full double precision.
"""

from __future__ import annotations

import json
from typing import Any

import numpy as np

from .bases import MubSet, ProjectiveBasis
from .channels import KrausChannel
from .errors import FileFormatError
from .states import BipartiteDensityMatrix, DensityMatrix, PureState, from_pure

INDEX_CONVENTION = "A-major"


def encode_matrix(m: np.ndarray) -> dict[str, Any]:
    m = np.asarray(m, dtype=np.complex128)
    return {"re": m.real.tolist(), "im": m.imag.tolist()}


def decode_matrix(obj: Any, ndim: int = 2) -> np.ndarray:
    try:
        re = np.asarray(obj["re"], dtype=np.float64)
        im = np.asarray(obj["im"], dtype=np.float64)
    except (TypeError, KeyError, ValueError) as exc:
        raise FileFormatError(f"bad matrix object: {exc}") from exc
    if re.shape != im.shape or re.ndim != ndim:
        raise FileFormatError(
            f"re/im shapes {re.shape}/{im.shape} invalid (expected {ndim}-D)"
        )
    return re + 1j * im


def load_json(path: str) -> Any:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise FileFormatError(f"{path}: {exc}") from exc


def dump_json(path: str, obj: Any) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(obj, fh, indent=2)
        fh.write("\n")


# -- states -------------------------------------------------------------------


def encode_state(state: DensityMatrix | BipartiteDensityMatrix) -> dict[str, Any]:
    if isinstance(state, BipartiteDensityMatrix):
        dims = list(state.dims)
        matrix = state.matrix
    else:
        dims = [state.dim]
        matrix = state.matrix
    return {
        "index_convention": INDEX_CONVENTION,
        "dims": dims,
        "matrix": encode_matrix(matrix),
    }


def encode_pure(psi: PureState, dims: list[int]) -> dict[str, Any]:
    amps = psi.amplitudes
    return {
        "index_convention": INDEX_CONVENTION,
        "dims": dims,
        "pure": {"re": amps.real.tolist(), "im": amps.imag.tolist()},
    }


def decode_state(obj: Any) -> DensityMatrix | BipartiteDensityMatrix:
    """Decode a state file into a validated (bipartite) density matrix."""
    if not isinstance(obj, dict):
        raise FileFormatError("state file must be a JSON object")
    dims = obj.get("dims")
    if not isinstance(dims, list) or not 1 <= len(dims) <= 2 or not all(
        isinstance(d, int) and d >= 1 for d in dims
    ):
        raise FileFormatError(f"dims must be 1 or 2 positive integers, got {dims!r}")
    if ("matrix" in obj) == ("pure" in obj):
        raise FileFormatError("state file needs exactly one of 'matrix' or 'pure'")
    if "pure" in obj:
        amps = decode_matrix(obj["pure"], ndim=1)
        rho = from_pure(PureState(amps))
    else:
        rho = DensityMatrix(decode_matrix(obj["matrix"]))
    if len(dims) == 2:
        return BipartiteDensityMatrix(rho, (dims[0], dims[1]))
    if rho.dim != dims[0]:
        raise FileFormatError(f"dims {dims} do not match matrix dimension {rho.dim}")
    return rho


def load_state(path: str) -> DensityMatrix | BipartiteDensityMatrix:
    return decode_state(load_json(path))


def load_pure(path: str) -> tuple[PureState, list[int]]:
    obj = load_json(path)
    if not isinstance(obj, dict) or "pure" not in obj:
        raise FileFormatError("expected a state file with a 'pure' vector")
    return PureState(decode_matrix(obj["pure"], ndim=1)), list(obj.get("dims", []))


# -- bases ----------------------------------------------------------------------


def encode_mubs(mubs: MubSet) -> dict[str, Any]:
    return {
        "index_convention": INDEX_CONVENTION,
        "dim": mubs.dim,
        "bases": [encode_matrix(b.vectors) for b in mubs],
    }


def decode_bases(obj: Any) -> list[ProjectiveBasis]:
    """Decode a basis-family file into ProjectiveBasis values (uncertified)."""
    if not isinstance(obj, dict) or "bases" not in obj:
        raise FileFormatError("MUB file must be an object with a 'bases' list")
    return [ProjectiveBasis(decode_matrix(b)) for b in obj["bases"]]


def load_mubs(path: str) -> MubSet:
    return MubSet(decode_bases(load_json(path)))


def encode_basis(basis: ProjectiveBasis) -> dict[str, Any]:
    return {
        "index_convention": INDEX_CONVENTION,
        "dim": basis.dim,
        "matrix": encode_matrix(basis.vectors),
    }


def load_basis(path: str) -> ProjectiveBasis:
    obj = load_json(path)
    if not isinstance(obj, dict) or "matrix" not in obj:
        raise FileFormatError("basis file must be an object with a 'matrix'")
    return ProjectiveBasis(decode_matrix(obj["matrix"]))


def load_matrix(path: str) -> np.ndarray:
    obj = load_json(path)
    if not isinstance(obj, dict) or "matrix" not in obj:
        raise FileFormatError("matrix file must be an object with a 'matrix'")
    return decode_matrix(obj["matrix"])


def encode_unitary(u: np.ndarray) -> dict[str, Any]:
    return {
        "index_convention": INDEX_CONVENTION,
        "dim": int(u.shape[0]),
        "matrix": encode_matrix(u),
    }


# -- channels -------------------------------------------------------------------


def encode_channel(ch: KrausChannel) -> dict[str, Any]:
    return {
        "index_convention": INDEX_CONVENTION,
        "dim_in": ch.dim_in,
        "dim_out": ch.dim_out,
        "kraus": [encode_matrix(k) for k in ch.kraus],
    }


def load_channel(path: str) -> KrausChannel:
    obj = load_json(path)
    if not isinstance(obj, dict) or "kraus" not in obj:
        raise FileFormatError("channel file must be an object with a 'kraus' list")
    return KrausChannel([decode_matrix(k) for k in obj["kraus"]])
