"""JSON state/channel files and CSV output.

State file::

    {"kind":"density","dim":d,"data":[[re,im],...]}   # d*d entries, row-major
    {"kind":"pure","dim":d,"data":[[re,im],...]}      # d entries

Channel file::

    {"dim_in":d,"dim_out":d,"kraus":[<matrix>,...]}   # each matrix row-major [re,im] pairs

Numbers are written with 17 significant digits, so write -> read -> write
is byte-identical.  NaN and Inf are rejected on read and write.
"""
from __future__ import annotations

import csv
import io
import json
import math
from pathlib import Path

import numpy as np

from .channels import KrausChannel, validate_icptp
from .errors import FormatError
from .statespace import DEFAULT_TOL, DensityMatrix, PureState, validate_density, validate_pure


def fmt(x) -> str:
    """Number or scalar as a CSV/JSON token."""
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, (float, np.floating)):
        x = float(x)
        if not math.isfinite(x):
            raise FormatError(f"refusing to serialize non-finite number {x}")
        return format(x, ".17g")
    return str(x)


def _pairs(values: np.ndarray) -> str:
    return "[" + ",".join(f"[{fmt(z.real)},{fmt(z.imag)}]" for z in np.asarray(values).ravel()) + "]"


def dump_state(state: DensityMatrix | PureState) -> str:
    if isinstance(state, PureState):
        kind, data = "pure", state.amplitudes
    else:
        kind, data = "density", state.data
    return f'{{"kind":"{kind}","dim":{data.shape[0]},"data":{_pairs(data)}}}\n'


def dump_matrix(matrix: np.ndarray, **header) -> str:
    head = "".join(f"{json.dumps(k)}:{json.dumps(v)}," for k, v in header.items())
    return f'{{{head}"dim":{matrix.shape[0]},"data":{_pairs(matrix)}}}\n'


def dump_channel(ch: KrausChannel) -> str:
    mats = ",".join(_pairs(k) for k in ch.kraus)
    return f'{{"dim_in":{ch.dim_in},"dim_out":{ch.dim_out},"kraus":[{mats}]}}\n'


def _reject_constant(name):
    raise FormatError(f"non-finite number {name} is not allowed")


def _loads(text: str) -> dict:
    try:
        obj = json.loads(text, parse_constant=_reject_constant)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON: {exc}") from None
    if not isinstance(obj, dict):
        raise FormatError("top-level JSON value must be an object")
    return obj


def _complex_list(data, expected: int, what: str) -> np.ndarray:
    if not isinstance(data, list) or len(data) != expected:
        raise FormatError(f"{what} must be a list of {expected} [re,im] pairs")
    out = np.empty(expected, dtype=np.complex128)
    for n, pair in enumerate(data):
        if (
            not isinstance(pair, list)
            or len(pair) != 2
            or not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in pair)
        ):
            raise FormatError(f"{what}[{n}] must be a [re,im] pair of numbers")
        if not all(math.isfinite(x) for x in pair):
            raise FormatError(f"{what}[{n}] is not finite")
        out[n] = complex(pair[0], pair[1])
    return out


def _positive_int(obj: dict, key: str) -> int:
    v = obj.get(key)
    if not isinstance(v, int) or isinstance(v, bool) or v < 1:
        raise FormatError(f"{key!r} must be a positive integer")
    return v


def loads_state(text: str, tol: float = DEFAULT_TOL) -> DensityMatrix | PureState:
    obj = _loads(text)
    kind = obj.get("kind")
    d = _positive_int(obj, "dim")
    if kind == "density":
        return validate_density(_complex_list(obj.get("data"), d * d, "data").reshape(d, d), tol)
    if kind == "pure":
        return validate_pure(_complex_list(obj.get("data"), d, "data"), tol)
    raise FormatError(f"state kind must be 'density' or 'pure', got {kind!r}")


def loads_channel(text: str, tol: float = 1e-10) -> KrausChannel:
    obj = _loads(text)
    d_in, d_out = _positive_int(obj, "dim_in"), _positive_int(obj, "dim_out")
    kraus = obj.get("kraus")
    if not isinstance(kraus, list) or not kraus:
        raise FormatError("'kraus' must be a non-empty list of matrices")
    mats = [_complex_list(k, d_out * d_in, f"kraus[{n}]").reshape(d_out, d_in) for n, k in enumerate(kraus)]
    return validate_icptp(mats, tol)


def read_state(path, tol: float = DEFAULT_TOL):
    return loads_state(Path(path).read_text(encoding="utf-8"), tol)


def read_channel(path, tol: float = 1e-10) -> KrausChannel:
    return loads_channel(Path(path).read_text(encoding="utf-8"), tol)


def write_text(text: str, path=None, stream=None) -> None:
    if path is None:
        stream.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8", newline="\n")


def csv_text(header, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([fmt(x) for x in row])
    return buf.getvalue()
