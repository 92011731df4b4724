"""JSON encoding of vectors, matrices, frames, multipliers and Gabor systems.

Complex numbers are two-element ``[re, im]`` arrays, matrices are row-major
nested arrays.  Python's float repr round-trips exactly, so decode(encode(x))
reproduces x bit for bit.
"""
import json

import numpy as np

from .errors import ContractViolation
from .frames import FrameSeq
from .gabor import GaborSystem, Lattice
from .multiplier import InverseReport, Multiplier, SymbolSeq


def complex_to_json(z):
    z = complex(z)
    return [z.real, z.imag]


def complex_from_json(pair):
    if isinstance(pair, (int, float)) and not isinstance(pair, bool):
        return complex(pair)
    if not isinstance(pair, (list, tuple)) or len(pair) != 2:
        raise ContractViolation(f"complex number must be [re, im], got {pair!r}")
    re, im = pair
    if not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in (re, im)):
        raise ContractViolation(f"complex parts must be numbers, got {pair!r}")
    return complex(float(re), float(im))


def vector_to_json(v):
    return [complex_to_json(z) for z in np.asarray(v).ravel()]


def vector_from_json(data):
    if isinstance(data, dict):
        data = _get(data, "vector")
    if not isinstance(data, list) or not data:
        raise ContractViolation("vector must be a non-empty list of [re, im] pairs")
    return np.array([complex_from_json(p) for p in data], dtype=complex)


def matrix_to_json(a):
    return [vector_to_json(row) for row in np.asarray(a)]


def matrix_from_json(data):
    if isinstance(data, dict):
        data = _get(data, "matrix")
    if not isinstance(data, list) or not data:
        raise ContractViolation("matrix must be a non-empty list of rows")
    rows = [vector_from_json(r) for r in data]
    if len({r.size for r in rows}) != 1:
        raise ContractViolation("matrix rows have different lengths")
    return np.vstack(rows)


def frame_to_json(phi):
    return {"dim": phi.d, "vectors": [vector_to_json(v) for v in phi.vectors]}


def frame_from_json(data):
    if not isinstance(data, dict):
        raise ContractViolation("frame must be an object with 'dim' and 'vectors'")
    dim = _get(data, "dim")
    vectors = _get(data, "vectors")
    if not isinstance(vectors, list) or not vectors:
        raise ContractViolation("frame 'vectors' must be a non-empty list")
    phi = FrameSeq.from_vectors([vector_from_json(v) for v in vectors])
    if phi.d != dim:
        raise ContractViolation(f"frame declares dim={dim} but vectors have dim {phi.d}")
    return phi


def multiplier_to_json(M):
    return {
        "symbol": vector_to_json(M.m.values),
        "phi": frame_to_json(M.phi),
        "psi": frame_to_json(M.psi),
    }


def multiplier_from_json(data):
    if not isinstance(data, dict):
        raise ContractViolation("multiplier must be an object with 'symbol', 'phi', 'psi'")
    return Multiplier(
        SymbolSeq(vector_from_json(_get(data, "symbol"))),
        frame_from_json(_get(data, "phi")),
        frame_from_json(_get(data, "psi")),
    )


def gabor_to_json(G):
    lat = G.lattice
    return {"L": lat.L, "a": lat.a, "b": lat.b, "window": vector_to_json(G.window)}


def gabor_from_json(data):
    if not isinstance(data, dict):
        raise ContractViolation("Gabor system must be an object with 'L', 'a', 'b', 'window'")
    lat = Lattice(_get(data, "L"), _get(data, "a"), _get(data, "b"))
    return GaborSystem(vector_from_json(_get(data, "window")), lat)


def inverse_report_to_json(report):
    out = {
        "classification": report.classification.value,
        "residual": report.residual,
        "left_residual": report.left_residual,
        "right_residual": report.right_residual,
        "range_relation": report.range_relation,
    }
    if report.inverse_multiplier is not None:
        out["inverse_multiplier"] = multiplier_to_json(report.inverse_multiplier)
    return out


def load_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ContractViolation(f"cannot read {path}: {exc}") from exc


def _get(data, key):
    try:
        return data[key]
    except (KeyError, TypeError):
        raise ContractViolation(f"missing field {key!r}") from None
