"""Generator/point file parsing and deterministic report serialization.

Complex numbers are written as ``[re, im]`` pairs and the point at infinity
as the token ``"inf"``. Reports use a small JSON writer that prints every
float with 17 significant digits so identical runs are byte-identical.
"""

import hashlib
import json
import math
from enum import Enum

import numpy as np

from .hermitian import INF_VECTOR, ProjectivePoint, standard_lift
from .isometries import GroupElement


class FormatError(ValueError):
    pass


def parse_complex(x):
    if isinstance(x, (int, float)):
        return complex(x)
    if isinstance(x, (list, tuple)) and len(x) == 2 and all(isinstance(v, (int, float)) for v in x):
        return complex(x[0], x[1])
    raise FormatError(f"expected a number or [re, im] pair, got {x!r}")


def parse_matrix(rows):
    if not isinstance(rows, list) or len(rows) != 3 or any(len(r) != 3 for r in rows):
        raise FormatError("matrix must be 3 rows of 3 entries")
    return np.array([[parse_complex(v) for v in r] for r in rows], dtype=complex)


def complex_pair(z):
    z = complex(z)
    return [z.real, z.imag]


def matrix_rows(m):
    m = np.asarray(m.matrix if isinstance(m, GroupElement) else m, dtype=complex)
    return [[complex_pair(v) for v in row] for row in m]


def vector_entries(v):
    return [complex_pair(x) for x in np.asarray(v, dtype=complex)]


def parse_point(token):
    """A boundary/interior point: "inf", [z1, z2] or a full lift {"lift": [...]}."""
    if isinstance(token, str):
        if token.strip().lower() == "inf":
            return ProjectivePoint(INF_VECTOR)
        raise FormatError(f"unknown point token {token!r}")
    if isinstance(token, dict) and "lift" in token:
        lift = [parse_complex(v) for v in token["lift"]]
        if len(lift) != 3:
            raise FormatError("a lift needs three coordinates")
        return ProjectivePoint(np.array(lift))
    if isinstance(token, list) and len(token) == 2:
        return ProjectivePoint(standard_lift(parse_complex(token[0]), parse_complex(token[1])))
    raise FormatError(f"cannot parse point {token!r}")


def point_token(p):
    coords = p.coordinates()
    if coords is None:
        if p.is_infinity():
            return "inf"
        return {"lift": vector_entries(p.vector)}
    return [complex_pair(coords[0]), complex_pair(coords[1])]


def read_json(path):
    with open(path, "rb") as fh:
        raw = fh.read()
    try:
        data = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: {exc}") from exc
    return data, hashlib.sha256(raw).hexdigest()


def load_generator_file(path):
    """Return (list of (label, matrix), tolerance overrides, digest, metadata)."""
    data, digest = read_json(path)
    if not isinstance(data, dict) or "generators" not in data:
        raise FormatError(f"{path}: missing 'generators'")
    items = []
    for k, entry in enumerate(data["generators"]):
        label = entry.get("label", f"g{k + 1}")
        items.append((str(label), parse_matrix(entry["matrix"])))
    if not items:
        raise FormatError(f"{path}: no generators")
    return items, dict(data.get("tolerances", {})), digest, data.get("meta", {})


def load_points_file(path):
    """Return (list of point configurations, digest).

    Accepts ``{"configurations": [[p, ...], ...]}`` or a single
    ``{"points": [p, ...]}``.
    """
    data, digest = read_json(path)
    if "configurations" in data:
        confs = data["configurations"]
    elif "points" in data:
        confs = [data["points"]]
    else:
        raise FormatError(f"{path}: expected 'points' or 'configurations'")
    return [[parse_point(t) for t in conf] for conf in confs], digest


def generator_document(items, meta=None, tolerances=None):
    doc = {"generators": [{"label": lab, "matrix": matrix_rows(m)} for lab, m in items]}
    if tolerances:
        doc["tolerances"] = tolerances
    if meta:
        doc["meta"] = meta
    return doc


def _fmt_float(x):
    if math.isnan(x):
        return '"nan"'
    if math.isinf(x):
        return '"inf"' if x > 0 else '"-inf"'
    if x == 0:
        return "0.0"
    s = format(x, ".17g")
    if "e" not in s and "." not in s:
        s += ".0"
    return s


def to_jsonable(obj):
    """Convert numpy/enum/complex values into plain JSON-ready values."""
    if isinstance(obj, Enum):
        return obj.value
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return float(obj)
    if isinstance(obj, (complex, np.complexfloating)):
        return complex_pair(obj)
    if isinstance(obj, np.ndarray):
        return [to_jsonable(v) for v in obj.tolist()]
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    return obj


def dumps(obj, indent=2, _level=0):
    """JSON text with 17-significant-digit floats."""
    obj = to_jsonable(obj)
    pad = " " * (indent * (_level + 1))
    end = " " * (indent * _level)
    if obj is None:
        return "null"
    if obj is True:
        return "true"
    if obj is False:
        return "false"
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return _fmt_float(obj)
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, list):
        if not obj:
            return "[]"
        if all(not isinstance(v, (list, dict)) for v in obj):
            return "[" + ", ".join(dumps(v, indent, _level + 1) for v in obj) + "]"
        inner = (",\n" + pad).join(dumps(v, indent, _level + 1) for v in obj)
        return "[\n" + pad + inner + "\n" + end + "]"
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        inner = (",\n" + pad).join(
            json.dumps(k) + ": " + dumps(v, indent, _level + 1) for k, v in obj.items()
        )
        return "{\n" + pad + inner + "\n" + end + "}"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def format_float(x):
    return format(float(x), ".17g")
