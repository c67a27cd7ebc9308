"""Deterministic JSON and OBJ serialization.

Every emitter here is reproducible byte for byte: keys keep insertion
order, floats are printed with 12 significant digits via repr-stable
formatting, and no timestamps or environment details leak into the
output.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

FLOAT_FORMAT = "%.12g"


def _format_float(x: float) -> str:
    if not np.isfinite(x):
        return "null"
    return FLOAT_FORMAT % x


def _canonical(obj):
    """Render a JSON value with fixed float formatting and key order."""
    if isinstance(obj, dict):
        items = ", ".join(f"{json.dumps(str(k))}: {_canonical(v)}"
                          for k, v in obj.items())
        return "{" + items + "}"
    if isinstance(obj, np.ndarray):
        obj = obj.tolist()
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(_canonical(v) for v in obj) + "]"
    if isinstance(obj, bool) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _format_float(float(obj))
    return json.dumps(obj)


def canonical_json(obj) -> str:
    """Serialize with insertion-ordered keys and 12-digit floats."""
    return _canonical(obj) + "\n"


def write_json(path, obj) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(canonical_json(obj))


def write_obj(path, vertices, faces, comment: str = "") -> None:
    """Write a triangle mesh as OBJ (1-based face indices)."""
    vertices = np.asarray(vertices, dtype=float)
    faces = np.asarray(faces, dtype=int)
    with open(path, "w", encoding="utf-8") as fh:
        if comment:
            for line in comment.splitlines():
                fh.write(f"# {line}\n")
        for v in vertices:
            fh.write("v %s %s %s\n" % tuple(FLOAT_FORMAT % c for c in v))
        for f in faces:
            fh.write("f %d %d %d\n" % (f[0] + 1, f[1] + 1, f[2] + 1))


@dataclass(frozen=True)
class ObjMesh:
    vertices: np.ndarray
    faces: np.ndarray


def read_obj(path) -> ObjMesh:
    """Read back a v/f OBJ file; validates indices and finiteness."""
    verts, faces = [], []
    with open(path, "r", encoding="utf-8") as fh:
        for line in fh:
            parts = line.split()
            if not parts or parts[0] == "#":
                continue
            if parts[0] == "v":
                verts.append([float(c) for c in parts[1:4]])
            elif parts[0] == "f":
                faces.append([int(c.split("/")[0]) - 1 for c in parts[1:4]])
    vertices = np.asarray(verts, dtype=float).reshape(-1, 3)
    face_arr = np.asarray(faces, dtype=int).reshape(-1, 3)
    if not np.all(np.isfinite(vertices)):
        raise ValueError(f"{path}: non-finite vertex coordinates")
    if face_arr.size and (face_arr.min() < 0
                          or face_arr.max() >= len(vertices)):
        raise ValueError(f"{path}: face index out of range")
    return ObjMesh(vertices, face_arr)


def write_polyline_json(path, points, closed: bool,
                        extra: dict | None = None) -> None:
    """Polyline as a JSON object with a point list and closure flag."""
    payload = {"closed": bool(closed),
               "count": int(len(points)),
               "points": [[float(c) for c in p] for p in points]}
    if extra:
        payload.update(extra)
    write_json(path, payload)
