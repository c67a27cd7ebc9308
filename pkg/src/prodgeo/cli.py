"""Command-line front end.

One subcommand per task, JSON results on stdout (or --output), OBJ
meshes where a mesh is the product.  All output is deterministic for a
fixed request and seed: canonical key order, 12-significant-digit
floats, no timestamps.  Errors leave as machine-readable JSON on
stderr with a nonzero exit status.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from .apollonius import apollonius_spec, extract_isosurface
from .circumsphere import Tetrahedron, circumscribed_sphere
from .configgen import (
    ceva_config_from_dict,
    menelaus_config_from_dict,
    random_ceva_config,
    random_menelaus_config,
)
from .errors import GeometryError
from .geodesics import (
    GeodesicParams,
    arc_length_quadrature,
    distance,
    geodesic_between,
    geodesic_point,
    geodesic_points,
)
from .io import canonical_json, write_obj
from .model import Geometry, translate_to_origin
from .theorems import ceva_product, menelaus_product
from .trianglesurface import classify_triangle, ratio_grid, sample_triangle_surface

THEOREM_TOL = 1e-7
ORACLE_TOL = 1e-6


class CliError(ValueError):
    """Malformed request content (bad point syntax, missing flags)."""


def _geometry(tag) -> Geometry:
    if tag is None:
        raise CliError("missing --geometry (s2r or h2r)")
    return Geometry.from_tag(tag)


def _point(text: str) -> np.ndarray:
    try:
        parts = [float(c) for c in text.split(",")]
    except ValueError as exc:
        raise CliError(f"bad point {text!r}: {exc}") from None
    if len(parts) != 3:
        raise CliError(f"bad point {text!r}: expected x,y,z")
    return np.array(parts)


def _point_list(text: str, count: int) -> list:
    pts = [_point(chunk) for chunk in text.split(";") if chunk.strip()]
    if len(pts) != count:
        raise CliError(f"expected {count} points separated by ';', "
                       f"got {len(pts)}")
    return pts


def _floats(x) -> list:
    return [float(c) for c in np.asarray(x)]


def _load_json(path) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise CliError(f"{path}: malformed JSON: {exc}") from None


def _cmd_distance(args) -> dict:
    geom = _geometry(args.geometry)
    p1 = _point(args.p1)
    p2 = _point(args.p2)
    return {
        "geometry": geom.tag,
        "p1": _floats(p1),
        "p2": _floats(p2),
        "distance": distance(geom, p1, p2),
    }


def _cmd_geodesic(args) -> dict:
    geom = _geometry(args.geometry)
    if args.samples < 2:
        raise CliError("--samples must be at least 2")
    payload = {"geometry": geom.tag}
    if args.p1 is not None or args.p2 is not None:
        if args.p1 is None or args.p2 is None:
            raise CliError("--p1 and --p2 must be given together")
        p1 = _point(args.p1)
        p2 = _point(args.p2)
        params = geodesic_between(geom, p1, p2)
        iso = translate_to_origin(geom, p1)
        payload["p1"] = _floats(p1)
        payload["p2"] = _floats(p2)
    elif None in (args.u, args.v, args.tau):
        raise CliError("give either --p1/--p2 or all of --u/--v/--tau")
    else:
        params = GeodesicParams(args.u, args.v, args.tau)
        iso = None
    taus = np.linspace(0.0, params.tau, args.samples)
    pts = geodesic_points(geom, params.u, params.v, taus)
    if iso is not None:
        pts = np.stack([iso.apply_inverse(p) for p in pts])
    payload.update({
        "params": {"u": params.u, "v": params.v, "tau": params.tau},
        "samples": int(args.samples),
        "points": [_floats(p) for p in pts],
    })
    return payload


def _default_box(geom: Geometry, p1, p2) -> list:
    margin = 1.5 * max(1.0, float(np.linalg.norm(p2 - p1)))
    lo = np.minimum(p1, p2) - margin
    hi = np.maximum(p1, p2) + margin
    if geom is Geometry.H2R:
        lo[0] = max(lo[0], 0.05)
    return [[float(a), float(b)] for a, b in zip(lo, hi)]


def _cmd_apollonius_mesh(args) -> dict:
    geom = _geometry(args.geometry)
    p1 = _point(args.p1)
    p2 = _point(args.p2)
    if args.resolution < 8:
        raise CliError("--resolution must be at least 8")
    spec = apollonius_spec(geom, p1, p2, args.ratio)
    if args.box is not None:
        vals = [float(c) for c in args.box.split(",")]
        if len(vals) != 6:
            raise CliError("--box expects x0,x1,y0,y1,z0,z1")
        box = [[vals[0], vals[1]], [vals[2], vals[3]], [vals[4], vals[5]]]
    else:
        box = _default_box(geom, p1, p2)
    mesh = extract_isosurface(spec, box, args.resolution)
    if args.mesh is None:
        raise CliError("--mesh OUTPUT.obj is required")
    write_obj(args.mesh, mesh.vertices, mesh.faces)
    max_defect = float(np.max(mesh.defects)) if len(mesh.defects) else None
    return {
        "geometry": geom.tag,
        "p1": _floats(spec.p1),
        "p2": _floats(spec.p2),
        "ratio": float(spec.lam),
        "box": box,
        "resolution": int(args.resolution),
        "tolerance": float(mesh.tolerance),
        "vertex_count": int(len(mesh.vertices)),
        "face_count": int(len(mesh.faces)),
        "max_defect": max_defect,
        "message": mesh.message,
        "mesh_path": str(args.mesh),
    }


def _cmd_circumsphere(args) -> dict:
    if args.input is not None:
        data = _load_json(args.input)
        tag = args.geometry or data.get("geometry")
        geom = _geometry(tag)
        verts = [np.asarray(v, dtype=float) for v in data["vertices"]]
        if len(verts) != 4:
            raise CliError("input must contain four vertices")
    elif args.vertices is not None:
        geom = _geometry(args.geometry)
        verts = _point_list(args.vertices, 4)
    else:
        raise CliError("give --input FILE or --vertices 'p0;p1;p2;p3'")
    tet = Tetrahedron.from_points(verts)
    result = circumscribed_sphere(geom, tet)
    return {
        "geometry": geom.tag,
        "vertices": [_floats(v) for v in verts],
        "center": _floats(result.center),
        "radius": None if result.radius is None else float(result.radius),
        "classification": result.classification.value,
        "residual": float(result.residual),
        "converged": bool(result.converged),
    }


def _cmd_triangle_surface(args) -> dict:
    geom = _geometry(args.geometry)
    verts = _point_list(args.vertices, 3)
    if args.grid < 2:
        raise CliError("--grid must be at least 2")
    tri = classify_triangle(geom, *verts)
    sample = sample_triangle_surface(tri, args.grid)
    n = args.grid
    index = -np.ones((n, n), dtype=int)
    mesh_verts = []
    for i in range(n):
        for j in range(n):
            if np.all(np.isfinite(sample.points[i, j])):
                index[i, j] = len(mesh_verts)
                mesh_verts.append(sample.points[i, j])
    faces = []
    for i in range(n - 1):
        for j in range(n - 1):
            corners = (index[i, j], index[i + 1, j],
                       index[i + 1, j + 1], index[i, j + 1])
            if all(c >= 0 for c in corners):
                faces.append([corners[0], corners[1], corners[2]])
                faces.append([corners[0], corners[2], corners[3]])
    if args.mesh is not None:
        write_obj(args.mesh, np.asarray(mesh_verts, dtype=float).reshape(-1, 3),
                  np.asarray(faces, dtype=int).reshape(-1, 3))
    statuses = [[str(sample.statuses[i, j]) for j in range(n)]
                for i in range(n)]
    return {
        "geometry": geom.tag,
        "vertices": [_floats(v) for v in verts],
        "kind": tri.kind.name.lower(),
        "grid": int(n),
        "ratios": _floats(ratio_grid(n)),
        "statuses": statuses,
        "dist_to_a0": sample.dist_to_a0.tolist(),
        "defect1": sample.defects[:, :, 0].tolist(),
        "defect2": sample.defects[:, :, 1].tolist(),
        "vertex_count": int(len(mesh_verts)),
        "face_count": int(len(faces)),
        "mesh_path": None if args.mesh is None else str(args.mesh),
    }


def _theorem_check(args, which: str) -> dict:
    if args.input is not None:
        data = _load_json(args.input)
        if which == "ceva":
            config = ceva_config_from_dict(data)
            product = ceva_product(config)
            defect = abs(product - 1.0)
        else:
            config = menelaus_config_from_dict(data)
            product = menelaus_product(config)
            defect = abs(product + 1.0)
        tri = config.triangle
        return {
            "geometry": tri.geometry.tag,
            "kind": tri.kind.name.lower(),
            "product": float(product),
            "abs_defect": float(defect),
            "tolerance": THEOREM_TOL,
            "pass": bool(defect <= THEOREM_TOL),
        }
    geom = _geometry(args.geometry)
    kind = args.kind
    count = args.random
    if count is None or count < 1:
        raise CliError("give --input FILE or --random COUNT")
    products = []
    for i in range(count):
        seed = args.seed + i
        if which == "ceva":
            cfg = random_ceva_config(geom, kind, seed)
            products.append(ceva_product(cfg))
        else:
            cfg = random_menelaus_config(geom, kind, seed)
            products.append(menelaus_product(cfg))
    target = 1.0 if which == "ceva" else -1.0
    defects = [abs(p - target) for p in products]
    return {
        "geometry": geom.tag,
        "kind": str(kind),
        "count": int(count),
        "seed": int(args.seed),
        "tolerance": THEOREM_TOL,
        "max_abs_defect": max(defects),
        "pass": bool(max(defects) <= THEOREM_TOL),
        "products": [float(p) for p in products],
    }


def _cmd_oracle_diff(args) -> dict:
    geom = _geometry(args.geometry)
    rng = np.random.default_rng(args.seed)
    worst = 0.0
    origin = np.array([1.0, 0.0, 0.0])
    for _ in range(args.count):
        u = rng.uniform(-math.pi, math.pi)
        v = rng.uniform(-math.pi / 2.0, math.pi / 2.0)
        tau = rng.uniform(1e-3, args.tau_max)
        closed = distance(geom, origin, geodesic_point(geom, u, v, tau))
        quad = arc_length_quadrature(geom, u, v, tau, steps=args.steps)
        worst = max(worst, abs(closed - quad))
    return {
        "geometry": geom.tag,
        "count": int(args.count),
        "seed": int(args.seed),
        "tau_max": float(args.tau_max),
        "steps": int(args.steps),
        "tolerance": ORACLE_TOL,
        "max_deviation": worst,
        "pass": bool(worst <= ORACLE_TOL),
    }


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="prodgeo",
        description="Distances, geodesics, Apollonius surfaces, "
                    "circumspheres, triangle surfaces, and theorem checks "
                    "in the two product geometries.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--geometry", help="s2r or h2r")
        p.add_argument("--output", help="write the JSON result here "
                                        "instead of stdout")

    p = sub.add_parser("distance", help="distance between two points")
    common(p)
    p.add_argument("--p1", required=True, help="x,y,z")
    p.add_argument("--p2", required=True, help="x,y,z")
    p.set_defaults(run=_cmd_distance)

    p = sub.add_parser("geodesic", help="sampled geodesic polyline")
    common(p)
    p.add_argument("--p1", help="x,y,z")
    p.add_argument("--p2", help="x,y,z")
    p.add_argument("--u", type=float)
    p.add_argument("--v", type=float)
    p.add_argument("--tau", type=float)
    p.add_argument("--samples", type=int, default=64)
    p.set_defaults(run=_cmd_geodesic)

    p = sub.add_parser("apollonius-mesh",
                       help="constant-ratio surface as an OBJ mesh")
    common(p)
    p.add_argument("--p1", required=True, help="first focus x,y,z")
    p.add_argument("--p2", required=True, help="second focus x,y,z")
    p.add_argument("--ratio", type=float, required=True,
                   help="distance ratio (lambda)")
    p.add_argument("--box", help="x0,x1,y0,y1,z0,z1")
    p.add_argument("--resolution", type=int, default=64)
    p.add_argument("--mesh", help="OBJ output path")
    p.set_defaults(run=_cmd_apollonius_mesh)

    p = sub.add_parser("circumsphere",
                       help="circumscribed sphere of a tetrahedron")
    common(p)
    p.add_argument("--input", help="JSON with geometry and four vertices")
    p.add_argument("--vertices", help="'x,y,z;x,y,z;x,y,z;x,y,z'")
    p.set_defaults(run=_cmd_circumsphere)

    p = sub.add_parser("triangle-surface",
                       help="sample the surface spanned by a triangle")
    common(p)
    p.add_argument("--vertices", required=True, help="'p0;p1;p2'")
    p.add_argument("--grid", type=int, default=8)
    p.add_argument("--mesh", help="OBJ output path")
    p.set_defaults(run=_cmd_triangle_surface)

    for name in ("ceva-check", "menelaus-check"):
        p = sub.add_parser(name, help=f"{name.split('-')[0]} product check")
        common(p)
        p.add_argument("--input", help="explicit configuration JSON")
        p.add_argument("--random", type=int,
                       help="number of random configurations")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--kind", default="general",
                       choices=("general", "fibre"))
        p.set_defaults(run=lambda a, w=name.split("-")[0]:
                       _theorem_check(a, w))

    p = sub.add_parser("oracle-diff",
                       help="closed-form distance vs arc-length quadrature")
    common(p)
    p.add_argument("--count", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tau-max", type=float, default=3.0)
    p.add_argument("--steps", type=int, default=10_000)
    p.set_defaults(run=_cmd_oracle_diff)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        payload = args.run(args)
    except Exception as exc:  # noqa: BLE001 - everything becomes error JSON
        err = {"error": {"type": type(exc).__name__, "message": str(exc)}}
        sys.stderr.write(canonical_json(err))
        return 1
    text = canonical_json(payload)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
