#!/usr/bin/env python3
"""Ratio surfaces of geodesic triangles.

Fix a triangle a0, a1, a2.  For each pair of ratios (lam1, lam2) there
is (at most) one surface point Y with

    d(a0, Y) = lam1 * d(Y, a1)   and   d(a2, Y) = lam2 * d(Y, a0),

the intersection of two Apollonius surfaces anchored at the sides.
Sweeping the ratios over a tan-spaced grid traces out a two-parameter
surface spanned by the triangle, a curved analogue of the flat plane
through three points.

Triangles whose vertices happen to lie in a vertical coordinate plane
through the origin are special: that plane is totally geodesic, the
ratio surface degenerates into it, and the sampled sheet is exactly
flat.  The script classifies both cases, samples a sheet of each,
checks the defining ratios pointwise, and projects a connecting
geodesic onto the curved sheet.
"""

import os

import numpy as np

from prodgeo.geodesics import distance
from prodgeo.io import write_json, write_obj
from prodgeo.model import Geometry
from prodgeo.trianglesurface import (
    classify_triangle,
    fitted_plane_normal,
    project_curve_to_surface,
    sample_triangle_surface,
)

OUT = os.path.join(os.path.dirname(__file__), "out")

S = Geometry.S2R
H = Geometry.H2R

STATUS_GLYPH = {
    "ok": "#",
    "endpoint_a0": "0",
    "endpoint_a2": "2",
    "empty": ".",
    "not_found": "?",
}


def status_map(samp):
    lines = []
    for i in range(samp.statuses.shape[0]):
        row = "".join(STATUS_GLYPH.get(samp.statuses[i, j], "?")
                      for j in range(samp.statuses.shape[1]))
        lines.append(row)
    return lines


def grid_mesh(samp):
    """Triangulate the ok/endpoint cells of a sampled sheet for OBJ
    export; cells without a point are simply left out."""
    n1, n2 = samp.statuses.shape
    index = -np.ones((n1, n2), dtype=int)
    verts = []
    for i in range(n1):
        for j in range(n2):
            if samp.statuses[i, j] in ("empty", "not_found"):
                continue
            index[i, j] = len(verts)
            verts.append(samp.points[i, j])
    faces = []
    for i in range(n1 - 1):
        for j in range(n2 - 1):
            quad = [index[i, j], index[i + 1, j],
                    index[i + 1, j + 1], index[i, j + 1]]
            if min(quad) < 0:
                continue
            faces.append([quad[0], quad[1], quad[2]])
            faces.append([quad[0], quad[2], quad[3]])
    return np.array(verts), np.array(faces)


def main():
    os.makedirs(OUT, exist_ok=True)

    a0, a1, a2 = (1, 0, 0), (-1, -1, 1), (2, 1, 0)
    tri = classify_triangle(S, a0, a1, a2)
    print("== classification ==")
    print(f"  sphere x line   {a0}, {a1}, {a2}: {tri.kind.value}")
    tri_fib = classify_triangle(S, (1, 0, 0), (2, 0, 0), (1, 1, 0))
    print(f"  sphere x line   (1,0,0), (2,0,0), (1,1,0): "
          f"{tri_fib.kind.value}")
    tri_h = classify_triangle(H, (1, 0, 0), (1.5, 1, -1), (1, 0.5, 0))
    print(f"  hyperbolic x line (1,0,0), (1.5,1,-1), (1,0.5,0): "
          f"{tri_h.kind.value}")

    print("\n== curved sheet over the general triangle (6x6 ratios) ==")
    samp = sample_triangle_surface(tri, 6)
    print("  ratio grid lam1 = lam2 =",
          np.array2string(samp.lambda1, precision=4))
    print("  status map (rows lam1, cols lam2; # ok, 0/2 vertex, . empty):")
    for line in status_map(samp):
        print("    " + line)
    ok = samp.statuses == "ok"
    print(f"  {int(ok.sum())} interior points, "
          f"max ratio defect {np.nanmax(samp.defects[ok]):.2e}")

    # Spot-check the two defining ratios at one interior point.
    i, j = 2, 3
    y = samp.points[i, j]
    r1 = distance(S, a0, y) / distance(S, y, a1)
    r2 = distance(S, a2, y) / distance(S, y, a0)
    print(f"  cell ({i},{j}): d(a0,Y)/d(Y,a1) = {r1:.9f} "
          f"(lam1 = {samp.lambda1[i]:.9f})")
    print(f"             d(a2,Y)/d(Y,a0) = {r2:.9f} "
          f"(lam2 = {samp.lambda2[j]:.9f})")

    verts, faces = grid_mesh(samp)
    path = os.path.join(OUT, "triangle_sheet_s2r.obj")
    write_obj(path, verts, faces,
              comment="curved ratio sheet, general triangle, 6x6 grid")
    print(f"  wrote {path} ({len(verts)} vertices, {len(faces)} faces)")

    print("\n== geodesic projected onto the curved sheet ==")
    p1, p2 = samp.points[1, 2], samp.points[2, 3]
    curve, statuses = project_curve_to_surface(tri, p1, p2, sample=samp,
                                               samples=9)
    n_ok = int(np.sum(statuses == "ok"))
    print(f"  9 samples along the geodesic, {n_ok} land on the sheet")
    print(f"  endpoint gaps: {np.linalg.norm(curve[0] - p1):.2e}, "
          f"{np.linalg.norm(curve[-1] - p2):.2e}")
    write_json(os.path.join(OUT, "projected_curve_s2r.json"), {
        "statuses": [str(s) for s in statuses],
        "points": [[float(c) for c in p] for p in curve],
    })
    print(f"  wrote {os.path.join(OUT, 'projected_curve_s2r.json')}")

    print("\n== flat sheet over a vertical-plane triangle (5x5 ratios) ==")
    samp_f = sample_triangle_surface(tri_fib, 5)
    ok_f = ~np.isin(samp_f.statuses, ("empty", "not_found"))
    pts = samp_f.points[ok_f]
    normal = fitted_plane_normal(pts)
    span = float(np.max(np.abs(pts @ normal)))
    print(f"  {len(pts)} points, fitted plane normal "
          f"({normal[0]:+.6f}, {normal[1]:+.6f}, {normal[2]:+.6f})")
    print(f"  max out-of-plane deviation {span:.2e}")
    verts_f, faces_f = grid_mesh(samp_f)
    path = os.path.join(OUT, "triangle_sheet_fibre.obj")
    write_obj(path, verts_f, faces_f,
              comment="flat ratio sheet, vertical-plane triangle")
    print(f"  wrote {path} ({len(verts_f)} vertices, {len(faces_f)} faces)")


if __name__ == "__main__":
    main()
