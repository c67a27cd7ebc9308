#!/usr/bin/env python3
"""Constant-ratio surfaces for a pair of foci.

The locus d(P1, X) = lam * d(X, P2) generalizes the classical
Apollonius sphere.  This script

1) extracts the lam = 1 equidistance surface for a sphere-times-line
   pair of foci as a triangle mesh and verifies the distance-equality
   defect vertex by vertex,
2) does the same for a lam = 2 surface in the hyperbolic model, where
   the search box is clipped to the model cone x^2 > y^2 + z^2,
3) traces the intersection curve of two chained ratio surfaces around
   a triangle: the points Y with d(A0,Y)/d(Y,A1) = lam1 and
   d(A2,Y)/d(Y,A0) = lam2 simultaneously.

Meshes land in demos/out/ as OBJ, curves as JSON polylines.
"""

import os

import numpy as np

from prodgeo.apollonius import (
    apollonius_spec,
    extract_isosurface,
    trace_intersection_curve,
)
from prodgeo.geodesics import distance
from prodgeo.io import write_obj, write_polyline_json
from prodgeo.model import Geometry

OUT = os.path.join(os.path.dirname(__file__), "out")

S = Geometry.S2R
H = Geometry.H2R


def report_mesh(tag, spec, mesh):
    if not len(mesh.vertices):
        print(f"  {tag}: empty ({mesh.message})")
        return
    print(f"  {tag}: {len(mesh.vertices)} vertices, {len(mesh.faces)} faces")
    print(f"    max |d(P1,v) - lam*d(v,P2)| = {mesh.defects.max():.3g} "
          f"(bound {mesh.tolerance:.3g})")


def main():
    os.makedirs(OUT, exist_ok=True)

    print("== equidistance surface (sphere x line) ==")
    spec1 = apollonius_spec(S, [1, 0, 0], [2, 1, 1], 1.0)
    mesh1 = extract_isosurface(spec1, [[-3, 3], [-3, 3], [-3, 3]], 48)
    report_mesh("lam=1", spec1, mesh1)
    path = os.path.join(OUT, "equidistance_s2r.obj")
    write_obj(path, mesh1.vertices, mesh1.faces,
              comment="d(P1,X) = d(X,P2), P1=(1,0,0), P2=(2,1,1)")
    print(f"    wrote {path}")

    print("\n== ratio-2 surface (hyperbolic x line) ==")
    spec2 = apollonius_spec(H, [1, 0, 0], [1.5, 1, -0.5], 2.0)
    mesh2 = extract_isosurface(spec2, [[0.05, 3], [-2, 2], [-2, 2]], 48)
    report_mesh("lam=2", spec2, mesh2)
    path = os.path.join(OUT, "ratio2_h2r.obj")
    write_obj(path, mesh2.vertices, mesh2.faces,
              comment="d(P1,X) = 2 d(X,P2), P1=(1,0,0), P2=(1.5,1,-0.5)")
    print(f"    wrote {path}")

    print("\n== intersection curve of two chained surfaces ==")
    a0 = np.array([1.0, 0.0, 0.0])
    a1 = np.array([-1.0, -1.0, 1.0])
    a2 = np.array([2.0, 1.0, 0.0])
    lam1, lam2 = 1.25, 0.7
    sp1 = apollonius_spec(S, a0, a1, lam1)
    sp2 = apollonius_spec(S, a2, a0, lam2)
    trace = trace_intersection_curve(sp1, sp2, seed=(a0 + a1 + a2) / 3.0)
    print(f"  lam1={lam1}, lam2={lam2}: {len(trace.points)} points, "
          f"closed={trace.closed}")
    if len(trace.points):
        worst = 0.0
        for y in trace.points[::5]:
            worst = max(
                worst,
                abs(distance(S, a0, y) - lam1 * distance(S, y, a1)),
                abs(distance(S, a2, y) - lam2 * distance(S, y, a0)))
        print(f"    max constraint defect on the trace: {worst:.3g}")
        # the two ratios compose along the chain
        y = trace.points[0]
        print(f"    d(a2,y)/d(y,a1) = "
              f"{distance(S, a2, y) / distance(S, y, a1):.9f} "
              f"(lam1*lam2 = {lam1 * lam2})")
    path = os.path.join(OUT, "chain_curve_s2r.json")
    write_polyline_json(path, trace.points, trace.closed,
                        extra={"geometry": "s2r", "lam1": lam1,
                               "lam2": lam2, "message": trace.message})
    print(f"    wrote {path}")


if __name__ == "__main__":
    main()
