#!/usr/bin/env python3
"""Circumscribed spheres of geodesic tetrahedra.

The center of the circumscribed sphere is the point equidistant from
all four vertices, found where three equidistance surfaces meet.  The
solver runs damped Newton on the three distance-difference residuals,
started from the Euclidean circumcenter.

Not every tetrahedron has a proper circumscribed sphere:

* in the sphere-times-line model a solution with radius above pi wraps
  the base sphere and is classified separately;
* in the hyperbolic model the Newton iterate can leave the model cone
  (outer center) or converge to its boundary (ideal center), in which
  case the circumscribed surface is no longer a geodesic sphere.

The script solves four reference tetrahedra, checks equidistance, and
then shows each non-proper classification on a constructed example.
"""

import math
import os

import numpy as np

from prodgeo.circumsphere import (
    CenterClassification,
    Tetrahedron,
    circumscribed_sphere,
)
from prodgeo.geodesics import distance
from prodgeo.io import write_json
from prodgeo.model import Geometry

OUT = os.path.join(os.path.dirname(__file__), "out")

S = Geometry.S2R
H = Geometry.H2R

CASES = [
    ("s2r-wide", S, [(1, 0, 0), (-2, -0.5, 3), (1, 3, 0), (4, -1, 2)]),
    ("s2r-upper", S, [(1, 0, 0), (2, 2, 3), (3, 1, 0), (4, -1, 2)]),
    ("h2r-spread", H, [(1, 0, 0), (1.5, 1, -1), (1, 0.5, 0),
                       (1, 0.5, 0.5)]),
    ("h2r-tight", H, [(1, 0, 0), (0.9, 0.12, -0.1), (1.1, 0.2, 0),
                      (0.8, -0.1, 0.05)]),
]


def main():
    os.makedirs(OUT, exist_ok=True)
    results = {}

    print("== proper circumscribed spheres ==")
    for tag, geom, verts in CASES:
        res = circumscribed_sphere(geom, Tetrahedron.from_points(verts))
        dists = [distance(geom, res.center, v) for v in verts]
        spread = max(dists) - min(dists)
        print(f"  {tag:11s} center=({res.center[0]:+.6f}, "
              f"{res.center[1]:+.6f}, {res.center[2]:+.6f})  "
              f"r={res.radius:.6f}  equidistance spread={spread:.2e}")
        results[tag] = {
            "geometry": geom.tag,
            "vertices": [list(map(float, v)) for v in verts],
            "center": [float(c) for c in res.center],
            "radius": float(res.radius),
            "classification": res.classification.value,
        }

    print("\n== radius beyond pi, wrapping the base sphere ==")
    big_r = 3.3
    h = math.sqrt(big_r ** 2 - (math.pi / 2.0) ** 2)
    verts = [
        (math.exp(big_r), 0, 0),
        (math.exp(-big_r), 0, 0),
        tuple(math.exp(h) * np.array([0.0, math.cos(0.4), math.sin(0.4)])),
        tuple(math.exp(-h) * np.array([0.0, math.cos(2.0), math.sin(2.0)])),
    ]
    res = circumscribed_sphere(S, Tetrahedron.from_points(verts))
    print(f"  classification={res.classification.value}  "
          f"radius={res.radius:.4f} (> pi)")
    assert res.classification is CenterClassification.S2R_RADIUS_EXCEEDS_PI

    print("\n== center escaping the model cone (hyperbolic x line) ==")

    def hyp(r, a):
        return (math.cosh(r), math.sinh(r) * math.cos(a),
                math.sinh(r) * math.sin(a))

    verts = [hyp(0.3, 0.1), hyp(0.7, 2.0), hyp(0.5, 4.0), hyp(0.9, 5.5)]
    res = circumscribed_sphere(H, Tetrahedron.from_points(verts))
    print(f"  classification={res.classification.value}  radius={res.radius}")
    assert res.classification is CenterClassification.H2R_OUTER_CENTER

    print("\n== center on the cone boundary (hyperbolic x line) ==")
    verts = [(0.5, 0, 0), (1.5, 1, 0.5), (1.0, 0.5, -0.6), (2.5, 2, 1.0)]
    res = circumscribed_sphere(H, Tetrahedron.from_points(verts))
    q = res.center[0] ** 2 - res.center[1] ** 2 - res.center[2] ** 2
    print(f"  classification={res.classification.value}  "
          f"center=({res.center[0]:+.6f}, {res.center[1]:+.6f}, "
          f"{res.center[2]:+.6f})  x^2-y^2-z^2={q:.2e}")
    assert res.classification is CenterClassification.H2R_IDEAL_CENTER

    path = os.path.join(OUT, "circumspheres.json")
    write_json(path, results)
    print(f"\nwrote {path}")


if __name__ == "__main__":
    main()
