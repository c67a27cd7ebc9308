"""The base surfaces: unit sphere (S2R) and unit hyperboloid (H2R).

Central projection from the homogeneous origin E0 = (1, 0, 0, 0) sends a
valid point (x, y, z) to (x, y, z) / N where N is the geometry norm;
the image lies on the base surface, where the classical Menelaus and
Ceva machinery is available.  Base lines are great circles respectively
intersections of planes through the Cartesian origin with the upper
hyperboloid.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import (
    AmbiguousIntersectionError,
    GeometryError,
    NonCollinearError,
)
from .geodesics import clamp_cosh, clamp_unit
from .model import Geometry, geometry_norm, validate_point

__all__ = [
    "project_to_base",
    "base_inner",
    "base_distance",
    "is_base_point",
    "base_line_intersect",
    "base_simple_ratio",
    "base_point_between",
]

COLLINEAR_TOL = 1e-9


def project_to_base(geom: Geometry, p) -> np.ndarray:
    """Central projection of a valid model point onto the base surface."""
    a = validate_point(geom, p)
    return a / geometry_norm(geom, p)


def base_inner(geom: Geometry, a, b) -> float:
    """Euclidean (S2R) or Minkowski signature (+,-,-) (H2R) inner product."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    return float(a[0] * b[0] + geom.sign * (a[1] * b[1] + a[2] * b[2]))


def is_base_point(geom: Geometry, a, tol: float = 1e-9) -> bool:
    a = np.asarray(a, dtype=float)
    if not np.all(np.isfinite(a)) or a.shape != (3,):
        return False
    if geom is Geometry.H2R and a[0] <= 0.0:
        return False
    return abs(base_inner(geom, a, a) - 1.0) <= tol


def _require_base(geom: Geometry, a) -> np.ndarray:
    a = np.asarray(a, dtype=float)
    if not is_base_point(geom, a):
        raise GeometryError(f"{geom.tag}: not a unit base point: {a!r}")
    return a


def base_distance(geom: Geometry, a, b) -> float:
    """Intrinsic distance between two base points.

    Spherical arcs use the principal branch, so they never exceed pi.
    """
    a = _require_base(geom, a)
    b = _require_base(geom, b)
    w = base_inner(geom, a, b)
    if geom is Geometry.S2R:
        return math.acos(clamp_unit(w))
    return math.acosh(clamp_cosh(w))


def base_line_intersect(geom: Geometry, line1, line2,
                        tol: float = COLLINEAR_TOL):
    """Intersection of the base lines spanned by two point pairs.

    Parameters
    ----------
    line1, line2 : pair of base points
        Each pair spans a line (great circle / hyperbolic line).

    Returns
    -------
    numpy.ndarray or None
        The intersection point.  For S2R the candidate lying in the
        hemisphere of the defining arcs is chosen (ties raise
        :class:`AmbiguousIntersectionError`).  For H2R ``None`` means
        the lines do not meet on the hyperboloid (parallel or
        ultraparallel planes).  Coincident lines raise
        :class:`GeometryError`.
    """
    a1, a2 = (_require_base(geom, p) for p in line1)
    b1, b2 = (_require_base(geom, p) for p in line2)
    n1 = np.cross(a1, a2)
    n2 = np.cross(b1, b2)
    if np.linalg.norm(n1) < tol or np.linalg.norm(n2) < tol:
        raise GeometryError("line spanned by (nearly) dependent points")
    w = np.cross(n1, n2)
    nw = np.linalg.norm(w)
    if nw < tol:
        raise GeometryError("coincident base lines have no unique intersection")
    w = w / nw
    if geom is Geometry.S2R:
        mids = []
        for u, vv in ((a1, a2), (b1, b2)):
            m = u + vv
            nm = np.linalg.norm(m)
            # Antipodal defining points leave the arc midpoint undefined;
            # fall back to one endpoint for the hemisphere score.
            mids.append(m / nm if nm > tol else u)
        score = float(np.dot(w, mids[0] + mids[1]))
        if abs(score) <= tol:
            raise AmbiguousIntersectionError(
                f"antipodal candidates {w} and {-w} score equally")
        return w if score > 0.0 else -w
    q = w[0] * w[0] - w[1] * w[1] - w[2] * w[2]
    if q <= tol:
        return None
    w = w / math.sqrt(q)
    return w if w[0] > 0.0 else -w


def base_point_between(geom: Geometry, a, p, b, tol: float = COLLINEAR_TOL) -> bool:
    """True when base point ``p`` lies on the segment from ``a`` to ``b``."""
    dap = base_distance(geom, a, p)
    dpb = base_distance(geom, p, b)
    dab = base_distance(geom, a, b)
    if geom is Geometry.S2R and dab >= math.pi - tol:
        raise GeometryError("betweenness undefined on a full semicircle")
    return abs(dap + dpb - dab) <= tol


def base_simple_ratio(geom: Geometry, a, p, b, tol: float = COLLINEAR_TOL) -> float:
    """Signed simple ratio of collinear base points.

    Magnitude sin(d(A,P)) / sin(d(P,B)) on the sphere and
    sinh / sinh on the hyperboloid; the sign is positive exactly when P
    lies between A and B.  Swapping A and B therefore yields the
    reciprocal with the same sign: s(A,P,B) * s(B,P,A) = 1.
    """
    a = _require_base(geom, a)
    p = _require_base(geom, p)
    b = _require_base(geom, b)
    if min(base_distance(geom, a, p), base_distance(geom, p, b),
           base_distance(geom, a, b)) <= tol:
        raise GeometryError("simple ratio needs three distinct points")
    if abs(float(np.linalg.det(np.stack([a, p, b])))) > tol:
        raise NonCollinearError("points do not lie on one base line")
    dap = base_distance(geom, a, p)
    dpb = base_distance(geom, p, b)
    value = geom.weight(dap) / geom.weight(dpb)
    return value if base_point_between(geom, a, p, b, tol) else -value
