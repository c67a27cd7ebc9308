"""Circumscribed spheres of geodesic tetrahedra.

The center is the common point of the three equidistance surfaces
between vertex a0 and each of a1, a2, a3, found by damped Newton on the
squared-distance differences.  In H2R the three surfaces need not meet
at a valid model point; such configurations are classified instead of
being reported as bare failures.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

import numpy as np

from .errors import ConvergenceError, GeometryError
from .geodesics import distance
from .model import Geometry, as_point, check_point, norm_squared, validate_point
from .numerics import SolverReport, newton_solve

__all__ = [
    "CenterClassification",
    "Tetrahedron",
    "CircumsphereResult",
    "euclidean_circumcenter",
    "circumscribed_sphere",
]

DEGENERACY_TOL = 1e-9
RESIDUAL_TOL = 1e-10
Q_CLASSIFY_TOL = 1e-9


class CenterClassification(Enum):
    PROPER_SPHERE = "PROPER_SPHERE"
    S2R_RADIUS_EXCEEDS_PI = "S2R_RADIUS_EXCEEDS_PI"
    H2R_OUTER_CENTER = "H2R_OUTER_CENTER"
    H2R_IDEAL_CENTER = "H2R_IDEAL_CENTER"


@dataclass(frozen=True)
class Tetrahedron:
    a0: np.ndarray
    a1: np.ndarray
    a2: np.ndarray
    a3: np.ndarray

    @classmethod
    def from_points(cls, points) -> "Tetrahedron":
        pts = [as_point(p) for p in points]
        if len(pts) != 4:
            raise GeometryError("a tetrahedron needs exactly four vertices")
        return cls(*pts)

    @property
    def vertices(self) -> list:
        return [self.a0, self.a1, self.a2, self.a3]


def check_tetrahedron(geom: Geometry, tet: Tetrahedron,
                      tol: float = DEGENERACY_TOL) -> None:
    """Raise if the vertex set is degenerate.

    Degenerate means: an invalid vertex, two coincident vertices, or
    three vertices on one geodesic (detected by a vanishing triangle
    defect of the pairwise distances).
    """
    verts = tet.vertices
    for v in verts:
        validate_point(geom, v)
    # Coincidence is checked on coordinates: the closed-form distance of
    # near-equal points rounds through arccos(1 - eps) and comes back as
    # ~sqrt(eps), far above any sensible tolerance.
    scale = max(float(np.linalg.norm(v)) for v in verts)
    d = {}
    for i in range(4):
        for j in range(i + 1, 4):
            if np.linalg.norm(verts[i] - verts[j]) <= tol * scale:
                raise GeometryError(f"vertices {i} and {j} coincide")
            d[i, j] = d[j, i] = distance(geom, verts[i], verts[j])
    for i in range(4):
        for j in range(4):
            for k in range(4):
                if len({i, j, k}) < 3 or j > k:
                    continue
                if abs(d[i, j] + d[i, k] - d[j, k]) <= tol:
                    raise GeometryError(
                        f"vertices {j}, {i}, {k} lie on one geodesic")


@dataclass(frozen=True)
class CircumsphereResult:
    center: np.ndarray
    radius: Optional[float]
    classification: CenterClassification
    residual: float
    converged: bool
    alternates: tuple = field(default_factory=tuple)
    report: Optional[SolverReport] = None

    def distances(self, geom: Geometry, tet: Tetrahedron) -> np.ndarray:
        return np.array([distance(geom, v, self.center)
                         for v in tet.vertices])


def euclidean_circumcenter(vertices) -> np.ndarray:
    """Circumcenter of four points of flat 3-space (solver warm start).

    Falls back to the centroid when the points are coplanar.
    """
    verts = [np.asarray(v, dtype=float) for v in vertices]
    a0 = verts[0]
    amat = np.array([2.0 * (v - a0) for v in verts[1:]])
    rhs = np.array([float(v @ v - a0 @ a0) for v in verts[1:]])
    try:
        sol = np.linalg.solve(amat, rhs)
    except np.linalg.LinAlgError:
        return np.mean(verts, axis=0)
    if not np.all(np.isfinite(sol)):
        return np.mean(verts, axis=0)
    return sol


def _starts(geom: Geometry, verts) -> list:
    centroid = np.mean(verts, axis=0)
    starts = [euclidean_circumcenter(verts), centroid]
    for i in range(4):
        starts.append(np.mean([verts[j] for j in range(4) if j != i], axis=0))
    cleaned = []
    for s in starts:
        if not check_point(geom, s).valid:
            # The H2R cone is convex, so the vertex centroid is always a
            # valid substitute for a start that fell outside.
            s = centroid
        if not any(np.allclose(s, c, atol=1e-12) for c in cleaned):
            cleaned.append(s)
    return cleaned


def _ideal_direction(verts) -> tuple[Optional[np.ndarray], float]:
    """Common asymptotic direction of the three equidistance surfaces.

    When the four vertices are coplanar in the flat sense, the surfaces
    share an asymptotic line m with (a0 - ai)' J m = 0; its quadratic
    form value decides between a boundary point and an outer point.
    """
    diffs = np.array([verts[0] - verts[i] for i in (1, 2, 3)])
    scale = max(float(np.max(np.abs(diffs))), 1.0)
    if abs(float(np.linalg.det(diffs))) > DEGENERACY_TOL * scale ** 3:
        return None, math.nan
    jmat = np.diag([1.0, -1.0, -1.0])
    _, sing, vt = np.linalg.svd(diffs @ jmat)
    m = vt[-1]
    if sing[1] < 1e-12 * max(sing[0], 1.0):
        return None, math.nan
    if m[0] < 0.0:
        m = -m
    q = float(m[0] ** 2 - m[1] ** 2 - m[2] ** 2)
    return m, q


def _classify_h2r(center: np.ndarray) -> CenterClassification:
    q = float(norm_squared(Geometry.H2R, center))
    if q > Q_CLASSIFY_TOL and center[0] > 0.0:
        return CenterClassification.PROPER_SPHERE
    if abs(q) <= Q_CLASSIFY_TOL:
        return CenterClassification.H2R_IDEAL_CENTER
    return CenterClassification.H2R_OUTER_CENTER


def circumscribed_sphere(geom: Geometry, tet, tol: float = 1e-12) -> CircumsphereResult:
    """Center, radius, and classification for a geodesic tetrahedron.

    Multistart damped Newton on F_i(c) = d^2(a0,c) - d^2(ai,c).  All
    converged solutions are deduplicated; the first by start priority is
    reported and the others returned as ``alternates``.  H2R vertex sets
    whose equidistance surfaces only meet outside the model are
    classified as outer/ideal with ``converged=False`` and no radius.
    """
    if not isinstance(tet, Tetrahedron):
        tet = Tetrahedron.from_points(tet)
    check_tetrahedron(geom, tet)
    verts = tet.vertices

    def residual(c):
        # Total on all of R^3 so the finite-difference stencil may poke
        # past the valid domain; NaN rows make the solver back off.
        try:
            d0 = distance(geom, verts[0], c) ** 2
            return np.array([d0 - distance(geom, verts[i], c) ** 2
                             for i in (1, 2, 3)])
        except GeometryError:
            return np.full(3, np.nan)

    def inside(c):
        return check_point(geom, c).valid

    solutions = []
    best_x, best_report = None, None
    for start in _starts(geom, verts):
        x, report = newton_solve(residual, start, tol=tol, inside=inside)
        if report.converged and report.residual_norm <= RESIDUAL_TOL:
            if not any(np.linalg.norm(x - s) <= 1e-6 * (1.0 + np.linalg.norm(s))
                       for s, _ in solutions):
                solutions.append((x, report))
        elif best_report is None or report.residual_norm < best_report.residual_norm:
            best_x, best_report = x, report

    if solutions:
        center, report = solutions[0]
        radius = distance(geom, verts[1], center)
        resid = float(report.residual_norm)
        alternates = tuple(s for s, _ in solutions[1:])
        if geom is Geometry.S2R:
            cls = (CenterClassification.PROPER_SPHERE if radius <= math.pi
                   else CenterClassification.S2R_RADIUS_EXCEEDS_PI)
            return CircumsphereResult(center, radius, cls, resid, True,
                                      alternates, report)
        cls = _classify_h2r(center)
        if cls is not CenterClassification.PROPER_SPHERE:
            radius = None
        return CircumsphereResult(center, radius, cls, resid, True,
                                  alternates, report)

    best_resid = math.inf if best_report is None else best_report.residual_norm
    if geom is Geometry.H2R:
        norms = np.array([math.sqrt(norm_squared(geom, v)) for v in verts])
        if np.max(np.abs(norms / norms[0] - 1.0)) <= DEGENERACY_TOL:
            # Equal fibre height: each equidistance surface is a flat
            # plane through the cone apex, so the three of them meet
            # only at the apex, an outer point of the model.
            return CircumsphereResult(
                np.zeros(3), None, CenterClassification.H2R_OUTER_CENTER,
                best_resid, False, (), best_report)
        m, q = _ideal_direction(verts)
        if m is not None:
            cls = (CenterClassification.H2R_IDEAL_CENTER
                   if abs(q) <= Q_CLASSIFY_TOL
                   else CenterClassification.H2R_OUTER_CENTER)
            if q <= Q_CLASSIFY_TOL:
                return CircumsphereResult(m, None, cls, best_resid, False,
                                          (), best_report)
    raise ConvergenceError(
        "circumsphere solver did not converge from any start "
        f"(best residual {best_resid:.3e})")
