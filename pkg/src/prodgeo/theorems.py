"""Simply ratios on geodesics and Menelaus / Ceva checkers.

Two ratio flavours live here.  On a non-fibre geodesic the ratio scales
both arcs by cos(v) before applying the curvature weight (sin or sinh),
which makes it equal to the base-plane simply ratio of the centrally
projected points.  On fibre-like geodesics, and on every side of a
fibre-type triangle (whose flat surface is isometric to a Euclidean
plane), the plain signed distance ratio is the right notion.

Sign convention for all ratios: positive iff the middle point lies
between the endpoints on the geodesic.  Consequently swapping the
endpoints inverts the magnitude and keeps the sign,

    s(A, P, B) * s(B, P, A) = 1,

because betweenness does not depend on the order of A and B.  The
negated-swap identity s(A, P, B) = -s(B, P, A) sometimes quoted
alongside this definition cannot hold for it: both sides would be
positive for interior P.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import GeometryError, NonCollinearError, SemicircleError
from .geodesics import (
    GeodesicParams,
    distance,
    geodesic_point,
    invert_geodesic,
)
from .model import Geometry, geometry_norm, translate_to_origin, validate_point
from .trianglesurface import GeodesicTriangle, TriangleKind

COS_V_TOL = 1e-9
COINCIDENCE_TOL = 1e-12
MEMBERSHIP_TOL = 1e-9
ARC_TOL = 1e-9


def _side_frame(geom: Geometry, a, b):
    """Translate ``a`` to the origin and invert the geodesic toward ``b``."""
    iso = translate_to_origin(geom, a)
    params = invert_geodesic(geom, iso.apply(b))
    return iso, params


def _param_in_frame(geom: Geometry, params: GeodesicParams, pp,
                    tol: float) -> float:
    """Arc-length parameter of frame point ``pp`` on the origin geodesic.

    The candidate magnitude comes from inverting ``pp`` itself; the sign
    is fixed by reconstructing the point on the forward or backward ray
    and comparing.  Points farther than ``tol`` (scaled) from both rays
    raise, which also rejects spherical positions whose base arc from
    the origin exceeds a semicircle (the principal inversion cannot see
    those).
    """
    pp = np.asarray(pp, dtype=float)
    # Catch the origin by coordinates before inverting: inversion is
    # singular there, and nearby the arc length equals the coordinate
    # distance to first order anyway.
    if np.linalg.norm(pp - np.array([1.0, 0.0, 0.0])) <= tol:
        return 0.0
    cand = invert_geodesic(geom, pp)
    if cand.tau <= tol:
        return 0.0
    scale = 1.0 + float(np.linalg.norm(pp))
    for t in (cand.tau, -cand.tau):
        y = geodesic_point(geom, params.u, params.v, t)
        if np.linalg.norm(y - pp) <= tol * scale:
            return t
    raise NonCollinearError(
        "point is not on the geodesic through the endpoints "
        "(or lies beyond a semicircle base arc)")


def geodesic_parameter(geom: Geometry, a, b, p, *,
                       tol: float = MEMBERSHIP_TOL) -> float:
    """Signed arc-length parameter of p on the geodesic from a toward b.

    Zero at a, positive toward b, negative on the backward extension.
    Raises :class:`NonCollinearError` for points off the curve.
    """
    a = validate_point(geom, a)
    b = validate_point(geom, b)
    iso, params = _side_frame(geom, a, b)
    return _param_in_frame(geom, params, iso.apply(validate_point(geom, p)),
                           tol)


def _check_distinct(geom: Geometry, a, p, b) -> None:
    for x, y, names in ((a, p, "first and middle"),
                        (p, b, "middle and last"),
                        (a, b, "first and last")):
        if distance(geom, x, y) <= COINCIDENCE_TOL:
            raise GeometryError(f"coincident points ({names})")


def _signed_ratio(geom: Geometry, a, p, b, *, weighted: bool,
                  tol: float = MEMBERSHIP_TOL) -> float:
    """Shared machinery behind both ratio flavours.

    ``weighted`` applies the cos(v) arc scaling and the curvature weight
    of the base surface; otherwise the plain arc lengths are compared.
    """
    a = validate_point(geom, a)
    p = validate_point(geom, p)
    b = validate_point(geom, b)
    _check_distinct(geom, a, p, b)
    iso, params = _side_frame(geom, a, b)
    cv = math.cos(params.v)
    t_p = _param_in_frame(geom, params, iso.apply(p), tol)
    dap = abs(t_p)
    dpb = abs(params.tau - t_p)
    if weighted:
        if abs(cv) <= COS_V_TOL:
            raise GeometryError(
                "fibre-like geodesic: use the plain distance ratio")
        if geom is Geometry.S2R:
            for arc in (dap, dpb, params.tau):
                if arc * cv >= math.pi - ARC_TOL:
                    raise SemicircleError(
                        "base arc meets or exceeds a semicircle")
        num = geom.weight(dap * cv)
        den = geom.weight(dpb * cv)
    else:
        num, den = dap, dpb
    if den <= COINCIDENCE_TOL:
        raise GeometryError("middle point coincides with the last point")
    mag = num / den
    between = 0.0 < t_p < params.tau
    return mag if between else -mag


def simple_ratio_general(geom: Geometry, a, p, b, *,
                         tol: float = MEMBERSHIP_TOL) -> float:
    """Signed ratio of p on the non-fibre geodesic through a and b.

    Magnitude w(d(a,p) cos v) / w(d(p,b) cos v) with w = sin or sinh,
    positive iff p is between a and b.  Equals the base-plane simply
    ratio of the centrally projected points.
    """
    return _signed_ratio(geom, a, p, b, weighted=True, tol=tol)


def simple_ratio_fibre(geom: Geometry, a, p, b, *,
                       tol: float = MEMBERSHIP_TOL) -> float:
    """Signed plain distance ratio of p on the fibre geodesic through a, b."""
    a = validate_point(geom, a)
    b = validate_point(geom, b)
    _, params = _side_frame(geom, a, b)
    if abs(math.cos(params.v)) > COS_V_TOL:
        raise GeometryError("points do not span a fibre-like geodesic")
    return _signed_ratio(geom, a, p, b, weighted=False, tol=tol)


@dataclass(frozen=True)
class CevaConfig:
    """A cevian point t and the three feet p, q, r on the side geodesics.

    p lies on the geodesic a0-a1, q on a1-a2, r on a2-a0.
    """

    triangle: GeodesicTriangle
    t: np.ndarray
    p: np.ndarray
    q: np.ndarray
    r: np.ndarray


@dataclass(frozen=True)
class MenelausConfig:
    """Transversal points p, q, r on the three side geodesics."""

    triangle: GeodesicTriangle
    p: np.ndarray
    q: np.ndarray
    r: np.ndarray


def _sides(tri: GeodesicTriangle):
    return ((tri.a0, tri.a1), (tri.a1, tri.a2), (tri.a2, tri.a0))


def _require_on_side(geom: Geometry, a, b, x, label: str,
                     tol: float) -> None:
    iso, params = _side_frame(geom, a, b)
    try:
        _param_in_frame(geom, params, iso.apply(x), tol)
    except NonCollinearError:
        raise GeometryError(
            f"{label} does not lie on its side geodesic "
            f"(within {tol:g})") from None


def _side_ratio(geom: Geometry, kind: TriangleKind, a, x, b,
                tol: float) -> float:
    """Ratio of one side, dispatching on triangle kind and side type."""
    if kind is TriangleKind.FIBRE:
        return _signed_ratio(geom, a, x, b, weighted=False, tol=tol)
    _, params = _side_frame(geom, a, b)
    if abs(math.cos(params.v)) <= COS_V_TOL:
        warnings.warn(
            "fibre-like side inside a general-position triangle; "
            "falling back to the plain distance ratio (experimental)",
            stacklevel=3)
        return _signed_ratio(geom, a, x, b, weighted=False, tol=tol)
    return _signed_ratio(geom, a, x, b, weighted=True, tol=tol)


def ceva_product(config: CevaConfig, *,
                 tol: float = MEMBERSHIP_TOL) -> float:
    """Product of the three cevian-foot ratios; +1 for genuine configs."""
    tri = config.triangle
    geom = tri.geometry
    t = validate_point(geom, config.t)
    feet = [validate_point(geom, f) for f in (config.p, config.q, config.r)]
    for (a, b), x, label in zip(_sides(tri), feet, ("p", "q", "r")):
        _require_on_side(geom, a, b, x, label, tol)
    for (a, b), label in zip(_sides(tri), ("a0-a1", "a1-a2", "a2-a0")):
        iso, params = _side_frame(geom, a, b)
        try:
            _param_in_frame(geom, params, iso.apply(t), tol)
        except NonCollinearError:
            continue
        raise GeometryError(f"cevian point lies on side {label}")
    prod = 1.0
    for (a, b), x in zip(_sides(tri), feet):
        prod *= _side_ratio(geom, tri.kind, a, x, b, tol)
    return prod


def menelaus_product(config: MenelausConfig, *,
                     tol: float = MEMBERSHIP_TOL) -> float:
    """Product of the three transversal ratios; -1 for genuine configs."""
    tri = config.triangle
    geom = tri.geometry
    feet = [validate_point(geom, f) for f in (config.p, config.q, config.r)]
    for (a, b), x, label in zip(_sides(tri), feet, ("p", "q", "r")):
        _require_on_side(geom, a, b, x, label, tol)
        for v, vlabel in ((a, "first"), (b, "second")):
            if distance(geom, x, v) <= 1e-9:
                raise GeometryError(
                    f"transversal point {label} coincides with the "
                    f"{vlabel} vertex of its side")
    prod = 1.0
    for (a, b), x in zip(_sides(tri), feet):
        prod *= _side_ratio(geom, tri.kind, a, x, b, tol)
    return prod


def fibre_pythagoras_defect(geom: Geometry, p1, p2) -> float:
    """Defect of the right-angle split of d(p1, p2) seen from p1's frame.

    After translating p1 to the origin, the distance to p2 decomposes
    into the base arc to the projected image b* and the fibre height
    from b* up to p2; the return value is the absolute defect of

        d(p1, p2)^2 = d(o, b*)^2 + d(b*, p2)^2,

    the decomposition that identifies flat fibre planes with the
    Euclidean plane.
    """
    p1 = validate_point(geom, p1)
    p2 = validate_point(geom, p2)
    iso = translate_to_origin(geom, p1)
    q = iso.apply(p2)
    bstar = np.asarray(q, dtype=float) / geometry_norm(geom, q)
    origin = np.array([1.0, 0.0, 0.0])
    d_full = distance(geom, origin, q)
    d_base = distance(geom, origin, bstar)
    d_fibre = distance(geom, bstar, q)
    return abs(d_full ** 2 - d_base ** 2 - d_fibre ** 2)
