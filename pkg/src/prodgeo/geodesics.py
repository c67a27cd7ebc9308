"""Geodesics from the origin, parameter inversion, and distance.

A unit-speed geodesic through the origin (1, 1, 0, 0) is labelled by a
base direction u in (-pi, pi], a fibre slope v in [-pi/2, pi/2] and arc
length tau >= 0.  Writing s = tau cos(v) for the base arc and
t = tau sin(v) for the fibre coordinate, the Cartesian curve is

    S2R:  x = e^t cos(s),  y = e^t sin(s) cos(u),  z = e^t sin(s) sin(u)
    H2R:  x = e^t cosh(s), y = e^t sinh(s) cos(u), z = e^t sinh(s) sin(u)

Inverting the curve at a given endpoint splits into the branches listed
in :data:`BRANCHES`; the closed-form distance combines the base angle
and the fibre difference by Pythagoras.  ``arc_length_quadrature`` is an
independent oracle that integrates the ambient line element along the
curve instead of using the closed form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import GeometryError, InvalidPointError
from .numerics import composite_simpson
from .model import (
    Geometry,
    ZERO_TOL,
    as_point,
    geometry_norm,
    translate_to_origin,
    validate_point,
)

__all__ = [
    "GeodesicParams",
    "BRANCHES",
    "geodesic_point",
    "geodesic_points",
    "invert_geodesic",
    "distance",
    "distance_via_inversion",
    "arc_length_quadrature",
    "geodesic_between",
    "point_on_geodesic",
    "geodesic_midpoint",
    "clamp_unit",
    "clamp_cosh",
]

#: Branch labels reported by :func:`invert_geodesic`, keyed by geometry.
#: "generic"          -- y and z both nonzero, generic norm
#: "xz_plane"         -- y = 0, target in the x-z coordinate plane
#: "xz_plane_unit"    -- y = 0 and unit norm (pure base arc)
#: "fibre"            -- y = z = 0, target on the fibre axis
#: "fibre_antipodal"  -- S2R only: fibre axis with x < 0 (semicircle arc),
#:                       a continuity extension of the fibre branch
#: "polar_axis"       -- S2R only: x = y = 0, base point at a pole
BRANCHES = {
    Geometry.S2R: ("generic", "xz_plane", "xz_plane_unit", "fibre",
                   "fibre_antipodal", "polar_axis"),
    Geometry.H2R: ("generic", "xz_plane", "xz_plane_unit", "fibre"),
}

CLAMP_TOL = 1e-10


@dataclass(frozen=True)
class GeodesicParams:
    """Direction (u, v) and arc length tau of an origin geodesic.

    ``branch`` records which inversion case produced the parameters; it
    is informational and ignored by equality-sensitive callers.
    """

    u: float
    v: float
    tau: float
    branch: str = field(default="", compare=False)


def clamp_unit(w: float, tol: float = CLAMP_TOL) -> float:
    """Clamp an arccos argument to [-1, 1]; larger violations raise."""
    if w > 1.0 + tol or w < -1.0 - tol:
        raise GeometryError(f"arccos argument {w!r} outside [-1, 1] beyond tolerance")
    return min(1.0, max(-1.0, w))


def clamp_cosh(w: float, tol: float = CLAMP_TOL) -> float:
    """Clamp an arccosh argument to [1, inf); smaller values raise."""
    if w < 1.0 - tol:
        raise GeometryError(f"arccosh argument {w!r} below 1 beyond tolerance")
    return max(1.0, w)


def geodesic_point(geom: Geometry, u: float, v: float, tau: float) -> np.ndarray:
    """Point of the origin geodesic (u, v) at arc length tau.

    Negative tau walks the backward extension of the same curve.
    """
    s = tau * math.cos(v)
    t = tau * math.sin(v)
    et = math.exp(t)
    if geom is Geometry.S2R:
        return np.array([
            et * math.cos(s),
            et * math.sin(s) * math.cos(u),
            et * math.sin(s) * math.sin(u),
        ])
    return np.array([
        et * math.cosh(s),
        et * math.sinh(s) * math.cos(u),
        et * math.sinh(s) * math.sin(u),
    ])


def geodesic_points(geom: Geometry, u: float, v: float, taus) -> np.ndarray:
    """Vectorized :func:`geodesic_point`: rows for each tau in ``taus``."""
    taus = np.asarray(taus, dtype=float)
    s = taus * math.cos(v)
    t = taus * math.sin(v)
    et = np.exp(t)
    if geom is Geometry.S2R:
        base = np.stack([np.cos(s), np.sin(s) * math.cos(u), np.sin(s) * math.sin(u)])
    else:
        base = np.stack([np.cosh(s), np.sinh(s) * math.cos(u), np.sinh(s) * math.sin(u)])
    return (et * base).T


def invert_geodesic(geom: Geometry, p) -> GeodesicParams:
    """Parameters (u, v, tau) of the origin geodesic reaching ``p``.

    Branch dispatch follows the coordinate case analysis recorded in
    :data:`BRANCHES`.  Coordinates within 1e-12 (relative to the point's
    magnitude) of zero are treated as exactly zero.
    """
    x, y, z = validate_point(geom, p)
    mag = max(abs(x), abs(y), abs(z))
    zt = ZERO_TOL * (1.0 + mag)
    y_zero = abs(y) <= zt
    z_zero = abs(z) <= zt
    x_zero = abs(x) <= zt

    n = geometry_norm(geom, p)
    t = math.log(n)

    if y_zero and z_zero:
        # Fibre axis.  For S2R the axis also contains the antipodal ray
        # x < 0, reached by a semicircle base arc; extend by continuity.
        if geom is Geometry.S2R and x < 0.0:
            s = math.pi
            return GeodesicParams(0.0, math.atan2(t, s), math.hypot(s, t),
                                  "fibre_antipodal")
        if abs(t) <= ZERO_TOL:
            raise InvalidPointError("cannot invert at the origin itself")
        return GeodesicParams(0.0, math.copysign(math.pi / 2.0, t), abs(t), "fibre")

    if geom is Geometry.S2R and x_zero and y_zero:
        # Base point at a pole of the sphere: quarter-circle base arc.
        s = math.pi / 2.0
        u = math.copysign(math.pi / 2.0, z)
        return GeodesicParams(u, math.atan2(t, s), math.hypot(s, t), "polar_axis")

    if geom is Geometry.S2R:
        s = math.acos(clamp_unit(x / n))
    else:
        s = math.acosh(clamp_cosh(x / n))

    if y_zero:
        u = math.copysign(math.pi / 2.0, z)
        branch = "xz_plane_unit" if abs(n - 1.0) <= zt else "xz_plane"
    else:
        u = math.atan2(z, y)
        branch = "generic"
    return GeodesicParams(u, math.atan2(t, s), math.hypot(s, t), branch)


def distance(geom: Geometry, p, q) -> float:
    """Closed-form geodesic distance between two valid points.

    Pythagorean combination of the base angle between the projected
    points and the fibre difference log(N_p / N_q).  For S2R the base
    angle uses the principal arccos branch, so base arcs never exceed a
    semicircle.
    """
    a = validate_point(geom, p)
    b = validate_point(geom, q)
    na = geometry_norm(geom, a)
    nb = geometry_norm(geom, b)
    inner = (a[0] * b[0] + geom.sign * (a[1] * b[1] + a[2] * b[2])) / (na * nb)
    if geom is Geometry.S2R:
        ang = math.acos(clamp_unit(inner))
    else:
        ang = math.acosh(clamp_cosh(inner))
    return math.hypot(ang, math.log(na / nb))


def distance_via_inversion(geom: Geometry, p, q) -> float:
    """Distance computed by translating ``p`` to the origin and inverting.

    Independent route used to cross-check :func:`distance`.
    """
    iso = translate_to_origin(geom, p)
    return invert_geodesic(geom, iso.apply(q)).tau


# ---------------------------------------------------------------------------
# Quadrature oracle
# ---------------------------------------------------------------------------

def _speed_s2r(pts: np.ndarray, vel: np.ndarray) -> np.ndarray:
    # ds^2 = (dx^2 + dy^2 + dz^2) / (x^2 + y^2 + z^2)
    num = np.einsum("ij,ij->i", vel, vel)
    den = np.einsum("ij,ij->i", pts, pts)
    return np.sqrt(num / den)


def _speed_h2r(pts: np.ndarray, vel: np.ndarray) -> np.ndarray:
    # Quadratic form of the ambient H2R line element:
    # ds^2 = [ (x^2+y^2+z^2) dx^2 - 4xy dx dy - 4xz dx dz
    #          + (x^2+y^2-z^2) dy^2 + 4yz dy dz + (x^2-y^2+z^2) dz^2 ]
    #        / (x^2 - y^2 - z^2)^2
    x, y, z = pts.T
    dx, dy, dz = vel.T
    q = x * x - y * y - z * z
    num = ((x * x + y * y + z * z) * dx * dx
           - 4.0 * x * y * dx * dy
           - 4.0 * x * z * dx * dz
           + (x * x + y * y - z * z) * dy * dy
           + 4.0 * y * z * dy * dz
           + (x * x - y * y + z * z) * dz * dz)
    return np.sqrt(num) / q


def _velocity(geom: Geometry, u: float, v: float, taus: np.ndarray) -> np.ndarray:
    sv, cv = math.sin(v), math.cos(v)
    s = taus * cv
    t = taus * sv
    et = np.exp(t)
    if geom is Geometry.S2R:
        cs, ss = np.cos(s), np.sin(s)
        dx = et * (sv * cs - cv * ss)
        dy = et * (sv * ss + cv * cs) * math.cos(u)
        dz = et * (sv * ss + cv * cs) * math.sin(u)
    else:
        ch, sh = np.cosh(s), np.sinh(s)
        dx = et * (sv * ch + cv * sh)
        dy = et * (sv * sh + cv * ch) * math.cos(u)
        dz = et * (sv * sh + cv * ch) * math.sin(u)
    return np.stack([dx, dy, dz]).T


def arc_length_quadrature(geom: Geometry, u: float, v: float, tau: float,
                          steps: int = 10_000) -> float:
    """Arc length of the origin geodesic by composite Simpson quadrature.

    Integrates the ambient line element along the explicitly sampled
    curve; serves as the independent oracle for the closed-form
    distance.  ``steps`` must be even and at least 2.
    """
    if steps < 2 or steps % 2 != 0:
        raise ValueError("steps must be an even integer >= 2")
    taus = np.linspace(0.0, tau, steps + 1)
    pts = geodesic_points(geom, u, v, taus)
    vel = _velocity(geom, u, v, taus)
    speed = _speed_s2r(pts, vel) if geom is Geometry.S2R else _speed_h2r(pts, vel)
    return composite_simpson(speed, tau / steps)


# ---------------------------------------------------------------------------
# Segments
# ---------------------------------------------------------------------------

def geodesic_between(geom: Geometry, p, q) -> GeodesicParams:
    """Parameters of the geodesic from ``p`` to ``q`` in p's frame."""
    iso = translate_to_origin(geom, p)
    return invert_geodesic(geom, iso.apply(q))


def point_on_geodesic(geom: Geometry, p, q, s: float) -> np.ndarray:
    """Point at arc length ``s`` along the geodesic from ``p`` toward ``q``.

    ``s`` may exceed the segment length or be negative; the curve is
    simply continued.
    """
    iso = translate_to_origin(geom, p)
    params = invert_geodesic(geom, iso.apply(q))
    return iso.apply_inverse(geodesic_point(geom, params.u, params.v, s))


def geodesic_midpoint(geom: Geometry, p, q) -> np.ndarray:
    """Midpoint of the geodesic segment from ``p`` to ``q``."""
    iso = translate_to_origin(geom, p)
    params = invert_geodesic(geom, iso.apply(q))
    return iso.apply_inverse(
        geodesic_point(geom, params.u, params.v, 0.5 * params.tau))
