"""Reproducible random Menelaus / Ceva configurations.

The checkers need configurations whose feet really do come from a
cevian point or a transversal line.  Construction happens where the
classical theorems are available and is transported to the ambient
space afterwards:

* triangles in general position are built in the base plane (feet via
  classical line intersections) and each foot is lifted to its side
  geodesic by dividing the base arc by cos(v);
* fibre-type triangles live in a flat plane through the coordinate
  origin, which an explicit chart maps isometrically onto the Euclidean
  plane, so the configuration is straight-line algebra in the chart.

All generators draw from a caller-supplied seed and are deterministic
per seed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .baseplane import (
    base_distance,
    base_line_intersect,
    base_point_between,
    project_to_base,
)
from .errors import ConvergenceError, GeometryError, NonCollinearError
from .geodesics import geodesic_between, geodesic_point, invert_geodesic
from .model import (
    Geometry,
    check_point,
    geometry_norm,
    translate_to_origin,
)
from .theorems import CevaConfig, MenelausConfig, geodesic_parameter
from .trianglesurface import GeodesicTriangle, TriangleKind, classify_triangle

MAX_TRIES = 500
VERTEX_MARGIN = 0.05


def _rng(seed) -> np.random.Generator:
    return seed if isinstance(seed, np.random.Generator) else \
        np.random.default_rng(seed)


def _base_normalize(geom: Geometry, w) -> np.ndarray:
    w = np.asarray(w, dtype=float)
    if geom is Geometry.S2R:
        return w / np.linalg.norm(w)
    q = w[0] * w[0] - w[1] * w[1] - w[2] * w[2]
    if q <= 0.0:
        raise GeometryError("combination left the hyperboloid cone")
    w = w / math.sqrt(q)
    return w if w[0] > 0.0 else -w


def _base_interp(geom: Geometry, a, b, s: float) -> np.ndarray:
    """Point at fraction ``s`` of the base arc from a to b.

    Values outside [0, 1] continue the line past the endpoints (the
    sine / hyperbolic-sine combination stays exact there).
    """
    theta = base_distance(geom, a, b)
    den = geom.weight(theta)
    c1 = geom.weight((1.0 - s) * theta) / den
    c2 = geom.weight(s * theta) / den
    return _base_normalize(geom, c1 * np.asarray(a) + c2 * np.asarray(b))


def _random_base_point(geom: Geometry, rng: np.random.Generator,
                       rmax: float = 1.2) -> np.ndarray:
    if geom is Geometry.S2R:
        v = rng.normal(size=3)
        return v / np.linalg.norm(v)
    r = rng.uniform(0.2, rmax)
    ang = rng.uniform(0.0, 2.0 * math.pi)
    return np.array([math.cosh(r),
                     math.sinh(r) * math.cos(ang),
                     math.sinh(r) * math.sin(ang)])


def lift_to_side(geom: Geometry, a, b, base_pt,
                 tol: float = 1e-9) -> np.ndarray:
    """Point of the geodesic a-b whose base projection is ``base_pt``.

    The base arc from a's projection is divided by cos(v) of the side
    to obtain the arc-length parameter; the sign is settled by
    reprojecting both candidates.
    """
    iso = translate_to_origin(geom, a)
    params = invert_geodesic(geom, iso.apply(b))
    cv = math.cos(params.v)
    if abs(cv) <= 1e-9:
        raise GeometryError("cannot lift onto a fibre-like side")
    w = iso.apply(np.asarray(base_pt, dtype=float))
    bp = project_to_base(geom, w)
    origin = np.array([1.0, 0.0, 0.0])
    sigma = base_distance(geom, origin, bp)
    for t in (sigma / cv, -sigma / cv):
        y = geodesic_point(geom, params.u, params.v, t)
        if base_distance(geom, project_to_base(geom, y), bp) <= tol:
            return iso.apply_inverse(y)
    raise NonCollinearError(
        "base point is not on the projected side geodesic")


def _side_arcs_within(geom: Geometry, a, b, x, cap: float) -> bool:
    """Both base arcs cut by ``x`` on the side a-b stay below ``cap``.

    An external point can sit behind a vertex so that the arc measured
    along the side wraps past a semicircle even though its principal
    base distance looks harmless; the signed parameter sees the wrap.
    """
    params = geodesic_between(geom, a, b)
    cv = abs(math.cos(params.v))
    try:
        t = geodesic_parameter(geom, a, b, x)
    except GeometryError:
        return False
    return max(abs(t), abs(params.tau - t)) * cv <= cap


def random_general_triangle(geom: Geometry, seed, *,
                            arc_min: float = 0.4,
                            arc_max: float = math.pi - 0.45,
                            height: float = 0.8) -> GeodesicTriangle:
    """Random triangle in general position with safety margins.

    Pairwise base arcs stay inside [arc_min, arc_max], no side comes
    close to fibre-like, and the base directions are solidly
    independent, so downstream intersection and lifting steps never
    operate near a degeneracy.
    """
    rng = _rng(seed)
    for _ in range(MAX_TRIES):
        us = [_random_base_point(geom, rng) for _ in range(3)]
        arcs = [base_distance(geom, us[i], us[j])
                for i, j in ((0, 1), (1, 2), (2, 0))]
        if min(arcs) < arc_min:
            continue
        if geom is Geometry.S2R and max(arcs) > arc_max:
            continue
        if abs(np.linalg.det(np.stack(us))) < 0.02:
            continue
        hs = rng.uniform(-height, height, size=3)
        verts = [math.exp(h) * u for h, u in zip(hs, us)]
        try:
            tri = classify_triangle(geom, *verts)
        except GeometryError:
            continue
        if tri.kind is not TriangleKind.GENERAL:
            continue
        slopes_ok = True
        for a, b in ((verts[0], verts[1]), (verts[1], verts[2]),
                     (verts[2], verts[0])):
            iso = translate_to_origin(geom, a)
            params = invert_geodesic(geom, iso.apply(b))
            if abs(math.cos(params.v)) < 0.15:
                slopes_ok = False
                break
        if slopes_ok:
            return tri
    raise ConvergenceError("no admissible general triangle found")


@dataclass(frozen=True)
class FibreChart:
    """Isometric chart of a flat plane through the coordinate origin.

    ``to_model(sigma, t)`` maps chart coordinates to model points; the
    Euclidean distance hypot(d_sigma, d_t) equals the model distance,
    which is what lets classical Euclidean constructions transfer.
    """

    geometry: Geometry
    w1: np.ndarray
    w2: np.ndarray

    def to_model(self, sigma: float, t: float) -> np.ndarray:
        if self.geometry is Geometry.S2R:
            u = math.cos(sigma) * self.w1 + math.sin(sigma) * self.w2
        else:
            u = math.cosh(sigma) * self.w1 + math.sinh(sigma) * self.w2
        return math.exp(t) * u


def random_fibre_chart(geom: Geometry, seed) -> FibreChart:
    """Chart of a random admissible flat plane."""
    rng = _rng(seed)
    for _ in range(MAX_TRIES):
        if geom is Geometry.S2R:
            w1 = _random_base_point(geom, rng)
            z = rng.normal(size=3)
            w2 = z - np.dot(z, w1) * w1
            n = np.linalg.norm(w2)
            if n < 0.1:
                continue
            return FibreChart(geom, w1, w2 / n)
        w1 = _random_base_point(geom, rng, rmax=0.6)
        z = rng.normal(size=3)
        jw1 = np.array([w1[0], -w1[1], -w1[2]])
        w2 = z - np.dot(z, jw1) * w1
        q2 = -(w2[0] * w2[0] - w2[1] * w2[1] - w2[2] * w2[2])
        if q2 < 0.01:
            continue
        return FibreChart(geom, w1, w2 / math.sqrt(q2))
    raise ConvergenceError("no admissible fibre chart found")


def _chart_triangle(chart: FibreChart, rng: np.random.Generator):
    """Chart coordinates of a well-separated fibre-type triangle."""
    for _ in range(MAX_TRIES):
        coords = np.stack([
            np.array([rng.uniform(-1.1, 1.1), rng.uniform(-0.9, 0.9)])
            for _ in range(3)])
        d01 = np.linalg.norm(coords[0] - coords[1])
        d12 = np.linalg.norm(coords[1] - coords[2])
        d20 = np.linalg.norm(coords[2] - coords[0])
        if min(d01, d12, d20) < 0.35:
            continue
        e1 = coords[1] - coords[0]
        e2 = coords[2] - coords[0]
        area = 0.5 * abs(e1[0] * e2[1] - e1[1] * e2[0])
        if area < 0.08:
            continue
        pts = [chart.to_model(c[0], c[1]) for c in coords]
        if not all(check_point(chart.geometry, p).valid for p in pts):
            continue
        return coords, pts
    raise ConvergenceError("no admissible fibre triangle found")


def _fibre_ceva(geom: Geometry, rng: np.random.Generator) -> CevaConfig:
    chart = random_fibre_chart(geom, rng)
    coords, pts = _chart_triangle(chart, rng)
    tri = classify_triangle(geom, *pts)
    if tri.kind is not TriangleKind.FIBRE:
        raise ConvergenceError("fibre chart produced a non-fibre triangle")
    bary = rng.uniform(0.2, 1.0, size=3)
    bary = bary / bary.sum()
    t_e = bary @ coords
    # Barycentric coordinates hand over the cevian feet without solves.
    p_e = (bary[0] * coords[0] + bary[1] * coords[1]) / (bary[0] + bary[1])
    q_e = (bary[1] * coords[1] + bary[2] * coords[2]) / (bary[1] + bary[2])
    r_e = (bary[2] * coords[2] + bary[0] * coords[0]) / (bary[2] + bary[0])
    lifted = [chart.to_model(c[0], c[1]) for c in (t_e, p_e, q_e, r_e)]
    if not all(check_point(geom, p).valid for p in lifted):
        raise ConvergenceError("fibre cevian configuration left the model")
    return CevaConfig(tri, *lifted)


def _fibre_menelaus(geom: Geometry,
                    rng: np.random.Generator) -> MenelausConfig:
    for _ in range(MAX_TRIES):
        chart = random_fibre_chart(geom, rng)
        coords, pts = _chart_triangle(chart, rng)
        a_e, b_e, c_e = coords
        p_e = a_e + rng.uniform(0.2, 0.8) * (b_e - a_e)
        r_e = c_e + rng.uniform(1.15, 1.5) * (a_e - c_e)
        d1 = r_e - p_e
        d2 = c_e - b_e
        mat = np.stack([d1, -d2], axis=1)
        if abs(np.linalg.det(mat)) < 1e-3:
            continue
        _, s2 = np.linalg.solve(mat, b_e - p_e)
        q_e = b_e + s2 * d2
        side_len = np.linalg.norm(d2)
        if min(abs(s2), abs(s2 - 1.0)) * side_len < VERTEX_MARGIN:
            continue
        if abs(s2) > 3.5:
            continue
        if geom is Geometry.S2R:
            # Keep every base arc of the configuration principal.
            sigmas = [c[0] for c in (*coords, p_e, q_e, r_e)]
            if max(sigmas) - min(sigmas) > math.pi - 0.15:
                continue
        lifted = [chart.to_model(c[0], c[1]) for c in (p_e, q_e, r_e)]
        if not all(check_point(geom, p).valid for p in lifted):
            continue
        tri = classify_triangle(geom, *pts)
        if tri.kind is not TriangleKind.FIBRE:
            continue
        return MenelausConfig(tri, *lifted)
    raise ConvergenceError("no admissible fibre transversal found")


def _general_ceva(geom: Geometry, rng: np.random.Generator) -> CevaConfig:
    for _ in range(MAX_TRIES):
        tri = random_general_triangle(geom, rng)
        us = [project_to_base(geom, v) for v in tri.vertices]
        c = rng.uniform(0.25, 1.0, size=3)
        tstar = _base_normalize(geom, c[0] * us[0] + c[1] * us[1]
                                + c[2] * us[2])
        try:
            pstar = base_line_intersect(geom, (us[0], us[1]), (us[2], tstar))
            qstar = base_line_intersect(geom, (us[1], us[2]), (us[0], tstar))
            rstar = base_line_intersect(geom, (us[2], us[0]), (us[1], tstar))
        except GeometryError:
            continue
        if pstar is None or qstar is None or rstar is None:
            continue
        feet = ((us[0], pstar, us[1]), (us[1], qstar, us[2]),
                (us[2], rstar, us[0]))
        if not all(base_point_between(geom, a, x, b) for a, x, b in feet):
            continue
        if min(base_distance(geom, x, e)
               for a, x, b in feet for e in (a, b)) < VERTEX_MARGIN:
            continue
        try:
            p = lift_to_side(geom, tri.a0, tri.a1, pstar)
            q = lift_to_side(geom, tri.a1, tri.a2, qstar)
            r = lift_to_side(geom, tri.a2, tri.a0, rstar)
        except GeometryError:
            continue
        h = np.mean([math.log(geometry_norm(geom, v)) for v in tri.vertices])
        t = math.exp(h) * tstar
        return CevaConfig(tri, t, p, q, r)
    raise ConvergenceError("no admissible cevian configuration found")


def _general_menelaus(geom: Geometry,
                      rng: np.random.Generator) -> MenelausConfig:
    for _ in range(MAX_TRIES):
        tri = random_general_triangle(geom, rng)
        us = [project_to_base(geom, v) for v in tri.vertices]
        s1 = rng.uniform(0.2, 0.8)
        theta20 = base_distance(geom, us[2], us[0])
        s2_hi = 1.5
        if geom is Geometry.S2R:
            s2_hi = min(1.5, (math.pi - 0.12) / theta20)
            if s2_hi <= 1.15:
                continue
        s2 = rng.uniform(1.15, s2_hi)
        pstar = _base_interp(geom, us[0], us[1], s1)
        rstar = _base_interp(geom, us[2], us[0], s2)
        try:
            qstar = base_line_intersect(geom, (pstar, rstar), (us[1], us[2]))
        except GeometryError:
            continue
        if qstar is None:
            continue
        if min(base_distance(geom, qstar, us[1]),
               base_distance(geom, qstar, us[2])) < VERTEX_MARGIN:
            continue
        if geom is Geometry.S2R:
            arcs = [base_distance(geom, qstar, us[1]),
                    base_distance(geom, qstar, us[2]),
                    base_distance(geom, rstar, us[0])]
            if max(arcs) > math.pi - 0.12:
                continue
        try:
            p = lift_to_side(geom, tri.a0, tri.a1, pstar)
            q = lift_to_side(geom, tri.a1, tri.a2, qstar)
            r = lift_to_side(geom, tri.a2, tri.a0, rstar)
        except GeometryError:
            continue
        if geom is Geometry.S2R and not all(
                _side_arcs_within(geom, a, b, x, math.pi - 0.1)
                for a, b, x in ((tri.a0, tri.a1, p), (tri.a1, tri.a2, q),
                                (tri.a2, tri.a0, r))):
            continue
        return MenelausConfig(tri, p, q, r)
    raise ConvergenceError("no admissible transversal configuration found")


def _as_kind(kind) -> TriangleKind:
    if isinstance(kind, TriangleKind):
        return kind
    return TriangleKind[str(kind).upper()]


def random_ceva_config(geom: Geometry, kind, seed) -> CevaConfig:
    """Deterministic random cevian configuration for one seed."""
    rng = _rng(seed)
    if _as_kind(kind) is TriangleKind.FIBRE:
        return _fibre_ceva(geom, rng)
    return _general_ceva(geom, rng)


def random_menelaus_config(geom: Geometry, kind, seed) -> MenelausConfig:
    """Deterministic random transversal configuration for one seed."""
    rng = _rng(seed)
    if _as_kind(kind) is TriangleKind.FIBRE:
        return _fibre_menelaus(geom, rng)
    return _general_menelaus(geom, rng)


def _points_payload(names, points) -> dict:
    return {n: [float(c) for c in np.asarray(p)] for n, p in
            zip(names, points)}


def ceva_config_to_dict(config: CevaConfig) -> dict:
    tri = config.triangle
    return {
        "geometry": tri.geometry.tag,
        "kind": tri.kind.name.lower(),
        "vertices": [[float(c) for c in v] for v in tri.vertices],
        "cevian_point": [float(c) for c in config.t],
        "feet": _points_payload("pqr", (config.p, config.q, config.r)),
    }


def ceva_config_from_dict(data: dict) -> CevaConfig:
    geom = Geometry.from_tag(data["geometry"])
    tri = classify_triangle(geom, *[np.asarray(v, dtype=float)
                                    for v in data["vertices"]])
    feet = data["feet"]
    return CevaConfig(tri, np.asarray(data["cevian_point"], dtype=float),
                      *[np.asarray(feet[k], dtype=float) for k in "pqr"])


def menelaus_config_to_dict(config: MenelausConfig) -> dict:
    tri = config.triangle
    return {
        "geometry": tri.geometry.tag,
        "kind": tri.kind.name.lower(),
        "vertices": [[float(c) for c in v] for v in tri.vertices],
        "points": _points_payload("pqr", (config.p, config.q, config.r)),
    }


def menelaus_config_from_dict(data: dict) -> MenelausConfig:
    geom = Geometry.from_tag(data["geometry"])
    tri = classify_triangle(geom, *[np.asarray(v, dtype=float)
                                    for v in data["vertices"]])
    pts = data["points"]
    return MenelausConfig(tri, *[np.asarray(pts[k], dtype=float)
                                 for k in "pqr"])
