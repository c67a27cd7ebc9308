"""Surfaces spanned by geodesic triangles.

A triangle a0 a1 a2 induces, for each ratio pair (lam1, lam2), the
intersection curve of the Apollonius surfaces AS(a0, a1; lam1) and
AS(a2, a0; lam2); the surface point P(lam1, lam2) is the point of that
curve closest to a0.  Sweeping the ratios yields a surface patch with
the three vertices on its closure.

Triangles whose vertex vectors span a flat plane through the projection
center behave like flat triangles (the surface degenerates to that
plane); others are "general" and give genuinely curved patches.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

import numpy as np

from .apollonius import ApolloniusSpec, trace_intersection_curve
from .errors import GeometryError
from .geodesics import distance, geodesic_between, geodesic_point, point_on_geodesic
from .model import Geometry, check_point, translate_to_origin, validate_point
from .numerics import golden_section, newton_solve, project_to_zero

__all__ = [
    "TriangleKind",
    "GeodesicTriangle",
    "SurfacePointResult",
    "TriangleSurfaceSample",
    "classify_triangle",
    "surface_point",
    "ratio_grid",
    "sample_triangle_surface",
    "project_curve_to_surface",
    "segment_min_distance",
    "fitted_plane_normal",
]

FLAT_TOL = 1e-9
TIE_TOL = 1e-9


class TriangleKind(Enum):
    FIBRE = "FIBRE"
    GENERAL = "GENERAL"


@dataclass(frozen=True)
class GeodesicTriangle:
    geometry: Geometry
    a0: np.ndarray
    a1: np.ndarray
    a2: np.ndarray
    kind: TriangleKind

    @property
    def vertices(self) -> list:
        return [self.a0, self.a1, self.a2]

    def side_lengths(self) -> tuple[float, float, float]:
        """(d01, d12, d20)."""
        return (distance(self.geometry, self.a0, self.a1),
                distance(self.geometry, self.a1, self.a2),
                distance(self.geometry, self.a2, self.a0))


def classify_triangle(geom: Geometry, a0, a1, a2,
                      tol: float = FLAT_TOL) -> GeodesicTriangle:
    """Build a GeodesicTriangle, deciding fibre/general by the span of
    the Cartesian vertex vectors.
    """
    a0 = validate_point(geom, a0)
    a1 = validate_point(geom, a1)
    a2 = validate_point(geom, a2)
    d01 = distance(geom, a0, a1)
    d12 = distance(geom, a1, a2)
    d20 = distance(geom, a2, a0)
    if min(d01, d12, d20) <= tol:
        raise GeometryError("triangle vertices must be pairwise distinct")
    defect = min(abs(d01 + d12 - d20), abs(d12 + d20 - d01),
                 abs(d20 + d01 - d12))
    if defect <= tol:
        raise GeometryError("triangle vertices lie on one geodesic")
    scale = max(1.0, float(np.max(np.abs([a0, a1, a2]))))
    det = float(np.linalg.det(np.stack([a0, a1, a2])))
    kind = TriangleKind.FIBRE if abs(det) <= tol * scale ** 3 else TriangleKind.GENERAL
    return GeodesicTriangle(geom, a0, a1, a2, kind)


@dataclass(frozen=True)
class SurfacePointResult:
    point: Optional[np.ndarray]
    lambda1: float
    lambda2: float
    status: str  # ok | endpoint_a0 | endpoint_a2 | empty | not_found
    dist_to_a0: float = math.nan
    defect1: float = math.nan
    defect2: float = math.nan
    ties: tuple = field(default_factory=tuple)
    detail: str = ""

    @property
    def found(self) -> bool:
        return self.point is not None


def _ratio_shell(lam: float, side: float) -> tuple[float, float]:
    """Distance-to-shared-vertex bounds for one Apollonius surface.

    Every q with d(v, q) = lam * d(q, w) satisfies
    lam*d(v,w)/(1+lam) <= d(v,q) <= lam*d(v,w)/|1-lam| (upper bound
    infinite at lam = 1); same with the roles swapped for the surface
    seen from the other focus.
    """
    lo = lam * side / (1.0 + lam)
    hi = math.inf if abs(lam - 1.0) <= 1e-12 else lam * side / abs(lam - 1.0)
    return lo, hi


def _shells(tri: GeodesicTriangle, lam1: float, lam2: float):
    """Three necessary intervals for r = d(a0, q) on C(lam1, lam2).

    Triangle inequalities in (q, a0, a1), (q, a0, a2) and (q, a1, a2),
    with d(q, a1) = r/lam1 and d(q, a2) = lam2 r substituted.
    """
    d01, d12, d20 = tri.side_lengths()
    lo1, hi1 = _ratio_shell(lam1, d01)
    lo2 = d20 / (1.0 + lam2)
    hi2 = math.inf if abs(lam2 - 1.0) <= 1e-12 else d20 / abs(lam2 - 1.0)
    coef = abs(1.0 / lam1 - lam2)
    lo3 = d12 / (1.0 / lam1 + lam2)
    hi3 = math.inf if coef <= 1e-12 else d12 / coef
    return (lo1, hi1), (lo2, hi2), (lo3, hi3)


def _shell_interval(tri: GeodesicTriangle, lam1: float, lam2: float):
    shells = _shells(tri, lam1, lam2)
    lo = max(s[0] for s in shells)
    hi = min(s[1] for s in shells)
    return lo, hi


def _provably_empty(tri: GeodesicTriangle, lam1: float, lam2: float) -> bool:
    lo, hi = _shell_interval(tri, lam1, lam2)
    return lo > hi + 1e-12 * (1.0 + lo)


def _curve_seeds(tri: GeodesicTriangle, lam1: float, lam2: float) -> list:
    geom = tri.geometry
    d01, _, d20 = tri.side_lengths()
    seeds = [
        point_on_geodesic(geom, tri.a0, tri.a1, lam1 * d01 / (1.0 + lam1)),
        point_on_geodesic(geom, tri.a2, tri.a0, lam2 * d20 / (1.0 + lam2)),
    ]
    seeds.append(0.5 * (seeds[0] + seeds[1]))
    return [s for s in seeds if check_point(geom, s).valid]


def surface_point(tri: GeodesicTriangle, lambda1: float, lambda2: float, *,
                  step_scale: float = 0.03,
                  max_steps: int = 8000) -> SurfacePointResult:
    """The point of C(lam1, lam2) closest to a0.

    The full curve component through the seed is traced, the distance to
    a0 is minimized along the polyline with golden-section refinement
    between neighbors (with re-projection onto the curve), and the
    result is polished by a Newton solve on the two curve constraints
    plus first-order stationarity.  Candidates tying within 1e-9 are all
    reported.
    """
    if lambda1 < 0.0 or lambda2 < 0.0:
        raise GeometryError("ratios must be nonnegative")
    if lambda1 == 0.0 and lambda2 == 0.0:
        raise GeometryError("ratios must not both vanish")
    geom = tri.geometry
    if lambda1 == 0.0:
        return SurfacePointResult(tri.a0.copy(), lambda1, lambda2,
                                  "endpoint_a0", 0.0, 0.0, math.nan)
    if lambda2 == 0.0:
        return SurfacePointResult(tri.a2.copy(), lambda1, lambda2,
                                  "endpoint_a2",
                                  distance(geom, tri.a0, tri.a2), math.nan, 0.0)
    if _provably_empty(tri, lambda1, lambda2):
        return SurfacePointResult(None, lambda1, lambda2, "empty")

    spec1 = ApolloniusSpec(geom, tri.a0, tri.a1, lambda1)
    spec2 = ApolloniusSpec(geom, tri.a2, tri.a0, lambda2)

    def cons(x):
        if not check_point(geom, x).valid:
            return np.array([np.nan, np.nan])
        return np.array([
            distance(geom, tri.a0, x) - lambda1 * distance(geom, x, tri.a1),
            distance(geom, tri.a2, x) - lambda2 * distance(geom, x, tri.a0),
        ])

    def inside(x):
        return check_point(geom, x).valid

    on_curve_pts = []
    for seed in _curve_seeds(tri, lambda1, lambda2):
        x0, ok = project_to_zero(cons, seed, tol=1e-10, inside=inside)
        if ok:
            on_curve_pts.append(x0)
    if not on_curve_pts:
        got = _shell_scan(tri, cons, inside, lambda1, lambda2)
        if got is not None:
            on_curve_pts.append(got)
    if not on_curve_pts:
        verdict, payload = _surface_sign_probe(tri, lambda1, lambda2, cons,
                                               inside)
        if verdict == "seed":
            on_curve_pts.append(payload)
        elif verdict == "empty":
            return SurfacePointResult(
                None, lambda1, lambda2, "empty",
                detail="constraint is sign-definite on the other surface")
        else:
            return SurfacePointResult(None, lambda1, lambda2, "not_found")

    sides = tri.side_lengths()
    step = step_scale * max(1.0, max(sides))
    traces = []
    for oc in on_curve_pts:
        near_known = any(
            float(np.min(np.linalg.norm(tr.points - oc, axis=1))) < 2.0 * step
            for tr in traces)
        if near_known:
            continue
        tr = trace_intersection_curve(spec1, spec2, oc, step,
                                      max_steps=max_steps)
        if tr.points.shape[0]:
            traces.append(tr)
    if not traces:
        return SurfacePointResult(None, lambda1, lambda2, "not_found")

    candidates = []
    for tr in traces:
        pts = tr.points
        dvals = np.array([distance(geom, tri.a0, p) for p in pts])
        order = np.argsort(dvals)
        best = _refine_minimum(tri, cons, inside, pts, dvals, int(order[0]))
        local = [best]
        # Other local minima of the sampled distance that might tie.
        for idx in order[1:]:
            i = int(idx)
            if dvals[i] > best[1] + 1e-6:
                break
            prev_i = max(0, i - 1)
            next_i = min(pts.shape[0] - 1, i + 1)
            if dvals[i] <= dvals[prev_i] and dvals[i] <= dvals[next_i]:
                cand = _refine_minimum(tri, cons, inside, pts, dvals, i)
                if all(np.linalg.norm(cand[0] - c[0]) > 1e-6 for c in local):
                    local.append(cand)
        candidates.extend(local)
    candidates.sort(key=lambda c: c[1])
    point, dist = candidates[0]
    ties = tuple(c[0] for c in candidates[1:]
                 if c[1] - dist <= TIE_TOL
                 and np.linalg.norm(c[0] - point) > 1e-6)
    g = cons(point)
    detail = "" if len(traces) == 1 else f"{len(traces)} curve components"
    return SurfacePointResult(point, lambda1, lambda2, "ok", dist,
                              abs(float(g[0])), abs(float(g[1])), ties,
                              detail)


def _shell_scan(tri: GeodesicTriangle, cons, inside, lam1: float,
                lam2: float, directions: int = 6):
    """Directional scan for a curve point when the side-division seeds
    fail to project.

    Candidate starts live on metric spheres around a0 whose radii cover
    the shell interval; the best few by constraint norm are projected.
    """
    geom = tri.geometry
    lo, hi = _shell_interval(tri, lam1, lam2)
    sides = tri.side_lengths()
    hi = min(hi, 2.5 * max(sides) + 3.0)
    if lo > hi:
        return None
    radii = np.linspace(lo, hi, 5) if hi > lo else [lo]
    iso = translate_to_origin(geom, tri.a0)
    ranked = []
    for r in radii:
        for u in np.linspace(-math.pi, math.pi, 2 * directions, endpoint=False):
            for v in np.linspace(-math.pi / 2, math.pi / 2, directions):
                x = iso.apply_inverse(geodesic_point(geom, u, v, float(r)))
                g = cons(x)
                if np.all(np.isfinite(g)):
                    ranked.append((float(np.max(np.abs(g))), x))
    ranked.sort(key=lambda t: t[0])
    for _, start in ranked[:12]:
        x0, ok = project_to_zero(cons, start, tol=1e-10, inside=inside)
        if ok:
            return x0
    return None


def _surface_sign_probe(tri: GeodesicTriangle, lam1: float, lam2: float,
                        cons, inside, directions: int = 10):
    """Decide whether C(lam1, lam2) exists after seeding failed.

    The Apollonius surface whose ratio is farther from 1 encloses one of
    its foci, so geodesic rays from that focus sweep it completely: each
    ray crosses where the surface's signed defect changes sign.  The
    other constraint is then evaluated at the crossings; mixed signs
    yield a seed on the intersection curve, while a definite sign means
    the two surfaces do not meet (up to the angular sampling density).
    """
    geom = tri.geometry
    candidates = []
    if lam1 > 0 and abs(math.log(lam1)) > 1e-9:
        candidates.append((abs(math.log(lam1)), 0, (tri.a0, tri.a1), lam1))
    if lam2 > 0 and abs(math.log(lam2)) > 1e-9:
        candidates.append((abs(math.log(lam2)), 1, (tri.a2, tri.a0), lam2))
    if not candidates:
        return "none", None
    candidates.sort(key=lambda c: -c[0])
    _, idx, foci, lam = candidates[0]
    v, w = foci
    anchor = v if lam < 1.0 else w
    dvw = distance(geom, v, w)
    if lam < 1.0:
        tmax = 1.1 * lam * dvw / (1.0 - lam) + 1e-6
    else:
        tmax = 1.1 * dvw / (lam - 1.0) + 1e-6
    iso = translate_to_origin(geom, anchor)

    def defect(x):
        return distance(geom, v, x) - lam * distance(geom, x, w)

    def other(x):
        g = cons(x)
        return float(g[1 - idx])

    signs = set()
    best_seed, best_val = None, math.inf
    us = np.linspace(-math.pi, math.pi, 2 * directions, endpoint=False)
    vs = np.linspace(-math.pi / 2, math.pi / 2, directions)
    ts = np.linspace(1e-6, tmax, 14)
    for uu in us:
        for vv in vs:
            def ray(t):
                return iso.apply_inverse(geodesic_point(geom, uu, vv, t))

            prev_t, prev_f = None, None
            for t in ts:
                x = ray(t)
                if not check_point(geom, x).valid:
                    prev_t, prev_f = None, None
                    continue
                f = defect(x)
                if prev_f is not None and (f == 0.0 or prev_f * f < 0.0):
                    a, b = prev_t, t
                    fa = prev_f
                    for _ in range(50):
                        m = 0.5 * (a + b)
                        fm = defect(ray(m))
                        if fa * fm <= 0.0:
                            b = m
                        else:
                            a, fa = m, fm
                    x_cross = ray(0.5 * (a + b))
                    h = other(x_cross)
                    if math.isfinite(h):
                        signs.add(1 if h > 0 else -1 if h < 0 else 0)
                        if abs(h) < best_val:
                            best_seed, best_val = x_cross, abs(h)
                    break
                prev_t, prev_f = t, f
            if len(signs) > 1 or 0 in signs:
                break
        if len(signs) > 1 or 0 in signs:
            break
    if len(signs) > 1 or 0 in signs:
        x0, ok = project_to_zero(cons, best_seed, tol=1e-10, inside=inside)
        if ok:
            return "seed", x0
        return "none", None
    if signs:
        return "empty", None
    return "none", None


def _refine_minimum(tri: GeodesicTriangle, cons, inside, pts, dvals, i):
    """Golden-section refinement of d(a0, .) between the polyline
    neighbors of sample i, re-projected onto the curve, then polished by
    a stationarity Newton solve."""
    geom = tri.geometry
    lo = max(0, i - 1)
    hi = min(pts.shape[0] - 1, i + 1)

    def at(s):
        # piecewise-linear chord through [lo, i, hi] by arc fraction
        if s <= 0.5:
            seg = pts[lo] + (pts[i] - pts[lo]) * (2.0 * s)
        else:
            seg = pts[i] + (pts[hi] - pts[i]) * (2.0 * s - 1.0)
        q, ok = project_to_zero(cons, seg, tol=1e-10, max_iter=12,
                                inside=inside)
        if not ok:
            return None, math.inf
        return q, distance(geom, tri.a0, q)

    best_q, best_d = pts[i], float(dvals[i])
    s_opt, _ = golden_section(lambda s: at(s)[1], 0.0, 1.0, tol=1e-6)
    q, d = at(s_opt)
    if q is not None and d < best_d:
        best_q, best_d = q, d

    def kkt(x):
        g = cons(x)
        if not np.all(np.isfinite(g)):
            return np.full(3, np.nan)
        h = 1e-6
        grads = np.zeros((3, 3))
        for j in range(3):
            e = np.zeros(3)
            e[j] = h * (1.0 + abs(x[j]))
            gp = cons(x + e)
            gm = cons(x - e)
            dp = distance(geom, tri.a0, x + e)
            dm = distance(geom, tri.a0, x - e)
            if not (np.all(np.isfinite(gp)) and np.all(np.isfinite(gm))):
                return np.full(3, np.nan)
            grads[0, j] = (dp - dm) / (2.0 * e[j])
            grads[1, j] = (gp[0] - gm[0]) / (2.0 * e[j])
            grads[2, j] = (gp[1] - gm[1]) / (2.0 * e[j])
        tangent = np.cross(grads[1], grads[2])
        return np.array([g[0], g[1], float(grads[0] @ tangent)])

    x, report = newton_solve(kkt, best_q, tol=1e-12, max_iter=40,
                             inside=inside)
    if report.converged:
        d = distance(geom, tri.a0, x)
        if d <= best_d + 1e-9 and np.linalg.norm(x - best_q) < 10.0 * np.linalg.norm(pts[hi] - pts[lo]) + 1e-3:
            best_q, best_d = x, d
    return best_q, best_d


def ratio_grid(n: int) -> np.ndarray:
    """n ratio values tan(s pi/2) for s = i/n, reaching from 0 toward
    infinity; the far vertex is only attained in the limit, so the grid
    stops one step short of it."""
    s = np.arange(n) / float(n)
    return np.tan(s * math.pi / 2.0)


@dataclass(frozen=True)
class TriangleSurfaceSample:
    triangle: GeodesicTriangle
    lambda1: np.ndarray
    lambda2: np.ndarray
    points: np.ndarray  # (n1, n2, 3), NaN rows where no point exists
    dist_to_a0: np.ndarray
    defects: np.ndarray  # (n1, n2, 2)
    statuses: np.ndarray  # (n1, n2) of str

    def result_at(self, i: int, j: int) -> SurfacePointResult:
        return SurfacePointResult(
            None if self.statuses[i, j] in ("empty", "not_found")
            else self.points[i, j],
            float(self.lambda1[i]), float(self.lambda2[j]),
            str(self.statuses[i, j]), float(self.dist_to_a0[i, j]),
            float(self.defects[i, j, 0]), float(self.defects[i, j, 1]))


def sample_triangle_surface(tri: GeodesicTriangle, n: int = 8,
                            **kwargs) -> TriangleSurfaceSample:
    """Evaluate surface_point over an n-by-n tan-spaced ratio grid.

    Grid row lam1 = 0 is the constant vertex a0 and column lam2 = 0 the
    constant vertex a2; ratio pairs whose Apollonius shells provably
    miss each other are reported "empty" per cell.
    """
    lam1 = ratio_grid(n)
    lam2 = ratio_grid(n)
    points = np.full((n, n, 3), np.nan)
    dist = np.full((n, n), np.nan)
    defects = np.full((n, n, 2), np.nan)
    statuses = np.empty((n, n), dtype=object)
    for i, l1 in enumerate(lam1):
        for j, l2 in enumerate(lam2):
            if l1 == 0.0 and l2 == 0.0:
                # Corner convention: the lam1 = 0 row is a0.
                res = SurfacePointResult(tri.a0.copy(), 0.0, 0.0,
                                         "endpoint_a0", 0.0, 0.0, math.nan)
            else:
                res = surface_point(tri, float(l1), float(l2), **kwargs)
            statuses[i, j] = res.status
            if res.point is not None:
                points[i, j] = res.point
                dist[i, j] = res.dist_to_a0
                defects[i, j] = (res.defect1, res.defect2)
    return TriangleSurfaceSample(tri, lam1, lam2, points, dist, defects,
                                 statuses)


def fitted_plane_normal(points: np.ndarray) -> np.ndarray:
    """Unit normal of the best flat plane through the Cartesian origin
    for the given points (least squares via SVD)."""
    pts = np.asarray(points, dtype=float)
    pts = pts[np.all(np.isfinite(pts), axis=1)]
    if pts.shape[0] < 3:
        raise ValueError("need at least three finite points")
    _, _, vt = np.linalg.svd(pts, full_matrices=False)
    return vt[-1]


def project_curve_to_surface(tri: GeodesicTriangle, p1, p2,
                             sample: Optional[TriangleSurfaceSample] = None,
                             samples: int = 17, **kwargs):
    """Image of the geodesic p1 -> p2 on the triangle surface.

    Fibre-kind triangles: the geodesic already lies in the surface
    plane, so its samples are returned directly.  General kind: each
    geodesic sample is centrally projected from E0 = (1,0,0,0) onto the
    sampled surface (ray-patch intersection over the bilinear grid
    cells, refined by re-solving surface_point at the hit ratios).

    Returns (points, statuses): per-sample surface points (NaN row when
    the ray misses) and status strings.
    """
    geom = tri.geometry
    p1 = validate_point(geom, p1)
    p2 = validate_point(geom, p2)
    if np.linalg.norm(p1 - p2) <= 1e-15:
        return p1[None, :].copy(), np.array(["ok"], dtype=object)
    params = geodesic_between(geom, p1, p2)
    iso_back = translate_to_origin(geom, p1)
    taus = np.linspace(0.0, params.tau, samples)
    gamma = np.array([iso_back.apply_inverse(
        geodesic_point(geom, params.u, params.v, t)) for t in taus])
    if tri.kind is TriangleKind.FIBRE:
        return gamma, np.array(["ok"] * samples, dtype=object)
    if sample is None:
        sample = sample_triangle_surface(tri, **kwargs)
    out = np.full((samples, 3), np.nan)
    statuses = np.empty(samples, dtype=object)
    for k, g in enumerate(gamma):
        hit = _ray_patch_hit(sample, g)
        if hit is None:
            statuses[k] = "miss"
            continue
        l1, l2 = hit
        res = surface_point(tri, l1, l2, **kwargs)
        if res.point is None:
            statuses[k] = "miss"
            continue
        out[k] = res.point
        ray = g / np.linalg.norm(g)
        along = float(res.point @ ray)
        off = float(np.linalg.norm(res.point - along * ray))
        statuses[k] = "ok" if along > 0 and off <= 0.05 * (1.0 + along) else "offray"
    return out, statuses


def _ray_patch_hit(sample: TriangleSurfaceSample, g: np.ndarray):
    """Scan the bilinear patches of the sampled grid for an intersection
    with the ray t*g, t > 0; returns interpolated (lam1, lam2) or None."""
    pts = sample.points
    n1, n2 = pts.shape[:2]
    ray = g / np.linalg.norm(g)
    best = None
    for i in range(n1 - 1):
        for j in range(n2 - 1):
            corners = pts[i:i + 2, j:j + 2]
            if not np.all(np.isfinite(corners)):
                continue
            got = _solve_bilinear(corners, ray)
            if got is None:
                continue
            u, v, t, off = got
            if best is None or off < best[3]:
                best = (i + u, j + v, t, off)
    if best is None:
        return None
    gi, gj = best[0], best[1]

    def interp(grid, x):
        i0 = min(int(math.floor(x)), grid.size - 2)
        f = x - i0
        # tan grid: interpolate in the underlying s parameter
        n = grid.size
        s = (i0 + f) / float(n)
        return math.tan(s * math.pi / 2.0)

    return interp(sample.lambda1, gi), interp(sample.lambda2, gj)


def _solve_bilinear(corners: np.ndarray, ray: np.ndarray):
    """Newton for the intersection of a bilinear patch with a ray
    through the origin; returns (u, v, t, off-ray error) or None."""
    p00, p01 = corners[0, 0], corners[0, 1]
    p10, p11 = corners[1, 0], corners[1, 1]

    def patch(u, v):
        return ((1 - u) * (1 - v) * p00 + (1 - u) * v * p01
                + u * (1 - v) * p10 + u * v * p11)

    uv = np.array([0.5, 0.5])
    for _ in range(25):
        s = patch(uv[0], uv[1])
        t = float(s @ ray)
        r = s - t * ray
        # Jacobian of the off-ray residual w.r.t. (u, v)
        du = (-(1 - uv[1]) * p00 - uv[1] * p01 + (1 - uv[1]) * p10 + uv[1] * p11)
        dv = (-(1 - uv[0]) * p00 + (1 - uv[0]) * p01 - uv[0] * p10 + uv[0] * p11)
        du = du - float(du @ ray) * ray
        dv = dv - float(dv @ ray) * ray
        jtj = np.array([[du @ du, du @ dv], [du @ dv, dv @ dv]])
        rhs = -np.array([du @ r, dv @ r])
        try:
            delta = np.linalg.solve(jtj, rhs)
        except np.linalg.LinAlgError:
            return None
        uv = uv + delta
        if float(np.linalg.norm(delta)) < 1e-12:
            break
    u, v = float(uv[0]), float(uv[1])
    if not (-1e-9 <= u <= 1 + 1e-9 and -1e-9 <= v <= 1 + 1e-9):
        return None
    s = patch(min(max(u, 0.0), 1.0), min(max(v, 0.0), 1.0))
    t = float(s @ ray)
    if t <= 0:
        return None
    off = float(np.linalg.norm(s - t * ray))
    if off > 0.2 * (1.0 + abs(t)):
        return None
    return min(max(u, 0.0), 1.0), min(max(v, 0.0), 1.0), t, off


def segment_min_distance(geom: Geometry, seg1, seg2, n: int = 48) -> float:
    """Minimum geodesic distance between two geodesic segments.

    Coarse n-by-n parameter grid followed by alternating golden-section
    refinement in each parameter.
    """
    (a, b), (c, d) = seg1, seg2
    a = validate_point(geom, a)
    b = validate_point(geom, b)
    c = validate_point(geom, c)
    d = validate_point(geom, d)
    pa = geodesic_between(geom, a, b)
    pc = geodesic_between(geom, c, d)
    iso_a = translate_to_origin(geom, a)
    iso_c = translate_to_origin(geom, c)

    def s1(t):
        return iso_a.apply_inverse(geodesic_point(geom, pa.u, pa.v, t * pa.tau))

    def s2(t):
        return iso_c.apply_inverse(geodesic_point(geom, pc.u, pc.v, t * pc.tau))

    ts = np.linspace(0.0, 1.0, n)
    pts1 = np.array([s1(t) for t in ts])
    pts2 = np.array([s2(t) for t in ts])
    dmat = np.array([[distance(geom, p, q) for q in pts2] for p in pts1])
    i, j = np.unravel_index(int(np.argmin(dmat)), dmat.shape)
    t1, t2 = float(ts[i]), float(ts[j])
    span = 1.5 / (n - 1)
    for _ in range(4):
        t1, _ = golden_section(
            lambda t: distance(geom, s1(t), s2(t2)),
            max(0.0, t1 - span), min(1.0, t1 + span), tol=1e-12)
        t2, _ = golden_section(
            lambda t: distance(geom, s1(t1), s2(t)),
            max(0.0, t2 - span), min(1.0, t2 + span), tol=1e-12)
        span *= 0.35
    return distance(geom, s1(t1), s2(t2))
