"""Apollonius surfaces: the locus of points whose geodesic distances
from two foci have a fixed ratio lambda.

The implicit residual is evaluated in closed form from homogeneous
coordinates; lambda = 1 gives the equidistance (bisector) surface used
by the circumsphere solver.  Meshes come from marching cubes on a
rectilinear grid with invalid regions masked out; pairs of surfaces are
intersected by predictor-corrector continuation.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from typing import Optional

import numpy as np
from skimage.measure import marching_cubes

from .errors import GeometryError
from .geodesics import distance
from .model import Geometry, as_point, check_point, geometry_norm, validate_point
from .numerics import CurveTrace, trace_implicit_curve

__all__ = [
    "ApolloniusSpec",
    "SurfaceMesh",
    "apollonius_spec",
    "apollonius_residual",
    "ratio_defect",
    "residual_grid",
    "extract_isosurface",
    "trace_intersection_curve",
]

FOCI_TOL = 1e-9


@dataclass(frozen=True)
class ApolloniusSpec:
    """Two foci and a ratio; the surface is {q : d(p1,q) = lam * d(q,p2)}."""

    geometry: Geometry
    p1: np.ndarray
    p2: np.ndarray
    lam: float

    def __post_init__(self):
        object.__setattr__(self, "p1", as_point(self.p1))
        object.__setattr__(self, "p2", as_point(self.p2))
        validate_point(self.geometry, self.p1)
        validate_point(self.geometry, self.p2)
        if not (self.lam >= 0.0):
            raise GeometryError(f"ratio must be nonnegative, got {self.lam}")
        if distance(self.geometry, self.p1, self.p2) <= FOCI_TOL:
            raise GeometryError("foci coincide")

    @property
    def reciprocal(self) -> "ApolloniusSpec":
        """Same surface described from the other focus (ratio 1/lam)."""
        if self.lam == 0.0:
            raise GeometryError("ratio 0 has no finite reciprocal spec")
        return ApolloniusSpec(self.geometry, self.p2, self.p1, 1.0 / self.lam)


def apollonius_spec(geom: Geometry, p1, p2, lam: float) -> ApolloniusSpec:
    """Build a spec, normalizing an infinite ratio to its reciprocal form."""
    if math.isinf(lam):
        return ApolloniusSpec(geom, p2, p1, 0.0)
    return ApolloniusSpec(geom, p1, p2, lam)


@dataclass(frozen=True)
class SurfaceMesh:
    vertices: np.ndarray
    faces: np.ndarray
    residuals: np.ndarray
    defects: np.ndarray
    tolerance: float
    message: str = ""

    @property
    def empty(self) -> bool:
        return self.vertices.shape[0] == 0


def _empty_mesh(tolerance: float, message: str) -> SurfaceMesh:
    return SurfaceMesh(np.empty((0, 3)), np.empty((0, 3), dtype=int),
                       np.empty(0), np.empty(0), tolerance, message)


def apollonius_residual(spec: ApolloniusSpec, q) -> float:
    """Signed implicit value at q; zero iff d(p1,q) = lam * d(q,p2).

    Written in the doubled closed form
    4 w^2(I1) + log^2(N1^2/Nq^2) - lam^2 [4 w^2(I2) + log^2(Nq^2/N2^2)],
    which equals 4 (d^2(p1,q) - lam^2 d^2(q,p2)).
    """
    if not math.isfinite(spec.lam):
        raise GeometryError(
            "non-finite ratio; normalize via the reciprocal spec first")
    geom = spec.geometry
    q = validate_point(geom, q)
    n1 = geometry_norm(geom, spec.p1)
    n2 = geometry_norm(geom, spec.p2)
    nq = geometry_norm(geom, q)
    s = geom.sign
    i1 = (spec.p1[0] * q[0] + s * (spec.p1[1] * q[1] + spec.p1[2] * q[2])) / (n1 * nq)
    i2 = (q[0] * spec.p2[0] + s * (q[1] * spec.p2[1] + q[2] * spec.p2[2])) / (nq * n2)
    w1 = geom.omega(i1)
    w2 = geom.omega(i2)
    left = 4.0 * w1 * w1 + math.log(n1 * n1 / (nq * nq)) ** 2
    right = 4.0 * w2 * w2 + math.log(nq * nq / (n2 * n2)) ** 2
    return left - spec.lam ** 2 * right


def ratio_defect(spec: ApolloniusSpec, q) -> float:
    """|d(p1,q) - lam * d(q,p2)|, the quantity meshes are graded on."""
    return abs(distance(spec.geometry, spec.p1, q)
               - spec.lam * distance(spec.geometry, q, spec.p2))


def _grid_axes(box, resolution):
    box = np.asarray(box, dtype=float)
    if box.shape == (2, 3):
        box = box.T
    if box.shape != (3, 2):
        raise ValueError("box must be 3 pairs of (min, max)")
    res = np.broadcast_to(np.asarray(resolution, dtype=int), (3,))
    if np.any(res < 8):
        raise ValueError("resolution must be at least 8 cells per axis")
    axes = [np.linspace(box[i, 0], box[i, 1], res[i] + 1) for i in range(3)]
    return box, res, axes


def _slab_counts() -> int:
    try:
        n = int(os.environ.get("GEO_NUM_THREADS", "1"))
    except ValueError:
        n = 1
    return max(1, n)


def _residual_slab(spec: ApolloniusSpec, x, y, z):
    """Vectorized residual over broadcastable coordinate arrays.

    Invalid points get NaN; the accompanying mask is True where valid.
    """
    geom = spec.geometry
    s = geom.sign
    nsq = x * x + s * (y * y + z * z)
    valid = nsq > 0.0
    if geom is Geometry.H2R:
        valid &= x > 0.0
    nq = np.sqrt(np.where(valid, nsq, 1.0))
    n1 = geometry_norm(geom, spec.p1)
    n2 = geometry_norm(geom, spec.p2)
    i1 = (spec.p1[0] * x + s * (spec.p1[1] * y + spec.p1[2] * z)) / (n1 * nq)
    i2 = (spec.p2[0] * x + s * (spec.p2[1] * y + spec.p2[2] * z)) / (n2 * nq)
    if geom is Geometry.S2R:
        w1 = np.arccos(np.clip(i1, -1.0, 1.0))
        w2 = np.arccos(np.clip(i2, -1.0, 1.0))
    else:
        w1 = np.arccosh(np.maximum(i1, 1.0))
        w2 = np.arccosh(np.maximum(i2, 1.0))
    t1 = np.log(n1 / nq)
    t2 = np.log(n2 / nq)
    d1sq = w1 * w1 + t1 * t1
    d2sq = w2 * w2 + t2 * t2
    out = 4.0 * (d1sq - spec.lam ** 2 * d2sq)
    return np.where(valid, out, np.nan), valid


def residual_grid(spec: ApolloniusSpec, box, resolution):
    """Residual volume on a rectilinear grid, NaN outside the model.

    The volume is filled in z-slabs; GEO_NUM_THREADS > 1 evaluates the
    slabs on a thread pool, and the slab-indexed writes make the result
    identical either way.
    """
    box, res, axes = _grid_axes(box, resolution)
    xs, ys, zs = axes
    shape = (xs.size, ys.size, zs.size)
    volume = np.empty(shape)
    valid = np.empty(shape, dtype=bool)
    xcol = xs[:, None, None]
    yrow = ys[None, :, None]

    def fill(k0, k1):
        v, m = _residual_slab(spec, xcol, yrow, zs[None, None, k0:k1])
        volume[:, :, k0:k1] = v
        valid[:, :, k0:k1] = m

    nthreads = _slab_counts()
    bounds = np.linspace(0, shape[2], min(nthreads, shape[2]) + 1).astype(int)
    jobs = [(bounds[i], bounds[i + 1]) for i in range(len(bounds) - 1)
            if bounds[i] < bounds[i + 1]]
    if nthreads == 1 or len(jobs) <= 1:
        for k0, k1 in jobs:
            fill(k0, k1)
    else:
        from concurrent.futures import ThreadPoolExecutor
        with ThreadPoolExecutor(max_workers=nthreads) as pool:
            list(pool.map(lambda j: fill(*j), jobs))
    return volume, valid, axes


def extract_isosurface(spec: ApolloniusSpec, box, resolution=64) -> SurfaceMesh:
    """Marching-cubes mesh of the zero set restricted to valid points.

    Grid cells touching any invalid corner are discarded rather than
    extrapolated.  An empty mesh is an ordinary outcome (the zero set
    missed the box), reported through ``message``.
    """
    volume, valid, axes = residual_grid(spec, box, resolution)
    xs, ys, zs = axes
    diag = math.sqrt((xs[-1] - xs[0]) ** 2 + (ys[-1] - ys[0]) ** 2
                     + (zs[-1] - zs[0]) ** 2)
    tol = 10.0 * diag / float(np.min(np.broadcast_to(np.asarray(resolution), (3,))))
    if not np.any(valid):
        return _empty_mesh(tol, "no valid grid points in box")
    finite = volume[valid]
    if np.all(finite > 0.0) or np.all(finite < 0.0):
        return _empty_mesh(tol, "no sign change in box")
    spacing = (xs[1] - xs[0], ys[1] - ys[0], zs[1] - zs[0])
    try:
        verts, faces, _, _ = marching_cubes(
            volume, level=0.0, spacing=spacing,
            mask=valid, allow_degenerate=False)
    except (ValueError, RuntimeError) as exc:
        return _empty_mesh(tol, f"no surface extracted: {exc}")
    if verts.shape[0] == 0:
        return _empty_mesh(tol, "no surface extracted")
    verts = verts + np.array([xs[0], ys[0], zs[0]])
    # Cells with an invalid corner interpolate NaN on the edges touching
    # that corner; removing those vertices (and their faces) clips the
    # mesh at the domain boundary without extrapolating.
    ok = np.array([check_point(spec.geometry, v).valid for v in verts])
    message = ""
    if not np.all(ok):
        keep = np.flatnonzero(ok)
        remap = -np.ones(verts.shape[0], dtype=int)
        remap[keep] = np.arange(keep.size)
        faces = remap[faces]
        faces = faces[np.all(faces >= 0, axis=1)]
        verts = verts[keep]
        message = "surface clipped at the domain boundary"
    residuals = np.array([apollonius_residual(spec, v) for v in verts])
    defects = np.array([ratio_defect(spec, v) for v in verts])
    return SurfaceMesh(verts, np.asarray(faces, dtype=int), residuals,
                       defects, tol, message)


def _signed_defect(spec: ApolloniusSpec):
    geom = spec.geometry

    def fn(q):
        return (distance(geom, spec.p1, q)
                - spec.lam * distance(geom, q, spec.p2))

    return fn


def trace_intersection_curve(spec1: ApolloniusSpec, spec2: ApolloniusSpec,
                             seed, step: Optional[float] = None, *,
                             max_steps: int = 20_000,
                             corrector_tol: float = 1e-10) -> CurveTrace:
    """Trace the intersection curve of two Apollonius surfaces.

    The specs must chain through a shared focus (spec1 = (a0, a1),
    spec2 = (a2, a0)); a zero ratio collapses the curve to that spec's
    first focus.  Open curves are truncated where they leave the valid
    domain and flagged via ``complete=False``.
    """
    if spec1.geometry is not spec2.geometry:
        raise GeometryError("specs live in different geometries")
    if not np.allclose(spec1.p1, spec2.p2, atol=1e-12):
        raise GeometryError(
            "specs must share the chain vertex: spec1.p1 == spec2.p2")
    if spec1.lam == 0.0:
        return CurveTrace(spec1.p1[None, :].copy(), False, True,
                          "degenerate ratio: single point")
    if spec2.lam == 0.0:
        return CurveTrace(spec2.p1[None, :].copy(), False, True,
                          "degenerate ratio: single point")
    geom = spec1.geometry
    f1 = _signed_defect(spec1)
    f2 = _signed_defect(spec2)

    def residuals(x):
        if not check_point(geom, x).valid:
            return np.array([np.nan, np.nan])
        return np.array([f1(x), f2(x)])

    def inside(x):
        return check_point(geom, x).valid

    if step is None:
        spread = max(np.linalg.norm(spec1.p1 - spec1.p2),
                     np.linalg.norm(spec2.p1 - spec2.p2), 1.0)
        step = 0.01 * spread
    return trace_implicit_curve(residuals, as_point(seed), step,
                                max_steps=max_steps,
                                corrector_tol=corrector_tol, inside=inside)
