"""Constant-ratio surfaces: residuals, meshing, curve tracing, symmetry."""

import math

import numpy as np
import pytest

from prodgeo.apollonius import (
    apollonius_residual,
    apollonius_spec,
    extract_isosurface,
    ratio_defect,
    residual_grid,
    trace_intersection_curve,
)
from prodgeo.geodesics import distance, geodesic_midpoint, point_on_geodesic
from prodgeo.model import Geometry, check_point, point_reflection
from prodgeo.numerics import project_to_zero

S = Geometry.S2R
H = Geometry.H2R
E = math.e
BOX = [(-3.0, 3.0), (-3.0, 3.0), (-3.0, 3.0)]


def test_residual_zero_at_fibre_midpoint():
    spec = apollonius_spec(S, (1, 0, 0), (E**2, 0, 0), 1.0)
    assert apollonius_residual(spec, (E, 0, 0)) == pytest.approx(0.0, abs=1e-12)


def test_residual_zero_on_reflection_plane():
    spec = apollonius_spec(S, (1, 0, 0), (0, 1, 0), 1.0)
    q = (1 / math.sqrt(2), 1 / math.sqrt(2), 0)
    assert apollonius_residual(spec, q) == pytest.approx(0.0, abs=1e-12)


def test_residual_distance_identity(geom, rng):
    # the implicit function is the squared-distance difference scaled by 4
    for _ in range(60):
        if geom is S:
            p1, p2, q = (rng.normal(size=3) for _ in range(3))
            if min(np.linalg.norm(x) for x in (p1, p2, q)) < 0.1:
                continue
        else:
            def hpt():
                r = rng.uniform(0, 1.5)
                a = rng.uniform(-math.pi, math.pi)
                return rng.uniform(0.3, 2.5) * np.array(
                    [math.hypot(1, r), r * math.cos(a), r * math.sin(a)]
                )

            p1, p2, q = hpt(), hpt(), hpt()
        lam = rng.uniform(0.3, 2.5)
        spec = apollonius_spec(geom, p1, p2, lam)
        d1 = distance(geom, p1, q)
        d2 = distance(geom, q, p2)
        expect = 4 * (d1 * d1 - lam * lam * d2 * d2)
        assert apollonius_residual(spec, q) == pytest.approx(expect, abs=1e-9)


def test_ratio_defect_on_constructed_point():
    # walk the connecting geodesic until d(p1, q) = 2 d(q, p2)
    p1 = np.array([1.0, 0, 0])
    p2 = np.array([1.5, 1.0, -0.5])
    spec = apollonius_spec(H, p1, p2, 2.0)
    d = distance(H, p1, p2)
    lo, hi = 1e-6, d - 1e-6
    for _ in range(80):
        mid = 0.5 * (lo + hi)
        q = point_on_geodesic(H, p1, p2, mid)
        if distance(H, p1, q) - 2 * distance(H, q, p2) < 0:
            lo = mid
        else:
            hi = mid
    q = point_on_geodesic(H, p1, p2, 0.5 * (lo + hi))
    assert ratio_defect(spec, q) <= 1e-8
    assert abs(apollonius_residual(spec, q)) <= 1e-8


# ---------------------------------------------------------------------------
# isosurface extraction


def test_mesh_nonempty_and_within_defect_bound():
    spec = apollonius_spec(S, (1, 0, 0), (2, 1, 1), 1.0)
    mesh = extract_isosurface(spec, BOX, resolution=32)
    assert len(mesh.vertices) > 0
    assert len(mesh.faces) > 0
    diag = math.sqrt(3) * 6.0
    bound = 10 * diag / 32
    assert mesh.tolerance == pytest.approx(bound)
    defects = np.array(
        [abs(distance(S, spec.p1, v) - distance(S, v, spec.p2)) for v in mesh.vertices]
    )
    assert defects.max() <= bound
    np.testing.assert_allclose(mesh.defects, defects, atol=1e-12)


def test_mesh_empty_box_reported_not_raised():
    spec = apollonius_spec(S, (1, 0, 0), (2, 1, 1), 1.0)
    mesh = extract_isosurface(spec, [(2.5, 3.0), (2.5, 3.0), (2.5, 3.0)], resolution=8)
    assert len(mesh.vertices) == 0
    assert len(mesh.faces) == 0
    assert mesh.message  # says why it is empty


def test_h2r_mesh_stays_inside_cone():
    spec = apollonius_spec(H, (1, 0, 0), (1.5, 1, -0.5), 2.0)
    mesh = extract_isosurface(spec, [(0.05, 3.0), (-2.0, 2.0), (-2.0, 2.0)], resolution=32)
    assert len(mesh.vertices) > 0
    for v in mesh.vertices:
        assert check_point(H, v).valid
        assert v[0] ** 2 - v[1] ** 2 - v[2] ** 2 > 0


def test_equidistant_mesh_symmetry():
    # reflecting through the midpoint of the foci swaps them, so it must
    # carry the ratio-1 surface onto itself within the mesh tolerance
    p1, p2 = np.array([1.0, 0, 0]), np.array([2.0, 1.0, 1.0])
    spec = apollonius_spec(S, p1, p2, 1.0)
    mesh = extract_isosurface(spec, BOX, resolution=32)
    mid = geodesic_midpoint(S, p1, p2)
    reflect = point_reflection(S, mid)
    np.testing.assert_allclose(reflect(p1), p2, atol=1e-9)
    for v in mesh.vertices[::7]:
        image = reflect(v)
        d1 = distance(S, p1, image)
        d2 = distance(S, image, p2)
        assert abs(d1 - d2) <= mesh.tolerance


def test_resolution_validation():
    spec = apollonius_spec(S, (1, 0, 0), (2, 1, 1), 1.0)
    with pytest.raises(ValueError):
        extract_isosurface(spec, BOX, resolution=4)


def test_residual_grid_values_and_mask():
    spec = apollonius_spec(H, (1, 0, 0), (1.5, 1, -0.5), 2.0)
    vals, mask, axes = residual_grid(spec, [(-1.0, 2.0)] * 3, 10)
    assert vals.shape == (11, 11, 11)  # resolution counts cells, nodes are +1
    assert mask.dtype == bool
    assert np.isnan(vals[~mask]).all()
    assert np.isfinite(vals[mask]).all()
    i, j, k = 7, 5, 5
    assert mask[i, j, k]
    q = np.array([axes[0][i], axes[1][j], axes[2][k]])
    assert vals[i, j, k] == pytest.approx(apollonius_residual(spec, q), rel=1e-12)


# ---------------------------------------------------------------------------
# intersection-curve tracing


TRI = (np.array([1.0, 0, 0]), np.array([-1.0, -1, 1]), np.array([2.0, 1, 0]))


def _seed(spec1, spec2, start):
    f = lambda x: np.array([ratio_defect(spec1, x), ratio_defect(spec2, x)])
    x0, ok = project_to_zero(f, start)
    assert ok
    return x0


def test_trace_zero_ratio_collapses_to_focus():
    a0, a1, a2 = TRI
    s2 = apollonius_spec(S, a2, a0, 1.0)
    tr = trace_intersection_curve(apollonius_spec(S, a0, a1, 0.0), s2, a0)
    assert len(tr.points) == 1
    np.testing.assert_allclose(tr.points[0], a0, atol=1e-12)
    tr = trace_intersection_curve(apollonius_spec(S, a0, a1, 1.0),
                                  apollonius_spec(S, a2, a0, 0.0), a2)
    np.testing.assert_allclose(tr.points[0], a2, atol=1e-12)


def test_trace_equidistant_curve_closes():
    a0, a1, a2 = TRI
    s1 = apollonius_spec(S, a0, a1, 1.0)
    s2 = apollonius_spec(S, a2, a0, 1.0)
    x0 = _seed(s1, s2, (a0 + a1 + a2) / 3)
    tr = trace_intersection_curve(s1, s2, x0)
    assert tr.closed
    assert tr.complete
    assert len(tr.points) > 50
    for p in tr.points[:: max(1, len(tr.points) // 40)]:
        assert ratio_defect(s1, p) <= 1e-6
        assert ratio_defect(s2, p) <= 1e-6


def test_trace_ratio_composition():
    # chained specs share a0: on the curve, d(a2,Y)/d(Y,a1) is the product
    a0, a1, a2 = TRI
    lam1, lam2 = 1.25, 0.8
    s1 = apollonius_spec(S, a0, a1, lam1)
    s2 = apollonius_spec(S, a2, a0, lam2)
    x0 = _seed(s1, s2, (a0 + a1 + a2) / 3)
    tr = trace_intersection_curve(s1, s2, x0)
    assert len(tr.points) > 20
    for p in tr.points[:: max(1, len(tr.points) // 25)]:
        num = distance(S, a2, p)
        den = distance(S, p, a1)
        assert num / den == pytest.approx(lam1 * lam2, abs=1e-6)


def test_trace_empty_intersection_reported():
    # both ratios huge: one surface hugs a1, the other hugs a0, so the
    # intersection is empty and the seed cannot be projected anywhere
    a0, a1, a2 = TRI
    s1 = apollonius_spec(S, a0, a1, 50.0)
    s2 = apollonius_spec(S, a2, a0, 50.0)
    tr = trace_intersection_curve(s1, s2, (a0 + a1 + a2) / 3)
    assert len(tr.points) == 0
    assert not tr.complete
    assert tr.message


def test_trace_requires_chained_specs():
    from prodgeo.errors import GeometryError

    a0, a1, a2 = TRI
    s1 = apollonius_spec(S, a0, a1, 1.0)
    bad = apollonius_spec(S, a2, a1, 1.0)  # does not chain back to a0
    with pytest.raises(GeometryError):
        trace_intersection_curve(s1, bad, a0)


def test_spec_validates_inputs():
    with pytest.raises(ValueError):
        apollonius_spec(S, (1, 0, 0), (2, 1, 1), -0.5)
    with pytest.raises(ValueError):
        apollonius_spec(H, (0, 1, 0), (1.5, 0, 0), 1.0)
