"""Closed-form distance, geodesic curves, parameter inversion, quadrature."""

import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import finite
from prodgeo.errors import InvalidPointError
from prodgeo.geodesics import (
    BRANCHES,
    GeodesicParams,
    arc_length_quadrature,
    clamp_cosh,
    clamp_unit,
    distance,
    distance_via_inversion,
    geodesic_between,
    geodesic_midpoint,
    geodesic_point,
    geodesic_points,
    invert_geodesic,
    point_on_geodesic,
)
from prodgeo.model import Geometry, translate_to_origin

S = Geometry.S2R
H = Geometry.H2R
E = math.e
ORIGIN = np.array([1.0, 0.0, 0.0])


# ---------------------------------------------------------------------------
# distance: pinned values


def test_distance_quarter_turn_on_base_sphere():
    assert distance(S, (1, 0, 0), (0, 1, 0)) == pytest.approx(math.pi / 2, abs=1e-12)


@pytest.mark.parametrize("g", [S, H], ids=["s2r", "h2r"])
def test_distance_pure_fibre(g):
    # along the scaling direction the distance is the log of the norm ratio
    assert distance(g, (1, 0, 0), (E, 0, 0)) == pytest.approx(1.0, abs=1e-12)
    assert distance(g, (E, 0, 0), (1, 0, 0)) == pytest.approx(1.0, abs=1e-12)
    assert distance(g, (1, 0, 0), (E**3, 0, 0)) == pytest.approx(3.0, abs=1e-12)


def test_distance_mixed_component_s2r():
    # base arc 0.6 and fibre shift 0.8 compose like a right triangle
    p = math.exp(0.8) * np.array([math.cos(0.6), math.sin(0.6), 0.0])
    assert distance(S, ORIGIN, p) == pytest.approx(1.0, abs=1e-12)


def test_distance_mixed_component_h2r():
    p = math.exp(0.4) * np.array([math.cosh(0.3), math.sinh(0.3), 0.0])
    assert distance(H, ORIGIN, p) == pytest.approx(0.5, abs=1e-12)


def test_distance_antipodal_s2r():
    assert distance(S, ORIGIN, (-1, 0, 0)) == pytest.approx(math.pi, abs=1e-12)
    # with a fibre offset the two legs still compose orthogonally
    d = distance(S, ORIGIN, (-2.0, 0, 0))
    assert d == pytest.approx(math.hypot(math.pi, math.log(2.0)), abs=1e-12)


def test_distance_takes_shorter_base_arc():
    for theta in (2.5, 4.0, 6.0):
        p = np.array([math.cos(theta), math.sin(theta), 0.0])
        expect = min(theta, 2 * math.pi - theta)
        assert distance(S, ORIGIN, p) == pytest.approx(expect, abs=1e-12)


def test_distance_h2r_base_is_arccosh():
    r = 1.3
    p = np.array([math.cosh(r), math.sinh(r), 0.0])
    assert distance(H, ORIGIN, p) == pytest.approx(r, abs=1e-12)


# ---------------------------------------------------------------------------
# distance: properties


@pytest.mark.parametrize("g", [S, H], ids=["s2r", "h2r"])
def test_distance_properties(g, rng):
    def sample():
        if g is S:
            return rng.normal(size=3) * rng.uniform(0.5, 2.0)
        r = rng.uniform(0, 2.0)
        phi = rng.uniform(-math.pi, math.pi)
        sc = rng.uniform(0.2, 3.0)
        return sc * np.array([math.hypot(1, r), r * math.cos(phi), r * math.sin(phi)])

    for _ in range(60):
        p, q, w = sample(), sample(), sample()
        if g is S and min(np.linalg.norm(x) for x in (p, q, w)) < 1e-3:
            continue
        dpq = distance(g, p, q)
        assert dpq >= 0
        assert distance(g, q, p) == pytest.approx(dpq, abs=1e-10)
        # triangle inequality, up to roundoff
        assert dpq <= distance(g, p, w) + distance(g, w, q) + 1e-9
        # arccos/arccosh have infinite slope at 1, so coincident inputs
        # amplify unit roundoff to about sqrt(eps); this is why membership
        # checks elsewhere compare coordinates instead of distances
        assert distance(g, p, p) <= 1e-7


@pytest.mark.parametrize("g", [S, H], ids=["s2r", "h2r"])
def test_distance_isometry_invariant(g, rng):
    from prodgeo.model import model_to_cartesian

    def chart():
        if g is S:
            return np.array([rng.uniform(-1, 1), rng.uniform(-3, 3), rng.uniform(-1.4, 1.4)])
        return np.array([rng.uniform(-1, 1), rng.uniform(0, 2), rng.uniform(-3, 3)])

    for _ in range(40):
        p = model_to_cartesian(g, chart())
        q = model_to_cartesian(g, chart())
        a = model_to_cartesian(g, chart())
        iso = translate_to_origin(g, a)
        d0 = distance(g, p, q)
        d1 = distance(g, iso.apply(p), iso.apply(q))
        assert d1 == pytest.approx(d0, abs=1e-10)


def test_distance_via_inversion_agrees(geom, rng):
    from prodgeo.model import model_to_cartesian

    for _ in range(40):
        if geom is S:
            c1 = np.array([rng.uniform(-1, 1), rng.uniform(-3, 3), rng.uniform(-1.3, 1.3)])
            c2 = np.array([rng.uniform(-1, 1), rng.uniform(-3, 3), rng.uniform(-1.3, 1.3)])
        else:
            c1 = np.array([rng.uniform(-1, 1), rng.uniform(0, 1.8), rng.uniform(-3, 3)])
            c2 = np.array([rng.uniform(-1, 1), rng.uniform(0, 1.8), rng.uniform(-3, 3)])
        p = model_to_cartesian(geom, c1)
        q = model_to_cartesian(geom, c2)
        assert distance_via_inversion(geom, p, q) == pytest.approx(
            distance(geom, p, q), abs=1e-10
        )


# ---------------------------------------------------------------------------
# geodesic curves


def test_geodesic_point_at_zero_is_origin(geom):
    np.testing.assert_allclose(geodesic_point(geom, 0.3, -0.2, 0.0), ORIGIN, atol=1e-15)


def test_geodesic_point_distance_equals_parameter(geom, rng):
    # unit-speed curves: closed-form distance from the origin returns tau
    for _ in range(50):
        u = rng.uniform(-math.pi, math.pi)
        v = rng.uniform(-math.pi / 2, math.pi / 2)
        tau = rng.uniform(0.01, 3.0)
        if geom is S and tau * abs(math.cos(v)) > math.pi - 1e-3:
            continue
        p = geodesic_point(geom, u, v, tau)
        assert distance(geom, ORIGIN, p) == pytest.approx(tau, abs=1e-10)


def test_geodesic_points_batch(geom):
    ts = np.linspace(0.0, 2.0, 9)
    pts = geodesic_points(geom, 0.7, 0.2, ts)
    assert pts.shape == (9, 3)
    for row, t in zip(pts, ts):
        np.testing.assert_allclose(row, geodesic_point(geom, 0.7, 0.2, t), atol=1e-14)


def test_point_on_geodesic_is_arc_length_parametrized(geom):
    p = np.array([1.0, 0.2, -0.3]) if geom is S else np.array([1.4, 0.2, -0.3])
    q = np.array([0.4, 1.2, 0.9]) if geom is S else np.array([1.8, 0.9, 0.6])
    d = distance(geom, p, q)
    np.testing.assert_allclose(point_on_geodesic(geom, p, q, 0.0), p, atol=1e-12)
    np.testing.assert_allclose(point_on_geodesic(geom, p, q, d), q, atol=1e-10)
    for s in (0.2 * d, 0.5 * d, 0.9 * d):
        x = point_on_geodesic(geom, p, q, s)
        assert distance(geom, p, x) == pytest.approx(s, abs=1e-10)
        assert distance(geom, x, q) == pytest.approx(d - s, abs=1e-10)


def test_geodesic_midpoint_bisects(geom, rng):
    from prodgeo.model import model_to_cartesian

    for _ in range(25):
        if geom is S:
            p = model_to_cartesian(geom, [rng.uniform(-1, 1), rng.uniform(-2, 2), rng.uniform(-1.2, 1.2)])
            q = model_to_cartesian(geom, [rng.uniform(-1, 1), rng.uniform(-2, 2), rng.uniform(-1.2, 1.2)])
        else:
            p = model_to_cartesian(geom, [rng.uniform(-1, 1), rng.uniform(0, 1.5), rng.uniform(-3, 3)])
            q = model_to_cartesian(geom, [rng.uniform(-1, 1), rng.uniform(0, 1.5), rng.uniform(-3, 3)])
        m = geodesic_midpoint(geom, p, q)
        dpm = distance(geom, p, m)
        dmq = distance(geom, m, q)
        assert dpm == pytest.approx(dmq, abs=1e-9)
        assert dpm + dmq == pytest.approx(distance(geom, p, q), abs=1e-9)


def test_geodesic_between_reconstructs_endpoint(geom, rng):
    from prodgeo.model import model_to_cartesian

    for _ in range(30):
        if geom is S:
            p = model_to_cartesian(geom, [rng.uniform(-0.8, 0.8), rng.uniform(-2, 2), rng.uniform(-1.2, 1.2)])
            q = model_to_cartesian(geom, [rng.uniform(-0.8, 0.8), rng.uniform(-2, 2), rng.uniform(-1.2, 1.2)])
        else:
            p = model_to_cartesian(geom, [rng.uniform(-0.8, 0.8), rng.uniform(0, 1.5), rng.uniform(-3, 3)])
            q = model_to_cartesian(geom, [rng.uniform(-0.8, 0.8), rng.uniform(0, 1.5), rng.uniform(-3, 3)])
        gp = geodesic_between(geom, p, q)
        assert gp.tau == pytest.approx(distance(geom, p, q), abs=1e-10)
        iso = translate_to_origin(geom, p)
        rec = iso.apply_inverse(geodesic_point(geom, gp.u, gp.v, gp.tau))
        np.testing.assert_allclose(rec, q, atol=1e-9)


# ---------------------------------------------------------------------------
# parameter inversion


def test_invert_geodesic_rejects_origin(geom):
    with pytest.raises(InvalidPointError):
        invert_geodesic(geom, ORIGIN)


@pytest.mark.parametrize("g", [S, H], ids=["s2r", "h2r"])
def test_round_trip_generic(g, rng):
    for _ in range(150):
        u = rng.uniform(-math.pi + 0.01, math.pi - 0.01)
        v = rng.uniform(-math.pi / 2 + 0.03, math.pi / 2 - 0.03)
        tau = rng.uniform(0.01, 3.0)
        if g is S and tau * math.cos(v) > math.pi - 1e-2:
            continue
        p = geodesic_point(g, u, v, tau)
        gp = invert_geodesic(g, p)
        assert abs(gp.u - u) < 1e-9
        assert abs(gp.v - v) < 1e-9
        assert abs(gp.tau - tau) < 1e-9


def test_branch_labels_cover_the_case_analysis():
    assert set(BRANCHES[S]) == {
        "generic", "xz_plane", "xz_plane_unit", "fibre", "fibre_antipodal", "polar_axis",
    }
    assert set(BRANCHES[H]) == {"generic", "xz_plane", "xz_plane_unit", "fibre"}


@pytest.mark.parametrize(
    "g,point,branch",
    [
        (S, (E, 0, 0), "fibre"),
        (S, (1 / E, 0, 0), "fibre"),
        (S, (-2.0, 0, 0), "fibre_antipodal"),
        (S, (0, 0, 1.5), "polar_axis"),
        (S, (0, 0, -0.7), "polar_axis"),
        (S, (math.cos(1.0), 0, math.sin(1.0)), "xz_plane_unit"),
        (S, (2 * math.cos(1.0), 0, 2 * math.sin(1.0)), "xz_plane"),
        (S, (0.3, -0.8, 1.1), "generic"),
        (H, (E, 0, 0), "fibre"),
        (H, (math.cosh(0.8), 0, math.sinh(0.8)), "xz_plane_unit"),
        (H, (1.3 * math.cosh(0.8), 0, 1.3 * math.sinh(0.8)), "xz_plane"),
        (H, (1.5, 0.4, -0.6), "generic"),
    ],
)
def test_branch_dispatch_and_reconstruction(g, point, branch):
    gp = invert_geodesic(g, point)
    assert gp.branch == branch
    rec = geodesic_point(g, gp.u, gp.v, gp.tau)
    np.testing.assert_allclose(rec, np.asarray(point, dtype=float), atol=1e-12)


def test_fibre_branch_parameters():
    gp = invert_geodesic(S, (E**2, 0, 0))
    assert gp.v == pytest.approx(math.pi / 2)
    assert gp.tau == pytest.approx(2.0)
    gp = invert_geodesic(H, (1 / E, 0, 0))
    assert gp.v == pytest.approx(-math.pi / 2)
    assert gp.tau == pytest.approx(1.0)


# ---------------------------------------------------------------------------
# quadrature oracle


@pytest.mark.parametrize("g", [S, H], ids=["s2r", "h2r"])
def test_arc_length_quadrature_matches_parameter(g, rng):
    # the quadrature integrates the ambient line element, so agreement with
    # tau checks the closed-form curves are genuinely unit speed
    for _ in range(25):
        u = rng.uniform(-math.pi, math.pi)
        v = rng.uniform(-math.pi / 2, math.pi / 2)
        tau = rng.uniform(0.05, 3.0)
        q = arc_length_quadrature(g, u, v, tau, steps=2000)
        assert q == pytest.approx(tau, abs=1e-9)


def test_arc_length_quadrature_validates_steps():
    with pytest.raises(ValueError):
        arc_length_quadrature(S, 0.1, 0.1, 1.0, steps=7)
    with pytest.raises(ValueError):
        arc_length_quadrature(S, 0.1, 0.1, 1.0, steps=0)


def test_quadrature_on_distance_between_points(geom):
    # stitch the oracle through geodesic_between: quadrature of the
    # connecting curve equals the closed-form distance
    p = np.array([1.1, 0.3, 0.2]) if geom is S else np.array([1.3, 0.3, 0.2])
    q = np.array([0.2, 1.4, -0.5]) if geom is S else np.array([1.9, 1.4, -0.5])
    gp = geodesic_between(geom, p, q)
    quad = arc_length_quadrature(geom, gp.u, gp.v, gp.tau, steps=4000)
    assert quad == pytest.approx(distance(geom, p, q), abs=1e-9)


# ---------------------------------------------------------------------------
# clamps


def test_clamps_snap_roundoff():
    assert clamp_unit(1 + 1e-15) == 1.0
    assert clamp_unit(-1 - 1e-15) == -1.0
    assert clamp_unit(0.25) == 0.25
    assert clamp_cosh(1 - 1e-15) == 1.0
    assert clamp_cosh(1.75) == 1.75


@given(
    x=st.floats(min_value=-1.0, max_value=1.0, **finite),
)
def test_clamp_unit_identity_inside(x):
    assert clamp_unit(x) == x
