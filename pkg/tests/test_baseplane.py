"""Base surface operations: projection, distance, intersection, signed ratios."""

import math

import numpy as np
import pytest
from hypothesis import assume, given

from conftest import h2r_points, s2r_points
from prodgeo.baseplane import (
    base_distance,
    base_inner,
    base_line_intersect,
    base_point_between,
    base_simple_ratio,
    is_base_point,
    project_to_base,
)
from prodgeo.errors import GeometryError
from prodgeo.geodesics import distance
from prodgeo.model import Geometry, geometry_norm

S = Geometry.S2R
H = Geometry.H2R


def _sph(theta, phi=0.0):
    return np.array(
        [math.cos(theta), math.sin(theta) * math.cos(phi), math.sin(theta) * math.sin(phi)]
    )


def _hyp(r, alpha=0.0):
    return np.array(
        [math.cosh(r), math.sinh(r) * math.cos(alpha), math.sinh(r) * math.sin(alpha)]
    )


@given(p=s2r_points())
def test_project_to_base_s2r(p):
    b = project_to_base(S, p)
    assert is_base_point(S, b)
    assert np.linalg.norm(b) == pytest.approx(1.0, abs=1e-12)
    # projection is radial: direction unchanged
    np.testing.assert_allclose(b * np.linalg.norm(p), p, atol=1e-9)


@given(p=h2r_points())
def test_project_to_base_h2r(p):
    b = project_to_base(H, p)
    assert is_base_point(H, b)
    assert geometry_norm(H, b) == pytest.approx(1.0, abs=1e-9)
    np.testing.assert_allclose(b * geometry_norm(H, p), p, atol=1e-8)


def test_project_is_idempotent(geom, rng):
    for _ in range(20):
        if geom is S:
            p = rng.normal(size=3) * 2
            if np.linalg.norm(p) < 1e-2:
                continue
        else:
            p = _hyp(rng.uniform(0, 2), rng.uniform(-math.pi, math.pi)) * rng.uniform(0.3, 3)
        b = project_to_base(geom, p)
        np.testing.assert_allclose(project_to_base(geom, b), b, atol=1e-12)


def test_base_distance_examples():
    assert base_distance(S, (1, 0, 0), (0, 1, 0)) == pytest.approx(math.pi / 2)
    assert base_distance(S, _sph(0.3), _sph(1.1)) == pytest.approx(0.8, abs=1e-12)
    assert base_distance(H, _hyp(0.0), _hyp(1.3)) == pytest.approx(1.3, abs=1e-12)


def test_base_distance_matches_full_distance_on_base(geom):
    # base points have no fibre component, so both metrics agree there
    pairs = (
        (_sph(0.2, 0.5), _sph(1.0, -0.4)) if geom is S else (_hyp(0.3, 0.5), _hyp(1.2, -0.4))
    )
    a, b = pairs
    assert base_distance(geom, a, b) == pytest.approx(distance(geom, a, b), abs=1e-10)


def test_base_inner_symmetry(geom, rng):
    for _ in range(20):
        if geom is S:
            a, b = rng.normal(size=3), rng.normal(size=3)
        else:
            a = _hyp(rng.uniform(0, 2), rng.uniform(-3, 3))
            b = _hyp(rng.uniform(0, 2), rng.uniform(-3, 3))
        assert base_inner(geom, a, b) == pytest.approx(base_inner(geom, b, a), rel=1e-12)


def test_is_base_point_rejects_scaled(geom):
    p = _sph(0.4) if geom is S else _hyp(0.4)
    assert is_base_point(geom, p)
    assert not is_base_point(geom, 1.5 * p)


# ---------------------------------------------------------------------------
# base_line_intersect


def test_intersect_great_circles():
    equator = ((1, 0, 0), (0, 1, 0))
    meridian = (_sph(0.3, math.pi / 2), _sph(-0.3, math.pi / 2))
    x = base_line_intersect(S, equator, meridian)
    np.testing.assert_allclose(x, [1, 0, 0], atol=1e-12)


def test_intersect_picks_candidate_near_arcs():
    # both antipodes solve the plane equations; the hit near the defining
    # arcs is the useful one
    arc1 = (_sph(0.2, 0.0), _sph(0.9, 0.0))
    arc2 = (_sph(0.5, 0.4), _sph(0.5, -0.4))
    x = base_line_intersect(S, arc1, arc2)
    assert x[0] > 0  # near the arcs, not at the antipode
    assert is_base_point(S, x)


def test_intersect_hyperbolic_lines():
    line1 = (_hyp(0.5, 0.0), _hyp(0.5, math.pi))
    line2 = (_hyp(0.4, math.pi / 2), _hyp(0.4, -math.pi / 2))
    x = base_line_intersect(H, line1, line2)
    np.testing.assert_allclose(x, [1, 0, 0], atol=1e-12)


def test_intersect_missing_on_hyperboloid_returns_none():
    # the planes of these two lines meet in a spacelike direction, so the
    # lines are ultraparallel and never meet on the sheet
    line1 = (_hyp(0.6, 0.0), _hyp(0.6, math.pi))
    far = (_hyp(2.0, 1.2), _hyp(2.0, math.pi - 1.2))
    assert base_line_intersect(H, line1, far) is None


def test_intersect_coincident_lines_raise():
    line = (_sph(0.2), _sph(0.8))
    with pytest.raises(GeometryError):
        base_line_intersect(S, line, (_sph(0.4), _sph(0.6)))


# ---------------------------------------------------------------------------
# signed ratio on the base surface


def test_ratio_midpoint_is_one(geom):
    if geom is S:
        a, p, b = _sph(0.0), _sph(0.4), _sph(0.8)
    else:
        a, p, b = _hyp(0.0), _hyp(0.4), _hyp(0.8)
    assert base_simple_ratio(geom, a, p, b) == pytest.approx(1.0, abs=1e-12)


def test_ratio_magnitudes_follow_sin_sinh():
    a, p, b = _sph(0.0), _sph(0.5), _sph(1.2)
    expect = math.sin(0.5) / math.sin(0.7)
    assert base_simple_ratio(S, a, p, b) == pytest.approx(expect, abs=1e-12)
    a, p, b = _hyp(0.0), _hyp(0.5), _hyp(1.2)
    expect = math.sinh(0.5) / math.sinh(0.7)
    assert base_simple_ratio(H, a, p, b) == pytest.approx(expect, abs=1e-12)


def test_ratio_sign_negative_outside(geom):
    mk = _sph if geom is S else _hyp
    # p beyond b
    assert base_simple_ratio(geom, mk(0.0), mk(1.0), mk(0.7)) < 0
    # p before a
    assert base_simple_ratio(geom, mk(0.3), mk(0.05), mk(0.9)) < 0
    # p inside
    assert base_simple_ratio(geom, mk(0.0), mk(0.4), mk(0.9)) > 0


def test_ratio_swap_product_is_one(geom, rng):
    mk = _sph if geom is S else _hyp
    hi = 2.6 if geom is S else 4.0
    for _ in range(40):
        ts = np.sort(rng.uniform(0.0, hi, size=3))
        if np.min(np.diff(ts)) < 1e-3:
            continue
        order = rng.permutation(3)
        a, p, b = (mk(ts[i]) for i in order)
        s1 = base_simple_ratio(geom, a, p, b)
        s2 = base_simple_ratio(geom, b, p, a)
        assert s1 * s2 == pytest.approx(1.0, abs=1e-9)


def test_point_between(geom):
    mk = _sph if geom is S else _hyp
    assert base_point_between(geom, mk(0.0), mk(0.3), mk(0.8))
    assert not base_point_between(geom, mk(0.0), mk(0.9), mk(0.8))
    assert not base_point_between(geom, mk(0.2), mk(0.1), mk(0.8))
