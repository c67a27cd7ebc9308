"""Point validity, coordinate charts, and isometries of the two model spaces."""

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import h2r_points, points_for, s2r_points
from prodgeo.errors import InvalidPointError
from prodgeo.model import (
    Geometry,
    as_point,
    cartesian_to_model,
    check_point,
    geometry_norm,
    model_to_cartesian,
    norm_squared,
    point_reflection,
    point_reflection_at_origin,
    translate_to_origin,
    validate_point,
)

S = Geometry.S2R
H = Geometry.H2R


def test_geometry_tags():
    assert Geometry.from_tag("s2r") is S
    assert Geometry.from_tag("h2r") is H
    with pytest.raises(ValueError):
        Geometry.from_tag("e3")


def test_as_point_shapes():
    p = as_point([1, 2, 3])
    assert p.shape == (3,)
    assert p.dtype == float
    # homogeneous 4-tuples are accepted and dehomogenized
    np.testing.assert_allclose(as_point((2, 4, 1, 0.5)), [2, 0.5, 0.25])
    with pytest.raises(ValueError):
        as_point([1, 2])
    # value validation is check_point's job, not as_point's
    assert not check_point(S, as_point([1, 2, np.nan])).valid


def test_origin_is_valid_in_both():
    for g in (S, H):
        assert check_point(g, (1, 0, 0)).valid


def test_s2r_rejects_only_zero():
    assert check_point(S, (0, 0, 0.5)).valid
    assert check_point(S, (-3, 2, 1)).valid
    bad = check_point(S, (0, 0, 0))
    assert not bad.valid
    assert bad.reason


def test_h2r_cone_condition():
    # x^2 > y^2 + z^2 with x > 0.
    assert check_point(H, (1, 0.5, 0.5)).valid
    assert not check_point(H, (1, 1, 1)).valid  # on the cone boundary
    assert not check_point(H, (0.5, 1, 0)).valid  # outside
    assert not check_point(H, (-2, 0, 0)).valid  # backward sheet


def test_validate_point_raises():
    with pytest.raises(InvalidPointError):
        validate_point(H, (0, 1, 0))
    out = validate_point(S, (1, 1, 0))
    assert out.shape == (3,)


def test_norms_at_origin():
    for g in (S, H):
        assert geometry_norm(g, (1, 0, 0)) == pytest.approx(1.0)
        assert norm_squared(g, (1, 0, 0)) == pytest.approx(1.0)


@given(p=s2r_points())
def test_s2r_norm_is_euclidean(p):
    assert geometry_norm(S, p) == pytest.approx(np.linalg.norm(p), rel=1e-12)


@given(p=h2r_points())
def test_h2r_norm_is_lorentzian(p):
    q = p[0] ** 2 - p[1] ** 2 - p[2] ** 2
    assert norm_squared(H, p) == pytest.approx(q, rel=1e-9)
    assert geometry_norm(H, p) == pytest.approx(np.sqrt(q), rel=1e-9)


def _random_chart(g, rng):
    """Chart coordinates inside the open chart domain of either geometry."""
    t = rng.uniform(-1.0, 1.0)
    if g is S:
        return np.array([t, rng.uniform(-3.0, 3.0), rng.uniform(-1.4, 1.4)])
    return np.array([t, rng.uniform(0.05, 2.0), rng.uniform(-3.0, 3.0)])


@pytest.mark.parametrize("g", [S, H], ids=["s2r", "h2r"])
def test_chart_round_trip(g, rng):
    for _ in range(50):
        c = _random_chart(g, rng)
        p = model_to_cartesian(g, c)
        assert check_point(g, p).valid
        back = cartesian_to_model(g, p)
        np.testing.assert_allclose(back, c, atol=1e-12)


@pytest.mark.parametrize("g", [S, H], ids=["s2r", "h2r"])
def test_translate_to_origin_moves_anchor(g, rng):
    for _ in range(40):
        anchor = model_to_cartesian(g, _random_chart(g, rng))
        iso = translate_to_origin(g, anchor)
        np.testing.assert_allclose(iso.apply(anchor), [1, 0, 0], atol=1e-12)
        np.testing.assert_allclose(iso.apply_inverse([1, 0, 0]), anchor, atol=1e-12)


@given(p=s2r_points(), q=s2r_points())
def test_s2r_translation_preserves_validity(p, q):
    iso = translate_to_origin(S, p)
    assert check_point(S, iso.apply(q)).valid


@given(p=h2r_points(), q=h2r_points())
def test_h2r_translation_preserves_validity(p, q):
    iso = translate_to_origin(H, p)
    assert check_point(H, iso.apply(q)).valid


def test_isometry_compose_and_inverse(rng):
    for g in (S, H):
        a = model_to_cartesian(g, _random_chart(g, rng))
        b = model_to_cartesian(g, _random_chart(g, rng))
        f = translate_to_origin(g, a)
        h = translate_to_origin(g, b)
        fh = f.compose(h)
        x = model_to_cartesian(g, _random_chart(g, rng))
        np.testing.assert_allclose(fh.apply(x), f.apply(h.apply(x)), atol=1e-12)
        np.testing.assert_allclose(fh.apply_inverse(fh.apply(x)), x, atol=1e-12)
        inv = f.inverse()
        np.testing.assert_allclose(inv.apply(f.apply(x)), x, atol=1e-12)


def test_isometry_batch_apply(rng):
    iso = translate_to_origin(S, (1.2, -0.3, 0.4))
    pts = rng.uniform(-1, 1, size=(7, 3)) + np.array([2.0, 0, 0])
    batch = iso.apply(pts)
    assert batch.shape == (7, 3)
    for row, p in zip(batch, pts):
        np.testing.assert_allclose(row, iso.apply(p), atol=1e-14)


def test_point_reflection_at_origin_involution(geom, rng):
    for _ in range(25):
        p = model_to_cartesian(geom, _random_chart(geom, rng))
        r = point_reflection_at_origin(geom, p)
        assert check_point(geom, r).valid
        np.testing.assert_allclose(
            point_reflection_at_origin(geom, r), p, atol=1e-12
        )


def test_point_reflection_fixes_center(geom, rng):
    for _ in range(15):
        c = model_to_cartesian(geom, _random_chart(geom, rng))
        reflect = point_reflection(geom, c)
        np.testing.assert_allclose(reflect(c), c, atol=1e-11)
        p = model_to_cartesian(geom, _random_chart(geom, rng))
        # reflecting twice is the identity
        np.testing.assert_allclose(reflect(reflect(p)), p, atol=1e-10)
