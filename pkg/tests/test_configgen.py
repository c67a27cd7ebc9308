"""Generated Menelaus / Ceva configurations."""

import math

import numpy as np
import pytest

from prodgeo.configgen import (
    ceva_config_from_dict,
    ceva_config_to_dict,
    lift_to_side,
    menelaus_config_from_dict,
    menelaus_config_to_dict,
    random_ceva_config,
    random_fibre_chart,
    random_general_triangle,
    random_menelaus_config,
)
from prodgeo.baseplane import project_to_base
from prodgeo.geodesics import distance, geodesic_between, point_on_geodesic
from prodgeo.model import Geometry
from prodgeo.theorems import geodesic_parameter
from prodgeo.trianglesurface import TriangleKind

S = Geometry.S2R
H = Geometry.H2R

KINDS = ["general", "fibre"]


def _sides(tri):
    return ((tri.a0, tri.a1), (tri.a1, tri.a2), (tri.a2, tri.a0))


def _is_interior(geom, a, b, x):
    t = geodesic_parameter(geom, a, b, x)
    tau = geodesic_between(geom, a, b).tau
    return 0.0 < t < tau


@pytest.mark.parametrize("kind", KINDS)
def test_ceva_feet_sit_inside_their_sides(geom, kind):
    config = random_ceva_config(geom, kind, 11)
    tri = config.triangle
    assert tri.kind is TriangleKind[kind.upper()]
    feet = (config.p, config.q, config.r)
    for (a, b), x in zip(_sides(tri), feet):
        assert _is_interior(geom, a, b, x)


@pytest.mark.parametrize("kind", KINDS)
def test_menelaus_has_exactly_one_external_point(geom, kind):
    # a transversal line crosses two sides and the extension of the
    # third; the generator always extends the a2-a0 side
    config = random_menelaus_config(geom, kind, 11)
    tri = config.triangle
    flags = [_is_interior(geom, a, b, x)
             for (a, b), x in zip(_sides(tri), (config.p, config.q,
                                                config.r))]
    assert flags.count(False) == 1
    assert not flags[2]


@pytest.mark.parametrize("kind", KINDS)
def test_same_seed_reproduces_configuration(geom, kind):
    c1 = random_ceva_config(geom, kind, 42)
    c2 = random_ceva_config(geom, kind, 42)
    np.testing.assert_array_equal(c1.t, c2.t)
    np.testing.assert_array_equal(c1.p, c2.p)
    for v1, v2 in zip(c1.triangle.vertices, c2.triangle.vertices):
        np.testing.assert_array_equal(v1, v2)
    m1 = random_menelaus_config(geom, kind, 42)
    m2 = random_menelaus_config(geom, kind, 42)
    np.testing.assert_array_equal(m1.q, m2.q)


def test_different_seeds_differ(geom):
    c1 = random_ceva_config(geom, "general", 1)
    c2 = random_ceva_config(geom, "general", 2)
    assert not np.allclose(c1.t, c2.t)


@pytest.mark.parametrize("kind", KINDS)
def test_ceva_dict_roundtrip(geom, kind):
    config = random_ceva_config(geom, kind, 5)
    payload = ceva_config_to_dict(config)
    assert payload["geometry"] == geom.tag
    assert payload["kind"] == kind
    assert set(payload["feet"]) == {"p", "q", "r"}
    back = ceva_config_from_dict(payload)
    assert back.triangle.kind is config.triangle.kind
    np.testing.assert_allclose(back.t, config.t)
    np.testing.assert_allclose(back.p, config.p)
    np.testing.assert_allclose(back.q, config.q)
    np.testing.assert_allclose(back.r, config.r)


@pytest.mark.parametrize("kind", KINDS)
def test_menelaus_dict_roundtrip(geom, kind):
    config = random_menelaus_config(geom, kind, 5)
    payload = menelaus_config_to_dict(config)
    assert payload["geometry"] == geom.tag
    assert payload["kind"] == kind
    back = menelaus_config_from_dict(payload)
    for name in "pqr":
        np.testing.assert_allclose(getattr(back, name),
                                   getattr(config, name))


def test_general_triangle_kind_and_separation(geom):
    tri = random_general_triangle(geom, 9)
    assert tri.kind is TriangleKind.GENERAL
    for (a, b) in _sides(tri):
        assert distance(geom, a, b) > 0.05


def test_fibre_chart_is_isometric(geom):
    chart = random_fibre_chart(geom, 3)
    coords = [(0.0, 0.0), (0.4, -0.3), (-0.7, 0.5), (1.1, 0.2)]
    for i, (s1, t1) in enumerate(coords):
        for s2, t2 in coords[i + 1:]:
            d_chart = math.hypot(s2 - s1, t2 - t1)
            d_model = distance(geom, chart.to_model(s1, t1),
                               chart.to_model(s2, t2))
            assert d_model == pytest.approx(d_chart, abs=1e-10)


def test_lift_recovers_point_from_its_shadow(geom):
    tri = random_general_triangle(geom, 9)
    d = distance(geom, tri.a0, tri.a1)
    x = point_on_geodesic(geom, tri.a0, tri.a1, 0.3 * d)
    lifted = lift_to_side(geom, tri.a0, tri.a1, project_to_base(geom, x))
    np.testing.assert_allclose(lifted, x, atol=1e-9)
