"""Shared pytest configuration: deterministic hypothesis profile and helpers."""

import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from prodgeo.model import Geometry

settings.register_profile(
    "suite",
    derandomize=True,
    max_examples=60,
    deadline=None,
    suppress_health_check=[HealthCheck.filter_too_much, HealthCheck.too_slow],
)
settings.load_profile("suite")

finite = dict(allow_nan=False, allow_infinity=False)


def s2r_points():
    """Strategy for valid S2xR points: any nonzero Cartesian triple."""
    return (
        st.tuples(
            st.floats(min_value=-4.0, max_value=4.0, **finite),
            st.floats(min_value=-4.0, max_value=4.0, **finite),
            st.floats(min_value=-4.0, max_value=4.0, **finite),
        )
        .map(np.array)
        .filter(lambda p: np.linalg.norm(p) > 1e-2)
    )


def h2r_points():
    """Strategy for valid H2xR points: inside the forward cone x^2 > y^2 + z^2."""

    def build(raw):
        r, phi, scale = raw
        y = r * np.cos(phi)
        z = r * np.sin(phi)
        x = np.sqrt(1.0 + r * r) * scale
        return np.array([x, y * scale, z * scale])

    return st.tuples(
        st.floats(min_value=0.0, max_value=2.5, **finite),
        st.floats(min_value=-np.pi, max_value=np.pi, **finite),
        st.floats(min_value=0.15, max_value=4.0, **finite),
    ).map(build)


def points_for(geom: Geometry):
    return s2r_points() if geom is Geometry.S2R else h2r_points()


@pytest.fixture(params=[Geometry.S2R, Geometry.H2R], ids=["s2r", "h2r"])
def geom(request):
    return request.param


@pytest.fixture
def rng():
    return np.random.default_rng(20240811)
