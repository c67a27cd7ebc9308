"""Geodesic toolkit for the product geometries S2xR and H2xR.

The package models both geometries in homogeneous coordinates
(1, x, y, z) and provides geodesics, closed-form distance with a
quadrature oracle, Apollonius (fixed distance ratio) surfaces,
circumscribed spheres of tetrahedra, ratio-defined triangle surfaces,
and Menelaus / Ceva configuration checkers.
"""

from .model import (
    Geometry,
    ORIGIN,
    Isometry,
    PointCheck,
    cartesian_to_model,
    check_point,
    geometry_norm,
    model_to_cartesian,
    norm_squared,
    point_reflection,
    translate_to_origin,
    validate_point,
)
from .geodesics import (
    GeodesicParams,
    arc_length_quadrature,
    distance,
    distance_via_inversion,
    geodesic_between,
    geodesic_midpoint,
    geodesic_point,
    geodesic_points,
    invert_geodesic,
    point_on_geodesic,
)
from .baseplane import (
    base_distance,
    base_line_intersect,
    base_point_between,
    base_simple_ratio,
    project_to_base,
)
from .apollonius import (
    ApolloniusSpec,
    SurfaceMesh,
    apollonius_residual,
    apollonius_spec,
    extract_isosurface,
    ratio_defect,
    residual_grid,
    trace_intersection_curve,
)
from .circumsphere import (
    CenterClassification,
    CircumsphereResult,
    Tetrahedron,
    check_tetrahedron,
    circumscribed_sphere,
    euclidean_circumcenter,
)
from .trianglesurface import (
    GeodesicTriangle,
    SurfacePointResult,
    TriangleKind,
    TriangleSurfaceSample,
    classify_triangle,
    fitted_plane_normal,
    project_curve_to_surface,
    ratio_grid,
    sample_triangle_surface,
    segment_min_distance,
    surface_point,
)
from .theorems import (
    CevaConfig,
    MenelausConfig,
    ceva_product,
    fibre_pythagoras_defect,
    geodesic_parameter,
    menelaus_product,
    simple_ratio_fibre,
    simple_ratio_general,
)
from .configgen import (
    FibreChart,
    ceva_config_from_dict,
    ceva_config_to_dict,
    menelaus_config_from_dict,
    menelaus_config_to_dict,
    random_ceva_config,
    random_fibre_chart,
    random_general_triangle,
    random_menelaus_config,
)
from .errors import (
    AmbiguousIntersectionError,
    ConvergenceError,
    GeometryError,
    InvalidPointError,
    NonCollinearError,
    SemicircleError,
)

__version__ = "0.1.0"

__all__ = [
    "AmbiguousIntersectionError",
    "ApolloniusSpec",
    "CenterClassification",
    "CevaConfig",
    "CircumsphereResult",
    "ConvergenceError",
    "FibreChart",
    "GeodesicParams",
    "GeodesicTriangle",
    "Geometry",
    "GeometryError",
    "InvalidPointError",
    "Isometry",
    "MenelausConfig",
    "NonCollinearError",
    "ORIGIN",
    "PointCheck",
    "SemicircleError",
    "SurfaceMesh",
    "SurfacePointResult",
    "Tetrahedron",
    "TriangleKind",
    "TriangleSurfaceSample",
    "apollonius_residual",
    "apollonius_spec",
    "arc_length_quadrature",
    "base_distance",
    "base_line_intersect",
    "base_point_between",
    "base_simple_ratio",
    "cartesian_to_model",
    "ceva_config_from_dict",
    "ceva_config_to_dict",
    "ceva_product",
    "check_point",
    "check_tetrahedron",
    "circumscribed_sphere",
    "classify_triangle",
    "distance",
    "distance_via_inversion",
    "euclidean_circumcenter",
    "extract_isosurface",
    "fibre_pythagoras_defect",
    "fitted_plane_normal",
    "geodesic_between",
    "geodesic_midpoint",
    "geodesic_parameter",
    "geodesic_point",
    "geodesic_points",
    "geometry_norm",
    "invert_geodesic",
    "menelaus_config_from_dict",
    "menelaus_config_to_dict",
    "menelaus_product",
    "model_to_cartesian",
    "norm_squared",
    "point_on_geodesic",
    "point_reflection",
    "project_curve_to_surface",
    "project_to_base",
    "random_ceva_config",
    "random_fibre_chart",
    "random_general_triangle",
    "random_menelaus_config",
    "ratio_defect",
    "ratio_grid",
    "residual_grid",
    "sample_triangle_surface",
    "segment_min_distance",
    "simple_ratio_fibre",
    "simple_ratio_general",
    "surface_point",
    "trace_intersection_curve",
    "validate_point",
]
