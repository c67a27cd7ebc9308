"""Projective-style Cartesian model of the two product geometries.

Points of both geometries are written in homogeneous coordinates
(1, x, y, z); the package stores only the Cartesian part as a length-3
numpy array.  The geometry is selected by a :class:`Geometry` value:

``Geometry.S2R``
    sphere x line.  Valid points satisfy x^2 + y^2 + z^2 > 0.  The unit
    sphere is the base surface and rays from the origin are the fibres,
    with fibre coordinate t = log sqrt(x^2 + y^2 + z^2).

``Geometry.H2R``
    hyperbolic plane x line.  Valid points satisfy x^2 - y^2 - z^2 > 0
    with x > 0 (the open forward cone).  The upper unit hyperboloid is
    the base surface and t = log sqrt(x^2 - y^2 - z^2).

The line element in both cases is the Cartesian quadratic form divided
by the squared geometry norm, which makes scalar multiplication of
(x, y, z) an isometry (a fibre translation).  Rotations about the origin
(S2R) and Lorentz boosts of signature (+, -, -) (H2R) are the base
isometries; :func:`translate_to_origin` composes the two kinds to carry
any valid point to the origin (1, 1, 0, 0).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidPointError

__all__ = [
    "Geometry",
    "ORIGIN",
    "PointCheck",
    "Isometry",
    "as_point",
    "validate_point",
    "check_point",
    "norm_squared",
    "geometry_norm",
    "model_to_cartesian",
    "cartesian_to_model",
    "translate_to_origin",
    "point_reflection_at_origin",
    "point_reflection",
]

#: Cartesian part of the origin (1, 1, 0, 0).
ORIGIN = np.array([1.0, 0.0, 0.0])

# Relative scale for treating a coordinate as exactly zero when picking
# inversion branches and checking validity.
ZERO_TOL = 1e-12


class Geometry(enum.Enum):
    """Which product geometry the coordinates live in."""

    S2R = "s2r"
    H2R = "h2r"

    @property
    def tag(self) -> str:
        return self.value

    @property
    def sign(self) -> float:
        """Sign of the y, z terms in the geometry's quadratic form."""
        return 1.0 if self is Geometry.S2R else -1.0

    def omega(self, w: float) -> float:
        """Angle function: arccos for S2R, arccosh for H2R."""
        if self is Geometry.S2R:
            return math.acos(w)
        return math.acosh(w)

    def weight(self, d: float) -> float:
        """Ratio weight function: sin for S2R, sinh for H2R."""
        if self is Geometry.S2R:
            return math.sin(d)
        return math.sinh(d)

    @classmethod
    def from_tag(cls, tag: str) -> "Geometry":
        for g in cls:
            if g.value == tag:
                return g
        raise ValueError(f"unknown geometry tag {tag!r}; expected 's2r' or 'h2r'")


@dataclass(frozen=True)
class PointCheck:
    """Validity verdict for a point, naming the violated constraint."""

    valid: bool
    reason: str | None = None


def as_point(p) -> np.ndarray:
    """Coerce ``p`` to a float array of shape (3,) without validation."""
    a = np.asarray(p, dtype=float)
    if a.shape == (4,):
        # Accept homogeneous input (1, x, y, z) for convenience.
        if abs(a[0]) < ZERO_TOL:
            raise InvalidPointError("homogeneous coordinate x0 is zero")
        a = a[1:] / a[0]
    if a.shape != (3,):
        raise InvalidPointError(f"expected 3 Cartesian coordinates, got shape {a.shape}")
    return a


def norm_squared(geom: Geometry, p) -> float:
    """Quadratic form x^2 +/- (y^2 + z^2) of the Cartesian part."""
    x, y, z = as_point(p)
    return x * x + geom.sign * (y * y + z * z)


def check_point(geom: Geometry, p) -> PointCheck:
    """Validity verdict without raising."""
    try:
        a = as_point(p)
    except InvalidPointError as exc:
        return PointCheck(False, str(exc))
    if not np.all(np.isfinite(a)):
        return PointCheck(False, "non-finite coordinate")
    scale = 1.0 + float(np.max(np.abs(a))) ** 2
    q = norm_squared(geom, a)
    if geom is Geometry.S2R:
        if q <= ZERO_TOL * scale:
            return PointCheck(False, "zero norm: x^2 + y^2 + z^2 must be positive")
        return PointCheck(True)
    if a[0] <= 0.0:
        return PointCheck(False, "x must be positive in the forward cone")
    if q <= ZERO_TOL * scale:
        return PointCheck(False, "outside the cone: x^2 - y^2 - z^2 must be positive")
    return PointCheck(True)


def validate_point(geom: Geometry, p) -> np.ndarray:
    """Return the Cartesian part of ``p`` or raise :class:`InvalidPointError`."""
    verdict = check_point(geom, p)
    if not verdict.valid:
        raise InvalidPointError(f"{geom.tag}: {verdict.reason}")
    return as_point(p)


def geometry_norm(geom: Geometry, p) -> float:
    """sqrt of the geometry's quadratic form; requires a valid point."""
    return math.sqrt(norm_squared(geom, validate_point(geom, p)))


# ---------------------------------------------------------------------------
# Coordinate charts
# ---------------------------------------------------------------------------

def model_to_cartesian(geom: Geometry, coords) -> np.ndarray:
    """Map chart coordinates to Cartesian (x, y, z).

    Parameters
    ----------
    coords : array-like of 3 floats
        For S2R the geographic chart (t, phi, theta) with
        phi in (-pi, pi], theta in [-pi/2, pi/2]:

            x = e^t cos(phi) cos(theta)
            y = e^t sin(phi) cos(theta)
            z = e^t sin(theta)

        For H2R the cylindrical chart (t, r, alpha) with r >= 0:

            x = e^t cosh(r)
            y = e^t sinh(r) cos(alpha)
            z = e^t sinh(r) sin(alpha)
    """
    t, a, b = (float(c) for c in np.asarray(coords, dtype=float))
    et = math.exp(t)
    if geom is Geometry.S2R:
        phi, theta = a, b
        return np.array([
            et * math.cos(phi) * math.cos(theta),
            et * math.sin(phi) * math.cos(theta),
            et * math.sin(theta),
        ])
    r, alpha = a, b
    return np.array([
        et * math.cosh(r),
        et * math.sinh(r) * math.cos(alpha),
        et * math.sinh(r) * math.sin(alpha),
    ])


def cartesian_to_model(geom: Geometry, p) -> np.ndarray:
    """Invert :func:`model_to_cartesian` on the open chart interior."""
    x, y, z = validate_point(geom, p)
    n = geometry_norm(geom, p)
    t = math.log(n)
    if geom is Geometry.S2R:
        theta = math.asin(max(-1.0, min(1.0, z / n)))
        phi = math.atan2(y, x)
        return np.array([t, phi, theta])
    r = math.acosh(max(1.0, x / n))
    alpha = math.atan2(z, y)
    return np.array([t, r, alpha])


# ---------------------------------------------------------------------------
# Isometries
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Isometry:
    """A model isometry as a 4x4 matrix on homogeneous coordinates.

    The matrices produced here keep the 0th coordinate fixed at 1, but
    :meth:`apply` renormalizes by it anyway so composed maps stay safe.
    """

    matrix: np.ndarray
    inverse_matrix: np.ndarray

    def apply(self, p) -> np.ndarray:
        return self._act(self.matrix, p)

    def apply_inverse(self, p) -> np.ndarray:
        return self._act(self.inverse_matrix, p)

    def inverse(self) -> "Isometry":
        return Isometry(self.inverse_matrix, self.matrix)

    def compose(self, other: "Isometry") -> "Isometry":
        """Return self after other: (self o other)."""
        return Isometry(self.matrix @ other.matrix,
                        other.inverse_matrix @ self.inverse_matrix)

    @staticmethod
    def _act(m: np.ndarray, p) -> np.ndarray:
        a = np.asarray(p, dtype=float)
        if a.ndim == 1:
            h = m @ np.concatenate(([1.0], as_point(a)))
            return h[1:] / h[0]
        # Batch of row points, shape (n, 3).
        ones = np.ones((a.shape[0], 1))
        h = np.hstack([ones, a]) @ m.T
        return h[:, 1:] / h[:, :1]


def _minimal_base_map(geom: Geometry, b: np.ndarray) -> np.ndarray:
    """3x3 base isometry carrying unit vector ``b`` to (1, 0, 0).

    Acts as the identity on the J-orthogonal complement of the plane
    spanned by b and (1, 0, 0).  J is the identity for S2R (rotation)
    and diag(1, -1, -1) for H2R (Lorentz boost).
    """
    a = np.array([1.0, 0.0, 0.0])
    j = np.diag([1.0, geom.sign, geom.sign])
    pre = np.eye(3)
    if geom is Geometry.S2R and b[0] < -0.99:
        # Nearly antipodal anchor: rotate by pi about the z axis first so
        # the minimal-rotation formula stays well conditioned.
        pre = np.diag([-1.0, -1.0, 1.0])
        b = pre @ b
    c = float(a @ j @ b)
    ab = a + b
    m = np.eye(3) + 2.0 * np.outer(a, j @ b) - np.outer(ab, j @ ab) / (1.0 + c)
    return m @ pre


def translate_to_origin(geom: Geometry, anchor) -> Isometry:
    """Isometry carrying ``anchor`` to the origin (1, 1, 0, 0).

    Factified as a fibre translation (scaling by 1/N) followed by the
    minimal base rotation/boost taking the projected anchor to the base
    origin.

    Returns
    -------
    Isometry
        ``iso.apply(anchor)`` is (numerically) the origin and
        ``iso.apply_inverse`` undoes the map exactly.
    """
    p = validate_point(geom, anchor)
    n = geometry_norm(geom, p)
    b = p / n
    m = _minimal_base_map(geom, b)
    j = np.diag([1.0, geom.sign, geom.sign])
    m_inv = j @ m.T @ j
    fwd = np.eye(4)
    fwd[1:, 1:] = m / n
    bwd = np.eye(4)
    bwd[1:, 1:] = m_inv * n
    return Isometry(fwd, bwd)


def point_reflection_at_origin(geom: Geometry, p) -> np.ndarray:
    """Reflect ``p`` through the origin point (1, 1, 0, 0).

    Reverses every geodesic through the origin: the base part is rotated
    half a turn about the base origin and the fibre coordinate is
    negated, which in Cartesian terms is (x, -y, -z) / N^2.
    """
    x, y, z = validate_point(geom, p)
    q = norm_squared(geom, p)
    return np.array([x, -y, -z]) / q


def point_reflection(geom: Geometry, center):
    """Return a callable reflecting points through ``center``.

    The reflection swaps the endpoints of every geodesic segment whose
    midpoint is ``center``; it is the map used to exchange the two foci
    of a bisector surface.
    """
    t = translate_to_origin(geom, center)

    def reflect(p) -> np.ndarray:
        return t.apply_inverse(point_reflection_at_origin(geom, t.apply(p)))

    return reflect
