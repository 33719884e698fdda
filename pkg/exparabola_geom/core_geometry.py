"""
Cartesian and barycentric primitives of triangle geometry.

This module defines the value types (points, vectors, triangles, homogeneous
barycentric coordinates) and the triangle centers, Steiner-ellipse and
admissibility predicates that the exparabola constructions build on.
All values are immutable.
"""

from dataclasses import dataclass
from enum import IntEnum
import logging
import math
from typing import List, Tuple

import numpy as np

from exparabola_geom.errors import (
    CollinearityError,
    DegenerateTriangleError,
    GeometryError,
    NumericalError,
    PointAtInfinityError,
)

logger = logging.getLogger(__name__)

# |signed area| <= DEGENERACY_TOLERANCE * (longest side)^2 means degenerate
DEGENERACY_TOLERANCE = 1e-12
# perpendicular deviation allowed in affine_ratio, relative to |XY|
COLLINEARITY_TOLERANCE = 1e-9
# |x0 + x1 + x2| below this fraction of |x0| + |x1| + |x2| is a point at infinity
INFINITY_TOLERANCE = 1e-14


class Vertex(IntEnum):
    """Triangle vertex label; the value indexes barycentric coordinates."""
    A = 0
    B = 1
    C = 2


@dataclass(frozen=True)
class Vec2:
    """Vector in the plane."""
    dx: float
    dy: float

    def __post_init__(self):
        if not (math.isfinite(self.dx) and math.isfinite(self.dy)):
            raise GeometryError(f"Vector components must be finite, got ({self.dx}, {self.dy})")

    @classmethod
    def from_array(cls, arr) -> 'Vec2':
        """Create from a length-2 sequence."""
        return cls(float(arr[0]), float(arr[1]))

    def to_array(self) -> np.ndarray:
        """Convert to numpy array."""
        return np.array([self.dx, self.dy], dtype=float)

    def norm(self) -> float:
        return math.hypot(self.dx, self.dy)

    def dot(self, other: 'Vec2') -> float:
        return self.dx * other.dx + self.dy * other.dy

    def cross(self, other: 'Vec2') -> float:
        """det(self, other)."""
        return self.dx * other.dy - self.dy * other.dx

    def rotated(self, angle: float) -> 'Vec2':
        """Rotate counterclockwise by angle (radians)."""
        cos_a, sin_a = math.cos(angle), math.sin(angle)
        return Vec2(cos_a * self.dx - sin_a * self.dy, sin_a * self.dx + cos_a * self.dy)

    def __repr__(self):
        return f"Vec({self.dx:.6g},{self.dy:.6g})"


@dataclass(frozen=True)
class Point2:
    """Point in the Cartesian plane."""
    x: float
    y: float

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise GeometryError(f"Point coordinates must be finite, got ({self.x}, {self.y})")

    @classmethod
    def from_array(cls, arr) -> 'Point2':
        """Create from a length-2 sequence."""
        return cls(float(arr[0]), float(arr[1]))

    def to_array(self) -> np.ndarray:
        """Convert to numpy array."""
        return np.array([self.x, self.y], dtype=float)

    def to_tuple(self) -> Tuple[float, float]:
        """Convert to tuple representation."""
        return (self.x, self.y)

    def distance_to(self, other: 'Point2') -> float:
        return math.hypot(self.x - other.x, self.y - other.y)

    def __sub__(self, other: 'Point2') -> Vec2:
        return Vec2(self.x - other.x, self.y - other.y)

    def __repr__(self):
        return f"Pt({self.x:.6g},{self.y:.6g})"


@dataclass(frozen=True)
class Homogeneous3:
    """
    Homogeneous barycentric coordinates (x0 : x1 : x2) with respect to a triangle.

    Attributes:
        x0: Weight of vertex A
        x1: Weight of vertex B
        x2: Weight of vertex C
    """
    x0: float
    x1: float
    x2: float

    def __post_init__(self):
        if not all(math.isfinite(v) for v in (self.x0, self.x1, self.x2)):
            raise GeometryError(f"Barycentric coordinates must be finite: {self.as_tuple()}")
        if self.x0 == 0 and self.x1 == 0 and self.x2 == 0:
            raise GeometryError("Barycentric coordinates (0, 0, 0) do not define a point")

    @classmethod
    def from_array(cls, arr) -> 'Homogeneous3':
        return cls(float(arr[0]), float(arr[1]), float(arr[2]))

    def as_tuple(self) -> Tuple[float, float, float]:
        return (self.x0, self.x1, self.x2)

    def to_array(self) -> np.ndarray:
        return np.array(self.as_tuple(), dtype=float)

    @property
    def total(self) -> float:
        """Coordinate sum x0 + x1 + x2."""
        return self.x0 + self.x1 + self.x2

    def is_at_infinity(self) -> bool:
        magnitude = abs(self.x0) + abs(self.x1) + abs(self.x2)
        return abs(self.total) <= INFINITY_TOLERANCE * magnitude

    def normalized(self) -> 'Homogeneous3':
        """
        Scale so that the coordinates sum to 1.

        Raises:
            PointAtInfinityError: if the coordinate sum vanishes
        """
        if self.is_at_infinity():
            raise PointAtInfinityError(
                f"Coordinates {self.as_tuple()} sum to zero (point at infinity)")
        s = self.total
        return Homogeneous3(self.x0 / s, self.x1 / s, self.x2 / s)

    def is_proportional_to(self, other: 'Homogeneous3', rtol: float = 1e-12) -> bool:
        """Check projective equality (vanishing cross product)."""
        u, v = self.to_array(), other.to_array()
        scale = np.linalg.norm(u) * np.linalg.norm(v)
        return bool(np.linalg.norm(np.cross(u, v)) <= rtol * scale)

    def __repr__(self):
        return f"Bary({self.x0:.6g}:{self.x1:.6g}:{self.x2:.6g})"


@dataclass(frozen=True)
class CanonicalFrame:
    """
    Rigid motion placing a triangle at A = (0, 0), B = (c, 0), C = (c1, c2).

    The local frame is related to the world frame by a rotation followed by a
    translation to A. Maps accept complex coordinates so that foci of
    non-real exparabolas can be carried through.
    """
    origin: Point2
    cos_theta: float
    sin_theta: float
    c: float
    c1: float
    c2: float

    def to_world(self, local: np.ndarray) -> np.ndarray:
        """Map local coordinates (shape (2,) or (n, 2), real or complex) to world."""
        local = np.asarray(local)
        x, y = local[..., 0], local[..., 1]
        wx = self.origin.x + self.cos_theta * x - self.sin_theta * y
        wy = self.origin.y + self.sin_theta * x + self.cos_theta * y
        return np.stack([wx, wy], axis=-1)

    def to_local(self, world: np.ndarray) -> np.ndarray:
        """Map world coordinates to the canonical frame."""
        world = np.asarray(world)
        x, y = world[..., 0] - self.origin.x, world[..., 1] - self.origin.y
        lx = self.cos_theta * x + self.sin_theta * y
        ly = -self.sin_theta * x + self.cos_theta * y
        return np.stack([lx, ly], axis=-1)

    def rotate_to_world(self, local_vec: np.ndarray) -> np.ndarray:
        """Rotate a direction vector from local to world (no translation)."""
        local_vec = np.asarray(local_vec)
        x, y = local_vec[..., 0], local_vec[..., 1]
        return np.stack([self.cos_theta * x - self.sin_theta * y,
                         self.sin_theta * x + self.cos_theta * y], axis=-1)


@dataclass(frozen=True)
class Triangle:
    """
    Non-degenerate triangle ABC.

    Side lengths follow the usual convention a = |BC|, b = |CA|, c = |AB|.
    Construction rejects triangles whose signed area is below
    DEGENERACY_TOLERANCE times the squared longest side.
    """
    A: Point2
    B: Point2
    C: Point2

    def __post_init__(self):
        longest_sq = max(self.side_lengths_squared())
        area = self.signed_area()
        if not abs(area) > DEGENERACY_TOLERANCE * longest_sq:
            raise DegenerateTriangleError(
                f"Degenerate triangle {self.vertices()}: signed area {area:.3g}, "
                f"longest side {math.sqrt(longest_sq):.3g}")

    @classmethod
    def from_vertices(cls, vertices) -> 'Triangle':
        """Create from three (x, y) pairs."""
        if len(vertices) != 3:
            raise GeometryError(f"A triangle needs three vertices, got {len(vertices)}")
        return cls(*(Point2.from_array(v) for v in vertices))

    @classmethod
    def from_side_lengths(cls, a: float, b: float, c: float) -> 'Triangle':
        """
        Place a triangle with given side lengths canonically.

        A = (0, 0), B = (c, 0), C = (c1, c2) with c1 = b cos(alpha) and
        c2 = b sin(alpha) > 0, where cos(alpha) = (b^2 + c^2 - a^2) / (2bc).

        Raises:
            GeometryError: if the strict triangle inequality fails
        """
        if min(a, b, c) <= 0 or not all(math.isfinite(s) for s in (a, b, c)):
            raise GeometryError(f"Side lengths must be positive and finite: {(a, b, c)}")
        if not (a < b + c and b < c + a and c < a + b):
            raise GeometryError(f"Side lengths {(a, b, c)} violate the triangle inequality")
        cos_alpha = (b * b + c * c - a * a) / (2 * b * c)
        c1 = b * cos_alpha
        c2 = b * math.sqrt(max(0.0, 1 - cos_alpha * cos_alpha))
        return cls(Point2(0.0, 0.0), Point2(float(c), 0.0), Point2(c1, c2))

    def vertices(self) -> Tuple[Point2, Point2, Point2]:
        return (self.A, self.B, self.C)

    def vertex(self, label: Vertex) -> Point2:
        return self.vertices()[int(label)]

    def to_array(self) -> np.ndarray:
        """Vertices as a (3, 2) array."""
        return np.array([p.to_tuple() for p in self.vertices()], dtype=float)

    def side_lengths_squared(self) -> Tuple[float, float, float]:
        """(a^2, b^2, c^2) computed directly from coordinates."""
        def sq(p: Point2, q: Point2) -> float:
            return (p.x - q.x) ** 2 + (p.y - q.y) ** 2
        return (sq(self.B, self.C), sq(self.C, self.A), sq(self.A, self.B))

    def signed_area(self) -> float:
        """Positive for counterclockwise vertex order."""
        return 0.5 * (self.B - self.A).cross(self.C - self.A)

    def aspect_ratio(self) -> float:
        """Longest side divided by the shortest altitude."""
        longest_sq = max(self.side_lengths_squared())
        return longest_sq / (2 * abs(self.signed_area()))

    def side_ratio(self) -> float:
        """Longest side divided by the shortest side."""
        squares = self.side_lengths_squared()
        return math.sqrt(max(squares) / min(squares))

    def canonical_frame(self) -> CanonicalFrame:
        """Rigid motion taking A to the origin and B onto the positive x-axis."""
        ab = self.B - self.A
        c = ab.norm()
        cos_t, sin_t = ab.dx / c, ab.dy / c
        ac = self.C - self.A
        c1 = cos_t * ac.dx + sin_t * ac.dy
        c2 = -sin_t * ac.dx + cos_t * ac.dy
        return CanonicalFrame(self.A, cos_t, sin_t, c, c1, c2)

    def __repr__(self):
        return f"Triangle({self.A}, {self.B}, {self.C})"


@dataclass(frozen=True)
class TriangleCenters:
    """Centroid, circumcenter, orthocenter and circumradius of a triangle."""
    G: Point2
    O: Point2
    H: Point2
    R: float

    def euler_residual(self) -> float:
        """|H - O - 3(G - O)|, zero up to rounding in every triangle."""
        return math.hypot(self.H.x - self.O.x - 3 * (self.G.x - self.O.x),
                          self.H.y - self.O.y - 3 * (self.G.y - self.O.y))


def side_lengths(tri: Triangle) -> Tuple[float, float, float]:
    """
    Side lengths (a, b, c) = (|BC|, |CA|, |AB|).

    Args:
        tri: Triangle (non-degenerate by construction)

    Returns:
        Tuple of the three side lengths
    """
    a2, b2, c2 = tri.side_lengths_squared()
    return (math.sqrt(a2), math.sqrt(b2), math.sqrt(c2))


def angle_cosine(tri: Triangle, at_vertex: Vertex) -> float:
    """
    Cosine of the interior angle at a vertex (law of cosines).

    At A this is (b^2 + c^2 - a^2) / (2bc); B and C follow cyclically.
    """
    sq = tri.side_lengths_squared()
    lengths = side_lengths(tri)
    i = int(at_vertex)
    j, k = (i + 1) % 3, (i + 2) % 3
    return (sq[j] + sq[k] - sq[i]) / (2 * lengths[j] * lengths[k])


def centers(tri: Triangle) -> TriangleCenters:
    """
    Compute centroid, circumcenter, orthocenter and circumradius.

    Circumcenter and orthocenter are obtained independently from two 2x2
    linear systems (perpendicular bisectors, altitudes) with A moved to the
    origin, so the Euler relation H - O = 3(G - O) is a genuine check.

    Raises:
        NumericalError: if the linear systems overflow (near-degenerate input)
    """
    a = tri.A.to_array()
    ab = tri.B.to_array() - a
    ac = tri.C.to_array() - a

    try:
        o_rel = np.linalg.solve(2 * np.array([ab, ac]), np.array([ab @ ab, ac @ ac]))
        h_rel = np.linalg.solve(np.array([ac - ab, ac]), np.array([0.0, ab @ ac]))
    except np.linalg.LinAlgError as e:
        raise NumericalError(f"Center computation failed for {tri}: {e}") from e

    if not (np.all(np.isfinite(o_rel)) and np.all(np.isfinite(h_rel))):
        raise NumericalError(f"Circumcenter overflow for near-degenerate {tri}")

    g = (tri.to_array()).mean(axis=0)
    return TriangleCenters(
        G=Point2.from_array(g),
        O=Point2.from_array(a + o_rel),
        H=Point2.from_array(a + h_rel),
        R=float(np.linalg.norm(o_rel)),
    )


def bary_to_cartesian(tri: Triangle, h: Homogeneous3) -> Point2:
    """
    Cartesian point (x0 A + x1 B + x2 C) / (x0 + x1 + x2).

    Raises:
        PointAtInfinityError: if the coordinate sum vanishes
    """
    weights = h.normalized().to_array()
    return Point2.from_array(weights @ tri.to_array())


def cartesian_to_bary(tri: Triangle, p: Point2) -> Homogeneous3:
    """Normalized barycentric coordinates of a Cartesian point."""
    a = tri.A.to_array()
    basis = np.column_stack([tri.B.to_array() - a, tri.C.to_array() - a])
    lam1, lam2 = np.linalg.solve(basis, p.to_array() - a)
    return Homogeneous3(float(1.0 - lam1 - lam2), float(lam1), float(lam2))


def affine_ratio(X: Point2, Y: Point2, Z: Point2,
                 tol: float = COLLINEARITY_TOLERANCE) -> float:
    """
    Signed affine ratio <X, Y; Z> = XZ / ZY of three collinear points.

    Args:
        X, Y: Points spanning the line
        Z: Dividing point, collinear with X and Y
        tol: Allowed perpendicular deviation relative to |XY|

    Raises:
        CollinearityError: if the points are not collinear or Z = Y
    """
    d = Y - X
    length = d.norm()
    if length == 0:
        raise CollinearityError(f"Affine ratio undefined for coincident X = Y = {X}")
    xz = Z - X
    if abs(d.cross(xz)) / length > tol * length:
        raise CollinearityError(f"Points {X}, {Y}, {Z} are not collinear")
    denominator = (Y - Z).dot(d)
    if Z == Y or abs(denominator) <= 1e-15 * length * length:
        raise CollinearityError(f"Affine ratio infinite: Z = {Z} coincides with Y")
    return xz.dot(d) / denominator


def steiner_residual(h: Homogeneous3) -> float:
    """
    Scale-free value of x0 x1 + x1 x2 + x2 x0 (Steiner circumellipse).

    The triple is scaled to unit Euclidean norm first; the result vanishes
    exactly for points on the circumellipse.
    """
    v = h.to_array()
    v = v / np.linalg.norm(v)
    return float(v[0] * v[1] + v[1] * v[2] + v[2] * v[0])


def admissible(xnorm: Homogeneous3) -> bool:
    """
    Whether X admits three real exparabolas with axes through it.

    The coordinates are normalized internally; all three products of pairwise
    coordinate sums must be strictly positive (boundary points are not
    admissible). Points at infinity are never admissible.
    """
    try:
        x0, x1, x2 = xnorm.normalized().as_tuple()
    except PointAtInfinityError:
        logger.debug("Point at infinity %s is not admissible", xnorm)
        return False
    s01, s12, s02 = x0 + x1, x1 + x2, x0 + x2
    return s01 * s12 > 0 and s02 * s12 > 0 and s01 * s02 > 0


def anticomplementary_triangle(tri: Triangle) -> Triangle:
    """Triangle whose medial triangle is tri; its side lines bound the admissible region."""
    a, b, c = (p.to_array() for p in tri.vertices())
    return Triangle(Point2.from_array(b + c - a), Point2.from_array(c + a - b),
                    Point2.from_array(a + b - c))


def steiner_circumellipse_points(tri: Triangle, count: int = 120) -> List[Point2]:
    """
    Sample the Steiner circumellipse.

    Uses the conjugate semi-diameters A - G and (C - B) / sqrt(3) about the
    centroid G; the samples pass through all three vertices when count is a
    multiple of 3.
    """
    g = tri.to_array().mean(axis=0)
    u = tri.A.to_array() - g
    v = (tri.C.to_array() - tri.B.to_array()) / math.sqrt(3)
    angles = -2 * np.pi * np.arange(count) / count
    return [Point2.from_array(g + math.cos(phi) * u + math.sin(phi) * v) for phi in angles]
