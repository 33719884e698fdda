"""
Metric data of parabolas given as quadratic Bezier curves.

A parabola is P(u) = (1-u)^2 P0 + 2(1-u)u P1 + u^2 P2 for real u. This module
evaluates it and computes its axis direction, vertex, squared parameter
(curvature radius at the vertex, squared), isotropic tangent parameters,
focus and directrix in closed form.
"""

from dataclasses import dataclass
import math
from typing import Tuple

import numpy as np

from exparabola_geom.core_geometry import Point2, Vec2
from exparabola_geom.errors import DegenerateParabolaError, GeometryError, NumericalError


# |collinearity| <= PARABOLA_DEGENERACY_TOLERANCE * (control-net diameter)^2 means degenerate
PARABOLA_DEGENERACY_TOLERANCE = 1e-14


@dataclass(frozen=True)
class BezierParabola:
    """
    Parabola given by three control points.

    Attributes:
        P0: Start point, P(0)
        P1: Middle control point (intersection of the end tangents)
        P2: End point, P(1)
    """
    P0: Point2
    P1: Point2
    P2: Point2

    def control_array(self) -> np.ndarray:
        """Control points as a (3, 2) array."""
        return np.array([self.P0.to_tuple(), self.P1.to_tuple(), self.P2.to_tuple()])

    def reversed(self) -> 'BezierParabola':
        """Same curve with reversed parametrization u -> 1 - u."""
        return BezierParabola(self.P2, self.P1, self.P0)

    def diameter(self) -> float:
        """Largest distance between two control points."""
        return max(self.P0.distance_to(self.P1), self.P1.distance_to(self.P2),
                   self.P0.distance_to(self.P2))


@dataclass(frozen=True)
class Line2:
    """Line through a point with a nonzero direction."""
    point: Point2
    direction: Vec2

    def __post_init__(self):
        if self.direction.norm() == 0:
            raise GeometryError("Line direction must be nonzero")

    def signed_distance(self, p: Point2) -> float:
        """Distance of p from the line, positive to the left of the direction."""
        return self.direction.cross(p - self.point) / self.direction.norm()

    def distance_to(self, p: Point2) -> float:
        return abs(self.signed_distance(p))


def collinearity(p: BezierParabola) -> float:
    """
    The quantity x0y1 - x0y2 - x1y0 + x1y2 + x2y0 - x2y1.

    Evaluated as det(P1 - P0, P2 - P0), which is the same polynomial with
    better rounding behaviour away from the origin.
    """
    return (p.P1 - p.P0).cross(p.P2 - p.P0)


def is_degenerate(p: BezierParabola, tol: float = PARABOLA_DEGENERACY_TOLERANCE) -> bool:
    """True when the control points are collinear (the curve is a line segment)."""
    return abs(collinearity(p)) <= tol * p.diameter() ** 2


def _require_parabola(p: BezierParabola) -> None:
    if is_degenerate(p):
        raise DegenerateParabolaError(f"Collinear control points {p.P0}, {p.P1}, {p.P2}")


def evaluate(p: BezierParabola, u: float) -> Point2:
    """Bernstein-form evaluation of P(u)."""
    s = 1.0 - u
    weights = np.array([s * s, 2.0 * s * u, u * u])
    return Point2.from_array(weights @ p.control_array())


def de_casteljau(p: BezierParabola, u: float) -> Tuple[Point2, Point2, Point2]:
    """
    Evaluate by repeated linear interpolation.

    Returns:
        (Q0, Q1, P(u)) where Q0, Q1 are the first-level intermediate points;
        the segment Q0 Q1 is tangent to the curve at P(u)
    """
    p0, p1, p2 = p.control_array()
    q0 = (1 - u) * p0 + u * p1
    q1 = (1 - u) * p1 + u * p2
    return Point2.from_array(q0), Point2.from_array(q1), Point2.from_array((1 - u) * q0 + u * q1)


def derivative(p: BezierParabola, u: float) -> Vec2:
    """P'(u) = 2(P0 - 2P1 + P2)u + 2(P1 - P0)."""
    a = axis_direction_raw(p)
    d = p.P1 - p.P0
    return Vec2(2 * a.dx * u + 2 * d.dx, 2 * a.dy * u + 2 * d.dy)


def second_derivative(p: BezierParabola) -> Vec2:
    a = axis_direction_raw(p)
    return Vec2(2 * a.dx, 2 * a.dy)


def axis_direction_raw(p: BezierParabola) -> Vec2:
    """P0 - 2P1 + P2 without a degeneracy check."""
    return Vec2(p.P0.x - 2 * p.P1.x + p.P2.x, p.P0.y - 2 * p.P1.y + p.P2.y)


def axis_direction(p: BezierParabola) -> Vec2:
    """
    Axis direction P0 - 2P1 + P2, the leading coefficient of P(u).

    The curve recedes to infinity in this direction.

    Raises:
        DegenerateParabolaError: for collinear control points
    """
    _require_parabola(p)
    return axis_direction_raw(p)


def vertex_param(p: BezierParabola) -> float:
    """Parameter u_V = -<a, P1 - P0> / |a|^2 of the vertex."""
    a = axis_direction(p)
    return -a.dot(p.P1 - p.P0) / a.dot(a)


def vertex(p: BezierParabola) -> Point2:
    """Vertex V = P(u_V)."""
    return evaluate(p, vertex_param(p))


def squared_parameter(p: BezierParabola) -> float:
    """
    Squared parameter rho^2 = 4 D^4 / N^3.

    D is the collinearity quantity of the control points and
    N = (x0+x2)^2 + (y0+y2)^2 - 4x1(x0-x1+x2) - 4y1(y0-y1+y2), which equals
    |P0 - 2P1 + P2|^2. rho is the curvature radius at the vertex.
    """
    _require_parabola(p)
    d = collinearity(p)
    a = axis_direction_raw(p)
    n = a.dot(a)
    if n <= 0:
        raise NumericalError(f"Non-positive axis norm for parabola {p}")
    return 4 * d ** 4 / n ** 3


def curvature(p: BezierParabola, u: float) -> float:
    """Curvature |det(P', P'')| / |P'|^3 at parameter u."""
    d1 = derivative(p, u)
    d2 = second_derivative(p)
    speed = d1.norm()
    if speed == 0:
        raise DegenerateParabolaError(f"Singular point at u={u} on {p}")
    return abs(d1.cross(d2)) / speed ** 3


def isotropic_params(p: BezierParabola) -> Tuple[complex, complex]:
    """
    Parameter values of the tangents with isotropic directions (1, +i) and (1, -i).

    u_plus = (y0 - y1 - (x0 - x1)i) / (y0 - 2y1 + y2 - (x0 - 2x1 + x2)i), and
    u_minus with the opposite signs of i; P'(u_plus) is proportional to (1, i).
    For real control points the two values are complex conjugates.
    """
    _require_parabola(p)
    a = axis_direction_raw(p)
    dx, dy = p.P0.x - p.P1.x, p.P0.y - p.P1.y
    u_plus = complex(dy, -dx) / complex(a.dy, -a.dx)
    u_minus = complex(dy, dx) / complex(a.dy, a.dx)
    return u_plus, u_minus


def _focus_numerators(x0: float, y0: float, x1: float, y1: float,
                      x2: float, y2: float) -> Tuple[float, float]:
    f1 = (x0 * x0 * x2 - x0 * x1 * x1 - 2 * x0 * x1 * x2 + x0 * x2 * x2 + 2 * x1 ** 3
          - x1 * x1 * x2 - x1 * y0 * y0
          - 2 * x1 * y0 * y1 + 4 * x1 * y0 * y2 + 2 * x1 * y1 * y1 - 2 * x1 * y1 * y2
          - x1 * y2 * y2
          + x0 * (y1 - y2) ** 2 + x1 * (y0 - y2) ** 2 + x2 * (y0 - y1) ** 2)
    f2 = (-x0 * x0 * y1 - 2 * x0 * x1 * y1 + 4 * x0 * x2 * y1 + 2 * x1 * x1 * y1
          - 2 * x1 * x2 * y1 - x2 * x2 * y1
          + y0 * y0 * y2 - y0 * y1 * y1 - 2 * y0 * y1 * y2 + y0 * y2 * y2 + 2 * y1 ** 3
          - y1 * y1 * y2
          + y0 * (x1 - x2) ** 2 + y1 * (x0 - x2) ** 2 + y2 * (x0 - x1) ** 2)
    return f1, f2


def focus(p: BezierParabola) -> Point2:
    """
    Focal point, the intersection of the two isotropic tangents.

    F = (f1, f2) / ((x0 - 2x1 + x2)^2 + (y0 - 2y1 + y2)^2) with the cubic
    numerators f1, f2. The formula is translation equivariant, so it is
    evaluated with P0 moved to the origin.
    """
    _require_parabola(p)
    d1, d2 = p.P1 - p.P0, p.P2 - p.P0
    a = axis_direction_raw(p)
    denominator = a.dot(a)
    f1, f2 = _focus_numerators(0.0, 0.0, d1.dx, d1.dy, d2.dx, d2.dy)
    return Point2(p.P0.x + f1 / denominator, p.P0.y + f2 / denominator)


def directrix(p: BezierParabola) -> Line2:
    """
    Directrix: perpendicular to the axis at distance rho/2 from the vertex,
    on the side opposite to the focus.
    """
    a = axis_direction(p)
    unit = a.to_array() / a.norm()
    half_rho = 0.5 * math.sqrt(squared_parameter(p))
    anchor = vertex(p).to_array() - half_rho * unit
    return Line2(Point2.from_array(anchor), Vec2(-unit[1], unit[0]))


def subcurve(p: BezierParabola, u0: float, u1: float) -> BezierParabola:
    """
    Control points of the arc u in [u0, u1], reparametrized to [0, 1].

    The middle control point is the blossom value P[u0, u1].
    """
    p0, p1, p2 = p.control_array()
    middle = ((1 - u0) * (1 - u1) * p0 + ((1 - u0) * u1 + u0 * (1 - u1)) * p1
              + u0 * u1 * p2)
    return BezierParabola(evaluate(p, u0), Point2.from_array(middle), evaluate(p, u1))
