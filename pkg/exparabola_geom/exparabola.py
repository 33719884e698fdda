"""
Exparabolas: parabolas tangent to the three side lines of a triangle.

An exparabola is fixed by one real parameter t (t != 0, 1). Its points of
tangency have homogeneous barycentric coordinates

    A0 = (0, 1, t-1) on BC,   B2 = (1, 0, -t) on CA,   C1 = (1-t, t, 0) on AB,

and the curve is the quadratic Bezier curve with control points B2, C, A0.
The de Casteljau construction at u = t passes through A and B, which is why
the curve touches AB at C1.
"""

from dataclasses import dataclass
import logging
import math
from typing import Dict, Tuple

from exparabola_geom.core_geometry import (
    Homogeneous3,
    Point2,
    Triangle,
    Vertex,
    affine_ratio,
    bary_to_cartesian,
)
from exparabola_geom.errors import GeometryError, InvalidParameterError
from exparabola_geom.parabola_metrics import BezierParabola, focus, squared_parameter

logger = logging.getLogger(__name__)

# t closer than this to 0 or 1 collapses the curve through a vertex
PARAMETER_TOLERANCE = 1e-12


def check_parameter(t: float, tol: float = PARAMETER_TOLERANCE) -> float:
    """
    Validate a tangency parameter.

    Raises:
        InvalidParameterError: if t is not finite or lies within tol of 0 or 1
    """
    if not math.isfinite(t):
        raise InvalidParameterError(f"Tangency parameter must be finite, got {t}")
    if abs(t) <= tol or abs(t - 1) <= tol:
        raise InvalidParameterError(
            f"Tangency parameter t={t!r} too close to 0 or 1; the exparabola degenerates")
    return float(t)


@dataclass(frozen=True)
class Exparabola:
    """
    An exparabola of a triangle.

    Attributes:
        tri: The triangle
        t: Tangency parameter
        curve: Bezier parabola with control points B2, C, A0
    """
    tri: Triangle
    t: float
    curve: BezierParabola

    @property
    def opposite(self) -> Vertex:
        """Vertex whose opposite side is touched in an interior point."""
        return opposite_vertex(self.t)

    @property
    def focus(self) -> Point2:
        return focus(self.curve)

    @property
    def squared_parameter(self) -> float:
        return squared_parameter(self.curve)


@dataclass(frozen=True)
class TangencyGrid:
    """
    Points of tangency of three exparabolas with parameters t0, t1, t2.

    Coordinates are stored homogeneous, exactly as they arise from the roots.
    The exparabola with parameter t1 touches at A0, B2, C1, the one with t2
    at A1, B0, C2 and the one with t0 at A2, B1, C0.
    """
    A0: Homogeneous3
    A1: Homogeneous3
    A2: Homogeneous3
    B0: Homogeneous3
    B1: Homogeneous3
    B2: Homogeneous3
    C0: Homogeneous3
    C1: Homogeneous3
    C2: Homogeneous3

    def points_for(self, index: int) -> Tuple[Homogeneous3, Homogeneous3, Homogeneous3]:
        """Tangency points (on BC, CA, AB) of the exparabola with parameter t_index."""
        table = {
            0: (self.A2, self.B1, self.C0),
            1: (self.A0, self.B2, self.C1),
            2: (self.A1, self.B0, self.C2),
        }
        if index not in table:
            raise GeometryError(f"Root index must be 0, 1 or 2, got {index}")
        return table[index]

    def as_dict(self) -> Dict[str, Tuple[float, float, float]]:
        names = ("A0", "A1", "A2", "B0", "B1", "B2", "C0", "C1", "C2")
        return {name: getattr(self, name).as_tuple() for name in names}


def tangency_points(t: float) -> Tuple[Homogeneous3, Homogeneous3, Homogeneous3]:
    """
    Points of tangency of the exparabola with parameter t.

    Returns:
        (A0, B2, C1) = ((0, 1, t-1), (1, 0, -t), (1-t, t, 0))
    """
    t = check_parameter(t)
    return (Homogeneous3(0.0, 1.0, t - 1),
            Homogeneous3(1.0, 0.0, -t),
            Homogeneous3(1 - t, t, 0.0))


def make_exparabola(tri: Triangle, t: float) -> Exparabola:
    """
    Build the exparabola of tri with parameter t.

    Args:
        tri: Triangle
        t: Tangency parameter, not 0 or 1

    Returns:
        Exparabola whose curve has control points (B2, C, A0) in Cartesian form
    """
    a0, b2, _ = tangency_points(t)
    curve = BezierParabola(bary_to_cartesian(tri, b2), tri.C, bary_to_cartesian(tri, a0))
    return Exparabola(tri=tri, t=float(t), curve=curve)


def cevian_point(t: float) -> Homogeneous3:
    """
    Common point X = (t-1, -t, t(1-t)) of the lines A A0, B B2 and C C1.

    X lies on the Steiner circumellipse; its coordinate sum -(t^2 - t + 1)
    never vanishes, so X is always a finite point.
    """
    t = check_parameter(t)
    return Homogeneous3(t - 1, -t, t * (1 - t))


def opposite_vertex(t: float) -> Vertex:
    """
    Vertex the exparabola is opposite to.

    C for 0 < t < 1 (C1 between A and B), B for t < 0 (B2 between C and A),
    A for t > 1 (A0 between B and C).
    """
    t = check_parameter(t)
    if t < 0:
        return Vertex.B
    if t < 1:
        return Vertex.C
    return Vertex.A


def tangency_grid(t0: float, t1: float, t2: float) -> TangencyGrid:
    """
    Nine tangency points of three exparabolas.

    Args:
        t0, t1, t2: Pairwise distinct parameters, none equal to 0 or 1

    Returns:
        TangencyGrid with A_i = (0, 1, t-1), B_i = (1, 0, -t), C_i = (1-t, t, 0)
        where A0, A1, A2 use t1, t2, t0; B0, B1, B2 use t2, t0, t1; C_i uses t_i
    """
    ts = [check_parameter(t) for t in (t0, t1, t2)]
    if len({ts[0], ts[1], ts[2]}) < 3:
        raise GeometryError(f"Tangency parameters must be pairwise distinct: {ts}")
    t0, t1, t2 = ts

    def on_bc(t: float) -> Homogeneous3:
        return Homogeneous3(0.0, 1.0, t - 1)

    def on_ca(t: float) -> Homogeneous3:
        return Homogeneous3(1.0, 0.0, -t)

    def on_ab(t: float) -> Homogeneous3:
        return Homogeneous3(1 - t, t, 0.0)

    return TangencyGrid(
        A0=on_bc(t1), A1=on_bc(t2), A2=on_bc(t0),
        B0=on_ca(t2), B1=on_ca(t0), B2=on_ca(t1),
        C0=on_ab(t0), C1=on_ab(t1), C2=on_ab(t2),
    )


def ceva_product(tri: Triangle, t: float) -> float:
    """Product <A, B; C1> <B, C; A0> <C, A; B2> of affine ratios, equal to 1."""
    a0, b2, c1 = (bary_to_cartesian(tri, h) for h in tangency_points(t))
    return (affine_ratio(tri.A, tri.B, c1) * affine_ratio(tri.B, tri.C, a0)
            * affine_ratio(tri.C, tri.A, b2))


def tangency_discriminant(exp: Exparabola, side: Vertex) -> float:
    """
    Tangency witness for the side line opposite a vertex.

    Signed distances d0, d1, d2 of the control points from the side line turn
    the restriction of the curve into the Bernstein quadratic
    (1-u)^2 d0 + 2(1-u)u d1 + u^2 d2. The line is tangent iff
    d1^2 - d0 d2 = 0; the value is returned relative to max |d_i|^2.
    """
    vertices = exp.tri.vertices()
    p = vertices[(int(side) + 1) % 3]
    q = vertices[(int(side) + 2) % 3]
    direction = q - p
    length = direction.norm()
    d0, d1, d2 = (direction.cross(cp - p) / length
                  for cp in (exp.curve.P0, exp.curve.P1, exp.curve.P2))
    scale = max(abs(d0), abs(d1), abs(d2))
    return (d1 * d1 - d0 * d2) / (scale * scale)


def squared_parameter_closed_form(tri: Triangle, t: float) -> float:
    """
    rho^2 of the exparabola with parameter t, from side data in the canonical frame.

    With A = (0, 0), B = (c, 0), C = (c1, c2):
    rho^2 = 4 c^4 c2^4 t^2 (t-1)^2 / ((c t + c1 - c)^2 + c2^2)^3.
    """
    t = check_parameter(t)
    frame = tri.canonical_frame()
    c, c1, c2 = frame.c, frame.c1, frame.c2
    denominator = (c * t + c1 - c) ** 2 + c2 * c2
    return 4 * c ** 4 * c2 ** 4 * t * t * (t - 1) ** 2 / denominator ** 3


def parameter_scale(tri: Triangle, t: float) -> float:
    """
    Distance from t to the nearest zero or pole of rho^2 in the complex t-plane.

    The zeros are t = 0 and t = 1, the poles t = (c - c1 +- i c2) / c. For flat
    triangles the poles approach the real axis, so rho^2 varies on the scale
    of c2 / c there.
    """
    frame = tri.canonical_frame()
    c, c1, c2 = frame.c, frame.c1, frame.c2
    to_pole = math.hypot(c * t + c1 - c, c2) / c
    return min(abs(t), abs(t - 1), to_pole)
