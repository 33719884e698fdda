"""
Focal triangles of exparabolas.

The three exparabolas whose axes pass through a point X have parameters
u = t0, v = t1, w = t2 (the roots of the axis cubic f). Their foci F_B, F_C,
F_A form the X-focal triangle, whose orthocenter is X and whose
circumcircle is the circumcircle of the source triangle.

Per-triangle formulas are evaluated in the canonical frame A = (0, 0),
B = (c, 0), C = (c1, c2) and mapped back by the frame's rigid motion.
"""

from dataclasses import dataclass
import logging
import math
from typing import Dict, List, Sequence, Tuple, Union

import numpy as np

from exparabola_geom.core_geometry import (
    CanonicalFrame,
    Homogeneous3,
    Point2,
    Triangle,
    Vec2,
    admissible,
    bary_to_cartesian,
    centers,
    steiner_residual,
)
from exparabola_geom.cubic_roots import (
    CubicCoeffs,
    CubicRoots,
    RootKind,
    axis_cubic_coeffs,
    check_interlacing,
    max_exparabola_roots,
    solve_cubic,
)
from exparabola_geom.errors import (
    CoincidentRootsError,
    NonAdmissiblePointError,
    NumericalError,
)
from exparabola_geom.exparabola import (
    Exparabola,
    cevian_point,
    check_parameter,
    make_exparabola,
    tangency_points,
)
from exparabola_geom.parabola_metrics import axis_direction, vertex

logger = logging.getLogger(__name__)

# roots closer than this (relative to max(1, |t|)) describe the same exparabola
COINCIDENCE_TOLERANCE = 1e-10
# a real root this close to 0 or 1 is an exparabola degenerating through a vertex
BOUNDARY_TOLERANCE = 1e-9

Scalar = Union[float, complex]


@dataclass(frozen=True)
class FocalResult:
    """
    Focal triangle of a triangle with respect to a point X.

    Attributes:
        foci: (F_A, F_B, F_C), real parts when the roots are complex
        roots: Roots of the axis cubic
        all_real: Whether the three exparabolas are real
        orthocenter_residual: |H(F_A F_B F_C) - X| in length units
        max_imaginary: Largest imaginary focus coordinate (0 for real roots)
        params: Parameters (w, u, v) feeding F_A, F_B, F_C; complex or inf
        x_point: X in Cartesian coordinates
        coefficients: Axis cubic the roots were solved from
    """
    foci: Tuple[Point2, Point2, Point2]
    roots: CubicRoots
    all_real: bool
    orthocenter_residual: float
    max_imaginary: float
    params: Tuple[complex, complex, complex]
    x_point: Point2
    coefficients: CubicCoeffs

    def triangle(self) -> Triangle:
        return Triangle(*self.foci)

    def to_dict(self) -> Dict[str, object]:
        def param(z: complex) -> object:
            if math.isinf(z.real):
                return None
            return z.real if z.imag == 0 else [z.real, z.imag]

        return {
            "foci": {label: list(p.to_tuple()) for label, p in zip("ABC", self.foci)},
            "roots": self.roots.to_dict(),
            "all_real": self.all_real,
            "orthocenter_residual": self.orthocenter_residual,
            "max_imaginary": self.max_imaginary,
            "params": {label: param(z) for label, z in zip("wuv", self.params)},
            "x_point": list(self.x_point.to_tuple()),
        }


@dataclass(frozen=True)
class SteinerInscribed:
    """
    Triangle X1 X2 X3 of cevian points of the max-exparabolas.

    X1 belongs to the root t2, X2 to t0 and X3 to t1; all three lie on the
    Steiner circumellipse.
    """
    X1: Point2
    X2: Point2
    X3: Point2
    coordinates: Tuple[Homogeneous3, Homogeneous3, Homogeneous3]
    concurrency: Tuple[float, float, float]

    def points(self) -> Tuple[Point2, Point2, Point2]:
        return (self.X1, self.X2, self.X3)


def _focus_local(frame: CanonicalFrame, t: Scalar) -> np.ndarray:
    """F(t) = c t / D (c1^2 + c2^2 - c c1 (1-t), -c c2 (1-t)) in the canonical frame."""
    c, c1, c2 = frame.c, frame.c1, frame.c2
    if math.isinf(complex(t).real):
        # the exparabola degenerates towards C as t -> infinity
        return np.array([c1, c2], dtype=complex)
    s = 1 - t
    denominator = c * c * s * s - 2 * c * c1 * s + c1 * c1 + c2 * c2
    factor = c * t / denominator
    return np.array([factor * (c1 * c1 + c2 * c2 - c * c1 * s), factor * (-c * c2 * s)],
                    dtype=complex)


def _axis_local(frame: CanonicalFrame, t: float) -> np.ndarray:
    return np.array([frame.c * (t - 1) + frame.c1, frame.c2])


def focus_closed_form(tri: Triangle, t: float) -> Point2:
    """
    Focus of the exparabola with parameter t from the canonical-frame formula.

    Independent of the control-point focus formula; the two agree to rounding.
    """
    t = check_parameter(t)
    frame = tri.canonical_frame()
    return Point2.from_array(frame.to_world(_focus_local(frame, t)).real)


def axis_direction_closed_form(tri: Triangle, t: float) -> Vec2:
    """Axis direction (c(t-1) + c1, c2) rotated back to world coordinates."""
    t = check_parameter(t)
    frame = tri.canonical_frame()
    return Vec2.from_array(frame.rotate_to_world(_axis_local(frame, t)))


def focus_cross_check(tri: Triangle, t: float) -> float:
    """Distance between the two focus formulas, relative to the circumradius."""
    closed = focus_closed_form(tri, t)
    from_curve = make_exparabola(tri, t).focus
    return closed.distance_to(from_curve) / centers(tri).R


def x_exparabolas(tri: Triangle, X: Homogeneous3) -> Tuple[Exparabola, Exparabola, Exparabola]:
    """
    The three exparabolas whose axes pass through X.

    Args:
        tri: Triangle
        X: Admissible point (pairwise coordinate sums of one sign)

    Returns:
        Exparabolas for the roots t0 < 0 < t1 < 1 < t2 of the axis cubic,
        opposite B, C and A in that order

    Raises:
        NonAdmissiblePointError: if X is not admissible; use focal_triangle,
            which carries complex roots through
        NumericalError: if the roots do not interlace
    """
    if not admissible(X):
        raise NonAdmissiblePointError(
            f"X = {X} is not admissible for {tri}; the exparabolas are not all real "
            f"(focal_triangle handles this case)")
    roots = solve_cubic(axis_cubic_coeffs(tri, X))
    if roots.kind is not RootKind.THREE_REAL or not check_interlacing(roots.reals):
        raise NumericalError(f"Axis cubic roots {roots.all_roots()} for admissible X = {X} "
                             f"do not satisfy t0 < 0 < t1 < 1 < t2")
    if roots.clustered:
        logger.warning("Clustered axis-cubic roots %s for X = %s", roots.reals, X)
    return tuple(make_exparabola(tri, t) for t in roots.reals)


def _labeled_params(roots: CubicRoots) -> Tuple[complex, complex, complex]:
    """Order the roots as (u, v, w), the parameters of F_B, F_C, F_A."""
    found = roots.all_roots()
    if roots.quadratic_fallback:
        found.append(complex(math.inf, 0.0))
    if len(found) != 3:
        raise NumericalError(f"Expected three roots, got {found}")
    return (found[0], found[1], found[2])


def _check_distinct(params: Sequence[complex], clustered: bool) -> None:
    if clustered:
        raise CoincidentRootsError(
            f"Axis cubic has a multiple root {list(params)}; two exparabolas coincide")
    for i in range(3):
        for j in range(i + 1, 3):
            p, q = params[i], params[j]
            if math.isinf(p.real) or math.isinf(q.real):
                continue
            if abs(p - q) <= COINCIDENCE_TOLERANCE * max(1.0, abs(p), abs(q)):
                raise CoincidentRootsError(
                    f"Roots {p} and {q} coincide; the focal triangle is undefined")


def focal_triangle(tri: Triangle, X: Homogeneous3) -> FocalResult:
    """
    Focal triangle of tri with respect to X.

    For complex roots the focus formula is evaluated in complex arithmetic;
    the real parts are returned and the largest imaginary part is reported.
    The orthocenter residual is then taken from F_A + F_B + F_C - 2O, which
    is the orthocenter of any triangle inscribed in the circle about O.

    Raises:
        CoincidentRootsError: if two roots of the axis cubic coincide
        PointAtInfinityError: if X is a point at infinity
    """
    x_point = bary_to_cartesian(tri, X)
    coeffs = axis_cubic_coeffs(tri, X)
    roots = solve_cubic(coeffs)
    u, v, w = _labeled_params(roots)
    _check_distinct((u, v, w), roots.clustered)

    frame = tri.canonical_frame()
    local = np.array([_focus_local(frame, p) for p in (w, u, v)])
    world = frame.to_world(local)
    max_imaginary = float(np.max(np.abs(world.imag)))
    foci = tuple(Point2.from_array(f) for f in world.real)
    all_real = roots.kind is RootKind.THREE_REAL

    source = centers(tri)
    if all_real:
        orthocenter = centers(Triangle(*foci)).H
    else:
        total = world.sum(axis=0).real
        orthocenter = Point2.from_array(total - 2 * source.O.to_array())
        logger.info("Complex roots for X = %s: focus imaginary parts up to %.3g",
                    X, max_imaginary)
    residual = orthocenter.distance_to(x_point)

    logger.debug("Focal triangle for X = %s: params %s, orthocenter residual %.3g",
                 X, (u, v, w), residual)
    return FocalResult(
        foci=foci,
        roots=roots,
        all_real=all_real,
        orthocenter_residual=residual,
        max_imaginary=max_imaginary,
        params=(w, u, v),
        x_point=x_point,
        coefficients=coeffs,
    )


def boundary_roots(roots: CubicRoots, tol: float = BOUNDARY_TOLERANCE) -> List[float]:
    """
    Real roots within tol of 0 or 1.

    The axis cubic has such a root exactly when X lies on a side line of the
    anticomplementary triangle (x1 + x2 = 0 gives t = 0, x0 + x2 = 0 gives
    t = 1). The matching exparabola collapses through a vertex; its focus is
    that vertex.
    """
    return [t for t in roots.reals if abs(t) <= tol or abs(t - 1) <= tol]


def h_invariant(tri: Triangle, u: float, v: float, w: float) -> float:
    """
    Perpendicularity condition of the axis of p_A and the line F_B F_C.

    h = c^2((a^2+b^2)c^2 - (a-b)^2(a+b)^2) uvw + a^2c^2(a^2-b^2-c^2)(uv+vw+wu)
        - a^2c^2(a^2+b^2-c^2)(u+v+w) + a^2((b^2+c^2)a^2 - (b-c)^2(b+c)^2),

    returned divided by L^6 (1+|u|)(1+|v|)(1+|w|) with L the longest side.
    """
    u, v, w = (check_parameter(x) for x in (u, v, w))
    a2, b2, c2 = tri.side_lengths_squared()
    e3 = u * v * w
    e2 = u * v + v * w + w * u
    e1 = u + v + w
    h = (c2 * ((a2 + b2) * c2 - (a2 - b2) ** 2) * e3
         + a2 * c2 * (a2 - b2 - c2) * e2
         - a2 * c2 * (a2 + b2 - c2) * e1
         + a2 * ((b2 + c2) * a2 - (b2 - c2) ** 2))
    longest = max(a2, b2, c2)
    return h / (longest ** 3 * (1 + abs(u)) * (1 + abs(v)) * (1 + abs(w)))


def perpendicularity_check(tri: Triangle, u: float, v: float,
                           w: float) -> Tuple[float, float, float]:
    """
    det(a_A, F_B - F_C), det(a_B, F_C - F_A), det(a_C, F_A - F_B).

    Each value is divided by |a| R. The three vanish simultaneously.
    """
    u, v, w = (check_parameter(x) for x in (u, v, w))
    frame = tri.canonical_frame()
    radius = centers(tri).R
    focus = {label: _focus_local(frame, t).real for label, t in zip("ABC", (w, u, v))}
    axis = {label: _axis_local(frame, t) for label, t in zip("ABC", (w, u, v))}

    def residual(label: str, first: str, second: str) -> float:
        a = axis[label]
        d = focus[first] - focus[second]
        return float((a[0] * d[1] - a[1] * d[0]) / (np.linalg.norm(a) * radius))

    return (residual("A", "B", "C"), residual("B", "C", "A"), residual("C", "A", "B"))


def root_symmetric_functions(tri: Triangle, X: Homogeneous3) -> Tuple[float, float, float]:
    """
    uvw, uv + vw + wu and u + v + w of the axis-cubic roots, in closed form.

        uvw          = -a^2 (x1 + x2) / (c^2 (x0 + x1))
        uv + vw + wu = -(a^2 (x1 + 2x2) + (b^2 - c^2) x0) / (c^2 (x0 + x1))
        u + v + w    =  (c^2 (2x0 + x1) + (b^2 - a^2) x2) / (c^2 (x0 + x1))
    """
    x0, x1, x2 = X.normalized().as_tuple()
    a2, b2, c2 = tri.side_lengths_squared()
    denominator = c2 * (x0 + x1)
    if denominator == 0:
        raise NumericalError(f"x0 + x1 = 0 for X = {X}: the axis cubic is not cubic")
    return (-a2 * (x1 + x2) / denominator,
            -(a2 * (x1 + 2 * x2) + (b2 - c2) * x0) / denominator,
            (c2 * (2 * x0 + x1) + (b2 - a2) * x2) / denominator)


def axis_incidence_residual(exp: Exparabola, point: Point2) -> float:
    """|det(V - X, a)| / (|a| R): distance of X from the axis relative to the circumradius."""
    a = axis_direction(exp.curve)
    d = vertex(exp.curve) - point
    return abs(d.cross(a)) / (a.norm() * centers(exp.tri).R)


def altitude_residuals(result: FocalResult,
                       exps: Sequence[Exparabola]) -> Tuple[float, float, float]:
    """
    How far the axes of the exparabolas (in root order t0, t1, t2) are from
    being the altitudes of the focal triangle from F_B, F_C, F_A.

    Each value is the larger of the focal vertex's distance from the axis and
    the normalized determinant of the axis with the opposite side.
    """
    f_a, f_b, f_c = result.foci
    radius = centers(exps[0].tri).R
    pairs = ((f_b, (f_c, f_a)), (f_c, (f_a, f_b)), (f_a, (f_b, f_c)))
    residuals: List[float] = []
    for exp, (apex, (p, q)) in zip(exps, pairs):
        a = axis_direction(exp.curve)
        through = abs((apex - vertex(exp.curve)).cross(a)) / (a.norm() * radius)
        side = q - p
        perpendicular = abs(a.dot(side)) / (a.norm() * side.norm())
        residuals.append(max(through, perpendicular))
    return (residuals[0], residuals[1], residuals[2])


def euler_line_residual(tri: Triangle, result: FocalResult) -> float:
    """
    Largest distance of the focal triangle's O, G, H from the line O G of
    tri, relative to R. For an equilateral tri the distance from O is used.
    """
    source = centers(tri)
    target = centers(result.triangle())
    points = (target.O, target.G, target.H)
    line = source.G - source.O
    if line.norm() <= 1e-12 * source.R:
        return max(p.distance_to(source.O) for p in points) / source.R
    return max(abs(line.cross(p - source.O)) / line.norm() for p in points) / source.R


def _cevian_direction(tri: Triangle, apex: Point2, h: Homogeneous3) -> np.ndarray:
    """Direction from apex towards the point with homogeneous coordinates h."""
    weights = h.to_array()
    return sum(weight * (p.to_array() - apex.to_array())
               for weight, p in zip(weights, tri.vertices()))


def cevian_concurrency_residual(tri: Triangle, t: float) -> float:
    """
    Check that A A0, B B2 and C C1 meet at the cevian point of t.

    Intersects A A0 with C C1 and returns the larger of the intersection's
    distance from B B2 and from the Cartesian cevian point, relative to R.
    """
    a0, b2, c1 = tangency_points(t)
    da = _cevian_direction(tri, tri.A, a0)
    db = _cevian_direction(tri, tri.B, b2)
    dc = _cevian_direction(tri, tri.C, c1)
    system = np.column_stack([da, -dc])
    try:
        s, _ = np.linalg.solve(system, tri.C.to_array() - tri.A.to_array())
    except np.linalg.LinAlgError as e:
        raise NumericalError(f"Cevians A A0 and C C1 are parallel for t={t}") from e
    meet = tri.A.to_array() + s * da
    offset = meet - tri.B.to_array()
    off_line = abs(db[0] * offset[1] - db[1] * offset[0]) / np.linalg.norm(db)
    expected = bary_to_cartesian(tri, cevian_point(t)).to_array()
    radius = centers(tri).R
    return float(max(off_line, np.linalg.norm(meet - expected)) / radius)


def steiner_inscribed_triangle(tri: Triangle) -> SteinerInscribed:
    """
    Cevian points X1, X2, X3 of the max-exparabolas with roots t2, t0, t1.

    Raises:
        NumericalError: if a cevian triple fails to meet within 1e-9 R
    """
    t0, t1, t2 = max_exparabola_roots(tri)
    ordered = (t2, t0, t1)
    coordinates = tuple(cevian_point(t) for t in ordered)
    concurrency = tuple(cevian_concurrency_residual(tri, t) for t in ordered)
    if max(concurrency) > 1e-9:
        raise NumericalError(f"Cevians of {tri} fail to concur: residuals {concurrency}")
    for h in coordinates:
        logger.debug("Cevian point %s, Steiner residual %.3g", h, steiner_residual(h))
    x1, x2, x3 = (bary_to_cartesian(tri, h) for h in coordinates)
    return SteinerInscribed(X1=x1, X2=x2, X3=x3, coordinates=coordinates,
                            concurrency=concurrency)
