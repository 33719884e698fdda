"""
Tests for quadratic Bezier parabolas: evaluation, axis, vertex, focus, directrix.
"""

import math

import numpy as np
import pytest

from exparabola_geom.core_geometry import Point2, Vec2
from exparabola_geom.errors import DegenerateParabolaError
from exparabola_geom.parabola_metrics import (
    BezierParabola,
    axis_direction,
    curvature,
    de_casteljau,
    derivative,
    directrix,
    evaluate,
    focus,
    is_degenerate,
    isotropic_params,
    squared_parameter,
    subcurve,
    vertex,
    vertex_param,
)

# y = x^2 for u in R
CANONICAL = BezierParabola(Point2(-1, 1), Point2(0, -1), Point2(1, 1))


def random_parabolas(count: int, seed: int = 0):
    rng = np.random.RandomState(seed)
    found = []
    while len(found) < count:
        p = BezierParabola(*(Point2.from_array(q) for q in rng.uniform(-3, 3, size=(3, 2))))
        # well-conditioned control nets only
        if abs((p.P1 - p.P0).cross(p.P2 - p.P0)) > 0.1 * p.diameter() ** 2:
            found.append(p)
    return found


def transformed(p: BezierParabola, angle: float, shift: Vec2) -> BezierParabola:
    def move(q: Point2) -> Point2:
        v = Vec2(q.x, q.y).rotated(angle)
        return Point2(v.dx + shift.dx, v.dy + shift.dy)
    return BezierParabola(move(p.P0), move(p.P1), move(p.P2))


def test_canonical_parabola():
    """The control points (-1, 1), (0, -1), (1, 1) describe y = x^2."""
    print("Testing canonical parabola y = x^2...")

    assert evaluate(CANONICAL, 0.0) == CANONICAL.P0
    assert evaluate(CANONICAL, 1.0) == CANONICAL.P2
    for u in np.linspace(-3, 3, 13):
        p = evaluate(CANONICAL, u)
        assert p.y == pytest.approx(p.x ** 2, abs=1e-12)

    a = axis_direction(CANONICAL)
    assert (a.dx, a.dy) == (0.0, 4.0)
    assert vertex_param(CANONICAL) == pytest.approx(0.5)
    assert vertex(CANONICAL).distance_to(Point2(0, 0)) < 1e-13
    assert squared_parameter(CANONICAL) == pytest.approx(0.25, abs=1e-13)
    assert focus(CANONICAL).distance_to(Point2(0, 0.25)) < 1e-13

    d = directrix(CANONICAL)
    assert d.signed_distance(Point2(0, -0.25)) == pytest.approx(0.0, abs=1e-13)
    assert abs(d.direction.dy) < 1e-15

    print("✓ Focus (0, 1/4), vertex (0, 0), rho^2 = 1/4")


def test_midpoint_and_de_casteljau():
    p = random_parabolas(1, seed=5)[0]
    mid = evaluate(p, 0.5)
    expected = (p.P0.to_array() + 2 * p.P1.to_array() + p.P2.to_array()) / 4
    assert np.allclose(mid.to_array(), expected, atol=1e-14)

    for u in (-1.5, 0.2, 0.7, 2.5):
        q0, q1, point = de_casteljau(p, u)
        assert point.distance_to(evaluate(p, u)) < 1e-13 * max(1.0, u * u) * p.diameter()
        # Q0 Q1 is tangent at P(u)
        assert abs((q1 - q0).cross(derivative(p, u))) < 1e-12 * max(1.0, u * u) * p.diameter() ** 2


def test_degenerate_parabola_rejected():
    line = BezierParabola(Point2(0, 0), Point2(1, 1), Point2(2, 2))
    assert is_degenerate(line)
    for fn in (axis_direction, vertex, squared_parameter, focus, directrix, isotropic_params):
        with pytest.raises(DegenerateParabolaError):
            fn(line)


def test_vertex_tangent_is_perpendicular_to_axis():
    print("Testing vertex orthogonality on random parabolas...")

    for p in random_parabolas(1000):
        a = axis_direction(p)
        tangent = derivative(p, vertex_param(p))
        assert abs(a.dot(tangent)) < 1e-10 * a.norm() * max(tangent.norm(), a.norm())

    print("✓ Tangent at the vertex is perpendicular to the axis")


def test_reversal_symmetry():
    for p in random_parabolas(50, seed=2):
        q = p.reversed()
        assert vertex_param(q) == pytest.approx(1 - vertex_param(p), abs=1e-10)
        assert vertex(q).distance_to(vertex(p)) < 1e-10 * p.diameter()
        assert focus(q).distance_to(focus(p)) < 1e-10 * p.diameter()
        assert squared_parameter(q) == pytest.approx(squared_parameter(p), rel=1e-10)


def test_squared_parameter_matches_curvature():
    print("Testing rho^2 against curvature at the vertex...")

    worst = 0.0
    for p in random_parabolas(1000, seed=1):
        rho2 = squared_parameter(p)
        kappa = curvature(p, vertex_param(p))
        worst = max(worst, abs(rho2 * kappa * kappa - 1))
    print(f"✓ Max relative deviation {worst:.3g}")
    assert worst < 1e-10


def test_focus_vertex_distance_and_directrix():
    print("Testing focus-directrix property...")

    for p in random_parabolas(1000, seed=4):
        f = focus(p)
        rho = math.sqrt(squared_parameter(p))
        assert f.distance_to(vertex(p)) == pytest.approx(rho / 2, rel=1e-10)

        line = directrix(p)
        for u in (-2, -1, 0, 0.5, 1, 2):
            q = evaluate(p, u)
            gap = abs(q.distance_to(f) - line.distance_to(q))
            assert gap < 1e-10 * max(1.0, q.distance_to(f))

    print("✓ Points are equidistant from focus and directrix")


def test_isotropic_params():
    print("Testing isotropic tangent parameters...")

    for p in random_parabolas(100, seed=6):
        u_plus, u_minus = isotropic_params(p)
        assert u_minus == pytest.approx(u_plus.conjugate(), rel=1e-12, abs=1e-12)

        # the tangent at u_plus points along (1, i)
        a = axis_direction(p)
        d = p.P1 - p.P0
        tx = 2 * a.dx * u_plus + 2 * d.dx
        ty = 2 * a.dy * u_plus + 2 * d.dy
        assert abs(ty - 1j * tx) < 1e-12 * max(abs(tx), abs(ty))

    print("✓ Isotropic parameters are conjugate with tangents along (1, +i)")


def test_mirrored_parabola_swaps_isotropic_params():
    mirrored = BezierParabola(*(Point2(-q.x, q.y) for q in
                                (CANONICAL.P0, CANONICAL.P1, CANONICAL.P2)))
    u_plus, u_minus = isotropic_params(CANONICAL)
    m_plus, m_minus = isotropic_params(mirrored)
    assert m_plus == pytest.approx(u_minus)
    assert m_minus == pytest.approx(u_plus)


def test_equivariance_under_isometries():
    print("Testing equivariance under rigid motions...")

    rng = np.random.RandomState(9)
    for p in random_parabolas(100, seed=7):
        angle = rng.uniform(0, 2 * math.pi)
        shift = Vec2(*rng.uniform(-10, 10, size=2))
        q = transformed(p, angle, shift)

        def move(point: Point2) -> Point2:
            v = Vec2(point.x, point.y).rotated(angle)
            return Point2(v.dx + shift.dx, v.dy + shift.dy)

        scale = p.diameter() + 10
        assert focus(q).distance_to(move(focus(p))) < 1e-10 * scale
        assert vertex(q).distance_to(move(vertex(p))) < 1e-10 * scale
        a, b = axis_direction(p).rotated(angle), axis_direction(q)
        assert math.hypot(a.dx - b.dx, a.dy - b.dy) < 1e-10 * a.norm()
        assert squared_parameter(q) == pytest.approx(squared_parameter(p), rel=1e-10)

    print("✓ Focus, vertex, axis and rho^2 are equivariant")


def test_scaling_scales_squared_parameter():
    s = 3.0
    scaled = BezierParabola(*(Point2(s * q.x, s * q.y) for q in
                              (CANONICAL.P0, CANONICAL.P1, CANONICAL.P2)))
    assert squared_parameter(scaled) == pytest.approx(s * s * squared_parameter(CANONICAL))


def test_subcurve_traces_same_parabola():
    p = random_parabolas(1, seed=8)[0]
    piece = subcurve(p, -0.5, 1.75)
    assert piece.P0.distance_to(evaluate(p, -0.5)) < 1e-13
    assert piece.P2.distance_to(evaluate(p, 1.75)) < 1e-12
    for s in (0.1, 0.4, 0.9):
        u = -0.5 + s * 2.25
        assert evaluate(piece, s).distance_to(evaluate(p, u)) < 1e-12 * p.diameter()
