"""
Tests for points, triangles, barycentric coordinates and triangle centers.
"""

import math

import numpy as np
import pytest
from hypothesis import given, settings

from exparabola_geom.core_geometry import (
    Homogeneous3,
    Point2,
    Triangle,
    Vertex,
    admissible,
    affine_ratio,
    angle_cosine,
    anticomplementary_triangle,
    bary_to_cartesian,
    cartesian_to_bary,
    centers,
    side_lengths,
    steiner_circumellipse_points,
    steiner_residual,
)
from exparabola_geom.errors import (
    CollinearityError,
    DegenerateTriangleError,
    GeometryError,
    PointAtInfinityError,
)
from tests.strategies import triangles


def unit_circle_equilateral() -> Triangle:
    return Triangle.from_vertices([(math.cos(a), math.sin(a))
                                   for a in (math.pi / 2, math.pi / 2 + 2 * math.pi / 3,
                                             math.pi / 2 + 4 * math.pi / 3)])


def test_side_lengths():
    """Side lengths follow a = |BC|, b = |CA|, c = |AB|."""
    print("Testing side lengths...")

    a, b, c = side_lengths(Triangle.from_vertices([(0, 0), (1, 0), (0, 1)]))
    assert a == pytest.approx(math.sqrt(2))
    assert (b, c) == pytest.approx((1.0, 1.0))

    assert side_lengths(Triangle.from_vertices([(0, 0), (4, 0), (0, 3)])) == pytest.approx(
        (5.0, 3.0, 4.0))

    for length in side_lengths(unit_circle_equilateral()):
        assert length == pytest.approx(math.sqrt(3), rel=1e-12)

    print("✓ Side length tests passed")


def test_angle_cosine():
    print("Testing angle cosines...")

    eq = unit_circle_equilateral()
    for v in Vertex:
        assert angle_cosine(eq, v) == pytest.approx(0.5, abs=1e-12)

    right = Triangle.from_vertices([(0, 0), (4, 0), (0, 3)])
    assert angle_cosine(right, Vertex.A) == pytest.approx(0.0, abs=1e-15)
    assert angle_cosine(right, Vertex.B) == pytest.approx(0.8)

    print("✓ Angle cosine tests passed")


def test_centers_examples():
    """Centers of the equilateral and the unit right triangle."""
    print("Testing triangle centers...")

    c = centers(unit_circle_equilateral())
    for p in (c.G, c.O, c.H):
        assert p.distance_to(Point2(0.0, 0.0)) < 1e-12
    assert c.R == pytest.approx(1.0, rel=1e-12)

    c = centers(Triangle.from_vertices([(0, 0), (1, 0), (0, 1)]))
    assert c.O.distance_to(Point2(0.5, 0.5)) < 1e-15
    assert c.H.distance_to(Point2(0.0, 0.0)) < 1e-15
    assert c.R == pytest.approx(math.sqrt(2) / 2)

    print(f"✓ Right triangle: O={c.O}, H={c.H}, R={c.R:.6f}")


@settings(max_examples=200, deadline=None)
@given(tri=triangles())
def test_euler_collinearity(tri):
    c = centers(tri)
    assert c.euler_residual() < 1e-12 * max(c.R, 1.0) * tri.aspect_ratio() ** 2


def test_degenerate_triangle_rejected():
    print("Testing degenerate triangles...")

    with pytest.raises(DegenerateTriangleError):
        Triangle.from_vertices([(0, 0), (1, 1), (2, 2)])
    with pytest.raises(DegenerateTriangleError):
        Triangle.from_vertices([(0, 0), (0, 0), (1, 0)])
    with pytest.raises(GeometryError):
        Triangle.from_side_lengths(1, 2, 3)
    with pytest.raises(GeometryError):
        Triangle.from_vertices([(0, 0), (1, 0)])

    print("✓ Degenerate inputs rejected")


def test_from_side_lengths_canonical_placement():
    tri = Triangle.from_side_lengths(5, 3, 4)
    assert tri.A == Point2(0.0, 0.0)
    assert tri.B == Point2(4.0, 0.0)
    assert tri.C.y > 0
    assert side_lengths(tri) == pytest.approx((5.0, 3.0, 4.0), rel=1e-12)

    frame = tri.canonical_frame()
    assert (frame.c, frame.c1, frame.c2) == pytest.approx((4.0, 0.0, 3.0), abs=1e-12)


def test_canonical_frame_round_trip():
    tri = Triangle.from_vertices([(2.0, 1.0), (3.0, 4.0), (-1.0, 2.5)])
    frame = tri.canonical_frame()
    local = frame.to_local(tri.to_array())
    assert np.allclose(local[0], [0.0, 0.0], atol=1e-14)
    assert np.allclose(local[1], [frame.c, 0.0], atol=1e-14)
    assert np.allclose(local[2], [frame.c1, frame.c2], atol=1e-14)
    assert np.allclose(frame.to_world(local), tri.to_array(), atol=1e-14)


def test_barycentric_examples():
    print("Testing barycentric conversion...")

    tri = Triangle.from_vertices([(0, 0), (4, 0), (1, 3)])
    assert bary_to_cartesian(tri, Homogeneous3(1, 0, 0)) == tri.A
    g = bary_to_cartesian(tri, Homogeneous3(1, 1, 1))
    assert g.distance_to(centers(tri).G) < 1e-15
    mid = bary_to_cartesian(tri, Homogeneous3(0, 1, 1))
    assert mid.distance_to(Point2(2.5, 1.5)) < 1e-15

    back = cartesian_to_bary(tri, g)
    assert back.as_tuple() == pytest.approx((1 / 3, 1 / 3, 1 / 3), abs=1e-15)
    assert cartesian_to_bary(tri, tri.B).as_tuple() == pytest.approx((0, 1, 0), abs=1e-15)

    with pytest.raises(PointAtInfinityError):
        bary_to_cartesian(tri, Homogeneous3(1, -1, 0))

    print("✓ Barycentric conversion tests passed")


def test_barycentric_round_trip():
    rng = np.random.RandomState(3)
    tri = Triangle.from_vertices([(0.1, 0.2), (3.0, -1.0), (1.5, 2.0)])
    worst = 0.0
    for point in rng.uniform(-5, 5, size=(1000, 2)):
        p = Point2.from_array(point)
        q = bary_to_cartesian(tri, cartesian_to_bary(tri, p))
        worst = max(worst, p.distance_to(q))
    print(f"✓ Round trip of 1000 points, max error {worst:.3g}")
    assert worst < 1e-12 * 5


def test_homogeneous_rejects_zero_triple():
    with pytest.raises(GeometryError):
        Homogeneous3(0, 0, 0)
    assert Homogeneous3(1, 2, -3).is_at_infinity()
    assert Homogeneous3(2, 4, 6).is_proportional_to(Homogeneous3(1, 2, 3))


def test_affine_ratio():
    print("Testing affine ratios...")

    x, y = Point2(0, 0), Point2(3, 0)
    assert affine_ratio(x, y, Point2(1, 0)) == pytest.approx(0.5)
    assert affine_ratio(x, y, Point2(1.5, 0)) == pytest.approx(1.0)
    assert affine_ratio(x, y, x) == 0.0
    assert affine_ratio(x, y, Point2(6, 0)) == pytest.approx(-2.0)

    with pytest.raises(CollinearityError):
        affine_ratio(x, y, Point2(1, 1))
    with pytest.raises(CollinearityError):
        affine_ratio(x, y, y)

    print("✓ Affine ratio tests passed")


def test_affine_ratio_is_affine_invariant():
    rng = np.random.RandomState(11)
    for _ in range(50):
        s = rng.uniform(-2, 2)
        matrix = np.array([[rng.uniform(0.5, 2), rng.uniform(-1, 1)],
                           [0.0, rng.uniform(0.5, 2)]])
        shift = rng.uniform(-5, 5, size=2)
        x, y = np.array([0.0, 0.0]), np.array([1.0, 2.0])
        z = x + s * (y - x)
        mapped = [Point2.from_array(matrix @ p + shift) for p in (x, y, z)]
        expected = affine_ratio(Point2.from_array(x), Point2.from_array(y), Point2.from_array(z))
        assert affine_ratio(*mapped) == pytest.approx(expected, rel=1e-9, abs=1e-12)


def test_steiner_residual():
    print("Testing Steiner circumellipse residual...")

    assert steiner_residual(Homogeneous3(1, 0, 0)) == 0.0
    assert abs(steiner_residual(Homogeneous3(1, -2, -2))) < 1e-15
    assert steiner_residual(Homogeneous3(1, 1, 1)) == pytest.approx(1.0)

    for t in np.linspace(-10, 10, 81):
        if abs(t) < 1e-9 or abs(t - 1) < 1e-9:
            continue
        assert abs(steiner_residual(Homogeneous3(t - 1, -t, t * (1 - t)))) < 1e-12

    print("✓ Steiner residual tests passed")


def test_steiner_circumellipse_passes_through_vertices():
    tri = Triangle.from_vertices([(0, 0), (4, 0), (1, 3)])
    points = steiner_circumellipse_points(tri, count=12)
    for k, vertex in enumerate(tri.vertices()):
        assert points[4 * k].distance_to(vertex) < 1e-12
    for p in points:
        assert abs(steiner_residual(cartesian_to_bary(tri, p))) < 1e-12


def test_admissible():
    print("Testing admissibility...")

    assert admissible(Homogeneous3(1, 1, 1))
    assert admissible(Homogeneous3(1 / 3, 1 / 3, 1 / 3))
    assert not admissible(Homogeneous3(1, 1, -1))
    assert not admissible(Homogeneous3(3, -1, -1))
    assert not admissible(Homogeneous3(1, -1, 0))

    print("✓ Admissibility tests passed")


def test_anticomplementary_triangle():
    tri = Triangle.from_vertices([(0, 0), (4, 0), (1, 3)])
    anti = anticomplementary_triangle(tri)
    assert anti.A == Point2(5.0, 3.0)
    assert centers(anti).G.distance_to(centers(tri).G) < 1e-14
    assert abs(anti.signed_area()) == pytest.approx(4 * abs(tri.signed_area()))
