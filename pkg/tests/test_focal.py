"""
Tests for X-exparabolas and focal triangles.
"""

import math

import numpy as np
import pytest
from hypothesis import given, settings

from exparabola_geom.core_geometry import (
    Homogeneous3,
    Point2,
    Triangle,
    bary_to_cartesian,
    centers,
    steiner_residual,
)
from exparabola_geom.cubic_roots import (
    RootKind,
    axis_cubic_coeffs,
    max_exparabola_roots,
    solve_cubic,
)
from exparabola_geom.errors import CoincidentRootsError, NonAdmissiblePointError
from exparabola_geom.exparabola import cevian_point, make_exparabola
from exparabola_geom.focal import (
    _check_distinct,
    altitude_residuals,
    axis_direction_closed_form,
    axis_incidence_residual,
    boundary_roots,
    cevian_concurrency_residual,
    euler_line_residual,
    focal_triangle,
    focus_closed_form,
    focus_cross_check,
    h_invariant,
    perpendicularity_check,
    root_symmetric_functions,
    steiner_inscribed_triangle,
    x_exparabolas,
)
from exparabola_geom.parabola_metrics import axis_direction, vertex
from tests.strategies import admissible_points, parameters, triangles

EQUILATERAL = Triangle.from_vertices([(0, 0), (1, 0), (0.5, math.sqrt(3) / 2)])
SCALENE = Triangle.from_vertices([(0, 0), (4, 0), (1, 3)])
CENTROID = Homogeneous3(1, 1, 1)


def test_equilateral_focal_triangle():
    """The G-focal triangle of an equilateral triangle is its point reflection in O."""
    print("Testing equilateral focal triangle...")

    result = focal_triangle(EQUILATERAL, CENTROID)
    o = centers(EQUILATERAL).O
    assert result.all_real
    for focus_point, corner in zip(result.foci, EQUILATERAL.vertices()):
        antipode = Point2(2 * o.x - corner.x, 2 * o.y - corner.y)
        assert focus_point.distance_to(antipode) < 1e-13

    assert result.foci[2].distance_to(Point2(0.5, -math.sqrt(3) / 6)) < 1e-13
    assert result.orthocenter_residual < 1e-13
    assert result.max_imaginary == 0.0

    w, u, v = (z.real for z in result.params)
    assert (u, v, w) == pytest.approx((-1.0, 0.5, 2.0), abs=1e-12)

    print(f"✓ Foci {result.foci}")


def test_equilateral_axis_through_centroid():
    exps = x_exparabolas(EQUILATERAL, CENTROID)
    assert [e.t for e in exps] == pytest.approx([-1.0, 0.5, 2.0], abs=1e-12)

    middle = exps[1]
    a = axis_direction(middle.curve)
    assert abs(a.dx) < 1e-13 * a.norm()
    assert vertex(middle.curve).x == pytest.approx(0.5, abs=1e-13)


def test_x_exparabolas_at_centroid_are_max_exparabolas():
    exps = x_exparabolas(SCALENE, CENTROID)
    assert [e.t for e in exps] == pytest.approx(list(max_exparabola_roots(SCALENE)), rel=1e-12)
    assert [e.opposite.name for e in exps] == ["B", "C", "A"]


def test_non_admissible_point_rejected():
    with pytest.raises(NonAdmissiblePointError):
        x_exparabolas(SCALENE, Homogeneous3(3, -1, -1))


def test_complex_roots_are_reported():
    print("Testing a non-admissible X...")

    result = focal_triangle(SCALENE, Homogeneous3(3, -1, -1))
    assert not result.all_real
    assert result.roots.kind is RootKind.ONE_REAL_COMPLEX_PAIR
    assert result.max_imaginary > 0
    w, u, v = result.params
    assert u.imag == 0 and v.imag > 0 and w == v.conjugate()

    data = result.to_dict()
    assert data["all_real"] is False
    assert isinstance(data["params"]["v"], list)

    print(f"✓ Imaginary parts up to {result.max_imaginary:.3g}")


def test_quadratic_degeneration_puts_a_focus_at_c():
    # x0 + x1 = 0: one exparabola escapes to t = infinity
    result = focal_triangle(SCALENE, Homogeneous3(2, -2, 1))
    assert result.roots.quadratic_fallback
    assert math.isinf(result.params[0].real)
    assert result.foci[0].distance_to(SCALENE.C) < 1e-14
    assert result.to_dict()["params"]["w"] is None


def test_boundary_points_give_vertex_roots():
    print("Testing X on the anticomplementary side lines...")

    # x1 + x2 = 0: root t = 0, the focus collapses to A
    result = focal_triangle(SCALENE, Homogeneous3(1, 1, -1))
    assert result.all_real
    assert boundary_roots(result.roots) == pytest.approx([0.0], abs=1e-12)
    assert min(f.distance_to(SCALENE.A) for f in result.foci) < 1e-12

    # x0 + x2 = 0: root t = 1, the focus collapses to B
    result = focal_triangle(SCALENE, Homogeneous3(1, 2, -1))
    assert result.all_real
    assert boundary_roots(result.roots) == pytest.approx([1.0], abs=1e-12)
    assert min(f.distance_to(SCALENE.B) for f in result.foci) < 1e-12
    assert result.orthocenter_residual < 1e-9 * centers(SCALENE).R

    assert boundary_roots(focal_triangle(SCALENE, CENTROID).roots) == []

    print("✓ Boundary roots flagged")


def test_coincident_roots_rejected():
    with pytest.raises(CoincidentRootsError):
        _check_distinct((complex(0.5), complex(0.5 + 1e-13), complex(2.0)), clustered=False)
    with pytest.raises(CoincidentRootsError):
        _check_distinct((complex(-1.0), complex(0.5), complex(2.0)), clustered=True)
    _check_distinct((complex(-1.0), complex(0.5), complex(math.inf)), clustered=False)


def test_focus_formulas_agree():
    for t in (-3.0, -0.4, 0.3, 0.8, 1.5, 7.0):
        assert focus_cross_check(SCALENE, t) < 1e-12


def test_closed_form_axis_is_parallel_to_curve_axis():
    for t in (-3.0, -0.4, 0.3, 0.8, 1.5, 7.0):
        closed = axis_direction_closed_form(SCALENE, t)
        a = axis_direction(make_exparabola(SCALENE, t).curve)
        assert abs(closed.cross(a)) < 1e-12 * closed.norm() * a.norm()


@settings(max_examples=200, deadline=None)
@given(tri=triangles(), t=parameters())
def test_focus_formulas_agree_random(tri, t):
    assert focus_cross_check(tri, t) < 1e-10 * tri.aspect_ratio()


@settings(max_examples=200, deadline=None)
@given(tri=triangles(), X=admissible_points())
def test_axes_pass_through_x(tri, X):
    point = bary_to_cartesian(tri, X)
    for exp in x_exparabolas(tri, X):
        assert axis_incidence_residual(exp, point) < 1e-9 * tri.aspect_ratio()


@settings(max_examples=200, deadline=None)
@given(tri=triangles(), X=admissible_points())
def test_orthocenter_is_x(tri, X):
    c = centers(tri)
    result = focal_triangle(tri, X)
    assert result.all_real
    assert result.orthocenter_residual < 1e-9 * c.R * tri.aspect_ratio()
    for f in result.foci:
        assert abs(f.distance_to(c.O) - c.R) < 1e-10 * c.R * tri.aspect_ratio()


@settings(max_examples=200, deadline=None)
@given(tri=triangles(), X=admissible_points())
def test_h_vanishes_on_roots(tri, X):
    u, v, w = solve_cubic(axis_cubic_coeffs(tri, X)).reals
    assert abs(h_invariant(tri, u, v, w)) < 1e-9 * tri.aspect_ratio() ** 2
    assert max(abs(r) for r in perpendicularity_check(tri, u, v, w)) < 1e-9 * tri.aspect_ratio()

    e3, e2, e1 = root_symmetric_functions(tri, X)
    assert e3 == pytest.approx(u * v * w, rel=1e-9, abs=1e-12)
    assert e2 == pytest.approx(u * v + v * w + w * u, rel=1e-9, abs=1e-9)
    assert e1 == pytest.approx(u + v + w, rel=1e-9, abs=1e-9)


def test_h_is_nonzero_off_the_roots():
    print("Testing h on a non-root triple...")

    h = h_invariant(SCALENE, 0.5, 2.0, -1.0)
    assert h == pytest.approx(-96 / (18 ** 3 * 1.5 * 3 * 2))
    assert all(abs(r) > 1e-9 for r in perpendicularity_check(SCALENE, 0.5, 2.0, -1.0))

    assert abs(h_invariant(EQUILATERAL, -1.0, 0.5, 2.0)) < 1e-12
    assert max(abs(r) for r in perpendicularity_check(EQUILATERAL, -1.0, 0.5, 2.0)) < 1e-12

    print(f"✓ h = {h:.6g}")


@settings(max_examples=100, deadline=None)
@given(tri=triangles())
def test_axes_are_altitudes_of_focal_triangle(tri):
    result = focal_triangle(tri, CENTROID)
    exps = x_exparabolas(tri, CENTROID)
    assert max(altitude_residuals(result, exps)) < 1e-9
    assert euler_line_residual(tri, result) < 1e-9


def test_euler_line_of_equilateral():
    result = focal_triangle(EQUILATERAL, CENTROID)
    assert euler_line_residual(EQUILATERAL, result) < 1e-12


def test_steiner_inscribed_triangle_equilateral():
    print("Testing Steiner-inscribed triangle...")

    inscribed = steiner_inscribed_triangle(EQUILATERAL)
    assert inscribed.coordinates[2].is_proportional_to(Homogeneous3(-2, -2, 1), rtol=1e-12)
    assert inscribed.X3.distance_to(bary_to_cartesian(EQUILATERAL, cevian_point(0.5))) < 1e-14
    assert max(inscribed.concurrency) < 1e-12
    for h in inscribed.coordinates:
        assert abs(steiner_residual(h)) < 1e-12

    print(f"✓ X1, X2, X3 = {inscribed.points()}")


@settings(max_examples=200, deadline=None)
@given(tri=triangles())
def test_steiner_inscribed_triangle_random(tri):
    inscribed = steiner_inscribed_triangle(tri)
    for h in inscribed.coordinates:
        assert abs(steiner_residual(h)) < 1e-12
    assert max(inscribed.concurrency) < 1e-9


@settings(max_examples=200, deadline=None)
@given(tri=triangles(), t=parameters())
def test_cevians_concur(tri, t):
    assert cevian_concurrency_residual(tri, t) < 1e-9 * tri.aspect_ratio()


def test_focus_closed_form_equilateral():
    f = focus_closed_form(EQUILATERAL, 0.5)
    assert np.allclose(f.to_array(), [0.5, -math.sqrt(3) / 6], atol=1e-14)
