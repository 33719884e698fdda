"""
Tests for the iterated focal triangles and their limit hexagon.
"""

import math

import pytest
from hypothesis import given, settings

from exparabola_geom.core_geometry import Homogeneous3, Triangle
from exparabola_geom.errors import ConvergedError, GeometryError, IterationCapError
from exparabola_geom.iteration import (
    contraction_ratio,
    equilateral_deviation,
    hausdorff_distance,
    iter_focal_steps,
    iterate,
    limit_hexagon,
    parity_gaps,
)
from tests.strategies import triangles

EQUILATERAL = Triangle.from_vertices([(0, 0), (1, 0), (0.5, math.sqrt(3) / 2)])
SCALENE = Triangle.from_vertices([(0, 0), (4, 0), (1, 3)])


def test_equilateral_is_fixed():
    print("Testing equilateral input...")

    steps = iterate(EQUILATERAL, 4)
    assert len(steps) == 5
    for step in steps:
        assert step.equilateral_deviation < 1e-12
        assert step.G.distance_to(step.O) < 1e-12
        assert step.R == pytest.approx(steps[0].R, rel=1e-12)

    # the steps alternate between the triangle and its point reflection in O
    for corner, reflected in zip(steps[0].tri.vertices(), steps[1].tri.vertices()):
        assert reflected.distance_to(corner) == pytest.approx(2 * steps[0].R, rel=1e-12)
    for corner, again in zip(steps[0].tri.vertices(), steps[2].tri.vertices()):
        assert again.distance_to(corner) < 1e-12

    with pytest.raises(ConvergedError):
        contraction_ratio(steps[0], steps[1])

    print("✓ Every step is equilateral")


def test_equilateral_hexagon_after_two_steps():
    hexagon = limit_hexagon(EQUILATERAL)
    assert hexagon.steps == 2
    assert len(hexagon.vertices) == 6
    assert hexagon.gap_error < 1e-12
    assert hexagon.radius_error < 1e-12


def test_contraction_towards_circumcenter():
    print("Testing contraction ratios on a scalene triangle...")

    steps = iterate(SCALENE, 10)
    first = steps[0]
    for before, after in zip(steps, steps[1:]):
        assert contraction_ratio(before, after, "G") == pytest.approx(1 / 3, abs=1e-8)
        assert contraction_ratio(before, after, "H") == pytest.approx(1 / 3, abs=1e-8)
        assert after.H.distance_to(before.G) < 1e-9 * first.R

    print(f"✓ |G_10 - O| / R = {steps[-1].G.distance_to(first.O) / first.R:.3g}")


def test_circumcircle_is_preserved():
    steps = iterate(SCALENE, 50)
    first = steps[0]
    for step in steps:
        assert step.O.distance_to(first.O) < 1e-9 * first.R
        assert abs(step.R - first.R) < 1e-9 * first.R
    assert steps[40].equilateral_deviation < 1e-10


def test_limit_hexagon_scalene():
    print("Testing limit hexagon...")

    hexagon = limit_hexagon(SCALENE, tol=1e-9)
    assert hexagon.gap_error < 1e-8
    assert hexagon.radius_error < 1e-8
    assert hexagon.deviation < 1e-9
    assert 0 <= hexagon.phase < math.pi / 3
    # even and odd limits interleave
    for k in range(6):
        assert hexagon.parities[k] != hexagon.parities[(k + 1) % 6]

    data = hexagon.to_dict()
    assert len(data["vertices"]) == 6

    print(f"✓ Hexagon after {hexagon.steps} triangles, phase {hexagon.phase:.6f}")


def test_iteration_cap():
    with pytest.raises(IterationCapError) as info:
        limit_hexagon(SCALENE, tol=1e-9, max_steps=3)
    assert info.value.steps == 3
    assert info.value.last_deviation > 1e-9


def test_invalid_arguments():
    with pytest.raises(GeometryError):
        iterate(SCALENE, -1)
    with pytest.raises(GeometryError):
        limit_hexagon(SCALENE, tol=0.0)

    steps = iterate(SCALENE, 2)
    with pytest.raises(GeometryError):
        contraction_ratio(steps[0], steps[2])
    with pytest.raises(GeometryError):
        contraction_ratio(steps[0], steps[1], "O")


def test_centroid_base_point_matches_default():
    default = iterate(SCALENE, 3)
    explicit = list(zip(range(4), iter_focal_steps(SCALENE, Homogeneous3(1, 1, 1))))
    for step, (_, other) in zip(default, explicit):
        for p, q in zip(step.tri.vertices(), other.tri.vertices()):
            assert p.distance_to(q) < 1e-14


def test_step_serialization():
    step = iterate(SCALENE, 0)[0]
    data = step.to_dict()
    assert data["index"] == 0
    assert data["vertices"] == [[0.0, 0.0], [4.0, 0.0], [1.0, 3.0]]
    assert data["equilateral_deviation"] == pytest.approx(equilateral_deviation(SCALENE))


@settings(max_examples=20, deadline=None)
@given(tri=triangles())
def test_random_triangles_converge(tri):
    steps = iterate(tri, 20)
    first = steps[0]
    floor = 1e-4 * first.R
    for before, after in zip(steps, steps[1:]):
        if before.G.distance_to(before.O) <= floor:
            break
        assert contraction_ratio(before, after) == pytest.approx(1 / 3, abs=1e-8)

    hexagon = limit_hexagon(tri)
    assert hexagon.gap_error < 1e-8
    assert hexagon.radius_error < 1e-8


def test_hausdorff_distance():
    shifted = Triangle.from_vertices([(0, 0.5), (4, 0), (1, 3)])
    assert hausdorff_distance(SCALENE, SCALENE) == 0.0
    assert hausdorff_distance(SCALENE, shifted) == pytest.approx(0.5)
    # vertex order does not matter
    relabeled = Triangle.from_vertices([(1, 3), (0, 0), (4, 0)])
    assert hausdorff_distance(SCALENE, relabeled) == 0.0


def test_parity_subsequences_converge_scalene():
    print("Testing convergence of the even and odd steps...")

    steps = iterate(SCALENE, 40)
    gaps = parity_gaps(steps)
    assert len(gaps) == 39
    # geometric decay once the sequence is close to equilateral, down to rounding level
    for before, after in zip(gaps[6:], gaps[7:]):
        if after <= 1e-12:
            break
        assert after < before
    assert gaps[-1] < 1e-9
    assert gaps[-1] < gaps[0]

    print(f"✓ Parity gaps {gaps[0]:.3g} -> {gaps[-1]:.3g}")


@settings(max_examples=20, deadline=None)
@given(tri=triangles())
def test_parity_subsequences_converge_random(tri):
    gaps = parity_gaps(iterate(tri, 30))
    for before, after in zip(gaps[10:], gaps[11:]):
        if after <= 1e-12:
            break
        assert after < before
    assert gaps[-1] < 1e-9
