"""
Iterated focal triangles.

Starting from A0 B0 C0, step i+1 is the G_i-focal triangle of step i. All
triangles share the circumcircle, G and H contract towards O by the factor
1/3 per step, and the even and odd steps converge to two equilateral
triangles that together form a regular hexagon.
"""

from dataclasses import dataclass
import itertools
import logging
import math
from typing import Dict, Iterator, List, Optional, Tuple

import numpy as np

from exparabola_geom.core_geometry import (
    Homogeneous3,
    Point2,
    Triangle,
    centers,
    side_lengths,
)
from exparabola_geom.errors import (
    ConvergedError,
    GeometryError,
    IterationCapError,
    NumericalError,
)
from exparabola_geom.focal import focal_triangle

logger = logging.getLogger(__name__)

CENTROID = Homogeneous3(1.0, 1.0, 1.0)
DEFAULT_ITERATION_CAP = 200
# drift of O, R or H_{i+1} - G_i above this fraction of R0 aborts the iteration
BLOWUP_TOLERANCE = 1e-6
# |G_i - O| at or below this fraction of R0 counts as converged
CONVERGED_TOLERANCE = 1e-12


@dataclass(frozen=True)
class FocalStep:
    """
    One triangle of the focal sequence with its centers.

    Attributes:
        index: Step number, 0 for the input triangle
        tri: Triangle of this step
        O: Circumcenter
        G: Centroid
        H: Orthocenter
        R: Circumradius
        equilateral_deviation: (longest - shortest side) / longest side
    """
    index: int
    tri: Triangle
    O: Point2
    G: Point2
    H: Point2
    R: float
    equilateral_deviation: float

    def to_dict(self) -> Dict[str, object]:
        return {
            "index": self.index,
            "vertices": [list(p.to_tuple()) for p in self.tri.vertices()],
            "O": list(self.O.to_tuple()),
            "G": list(self.G.to_tuple()),
            "H": list(self.H.to_tuple()),
            "R": self.R,
            "equilateral_deviation": self.equilateral_deviation,
        }


@dataclass(frozen=True)
class LimitHexagon:
    """
    Regular hexagon formed by the limits of the even and odd steps.

    Attributes:
        vertices: Six vertices ordered by angle about O
        parities: Step parity (0 even, 1 odd) each vertex came from
        steps: Number of triangles computed, the input included
        deviation: Largest equilateral deviation of the final two triangles
        phase: Angle of the first vertex about O, in [0, pi/3)
        gap_error: Largest deviation of an angular gap from pi/3, radians
        radius_error: Largest | |V - O| - R0 | / R0
    """
    vertices: Tuple[Point2, ...]
    parities: Tuple[int, ...]
    steps: int
    deviation: float
    phase: float
    gap_error: float
    radius_error: float

    def to_dict(self) -> Dict[str, object]:
        return {
            "vertices": [list(p.to_tuple()) for p in self.vertices],
            "parities": list(self.parities),
            "steps": self.steps,
            "deviation": self.deviation,
            "phase": self.phase,
            "gap_error": self.gap_error,
            "radius_error": self.radius_error,
        }


def equilateral_deviation(tri: Triangle) -> float:
    """Spread of the side lengths relative to the longest side; 0 for equilateral."""
    lengths = side_lengths(tri)
    return (max(lengths) - min(lengths)) / max(lengths)


def hausdorff_distance(first: Triangle, second: Triangle) -> float:
    """Hausdorff distance between the vertex sets of two triangles."""
    pairwise = np.linalg.norm(first.to_array()[:, None, :] - second.to_array()[None, :, :],
                              axis=-1)
    return float(max(pairwise.min(axis=1).max(), pairwise.min(axis=0).max()))


def parity_gaps(steps: List[FocalStep]) -> List[float]:
    """
    Hausdorff distances between steps i and i + 2, relative to R0.

    Both parity subsequences converge, so these go to zero geometrically.
    """
    if not steps:
        return []
    radius = steps[0].R
    return [hausdorff_distance(before.tri, after.tri) / radius
            for before, after in zip(steps, steps[2:])]


def _make_step(index: int, tri: Triangle) -> FocalStep:
    c = centers(tri)
    return FocalStep(index=index, tri=tri, O=c.O, G=c.G, H=c.H, R=c.R,
                     equilateral_deviation=equilateral_deviation(tri))


def iter_focal_steps(tri0: Triangle, base_point: Optional[Homogeneous3] = None,
                     blowup_tolerance: float = BLOWUP_TOLERANCE) -> Iterator[FocalStep]:
    """
    Lazily generate the focal sequence, step 0 first.

    Args:
        tri0: Input triangle
        base_point: Barycentric point the focal triangles are taken with
            respect to; the centroid when None. Any other point is an
            experiment: only the circumcircle is guarded then.
        blowup_tolerance: Allowed drift relative to R0

    Raises:
        NumericalError: if O, R or (centroid mode) H_{i+1} - G_i drift too far
    """
    point = CENTROID if base_point is None else base_point
    step = _make_step(0, tri0)
    first = step
    yield step

    for index in itertools.count(1):
        result = focal_triangle(step.tri, point)
        nxt = _make_step(index, result.triangle())
        limit = blowup_tolerance * first.R

        drift = max(nxt.O.distance_to(first.O), abs(nxt.R - first.R))
        if drift > limit:
            raise NumericalError(
                f"Circumcircle drifted by {drift:.3g} (> {limit:.3g}) at step {index}")
        if base_point is None:
            jump = nxt.H.distance_to(step.G)
            if jump > limit:
                raise NumericalError(
                    f"Orthocenter of step {index} misses previous centroid by {jump:.3g}")

        logger.debug("Step %d: deviation %.3g, |G - O| = %.3g", index,
                     nxt.equilateral_deviation, nxt.G.distance_to(first.O))
        step = nxt
        yield step


def iterate(tri0: Triangle, n: int, base_point: Optional[Homogeneous3] = None,
            blowup_tolerance: float = BLOWUP_TOLERANCE) -> List[FocalStep]:
    """
    Steps 0..n of the focal sequence.

    Args:
        tri0: Input triangle
        n: Number of focal-triangle constructions, n >= 0
        base_point: Optional replacement for the centroid
        blowup_tolerance: Allowed drift relative to R0

    Returns:
        List of n + 1 FocalStep values
    """
    if n < 0:
        raise GeometryError(f"Number of steps must be non-negative, got {n}")
    return list(itertools.islice(iter_focal_steps(tri0, base_point, blowup_tolerance), n + 1))


def contraction_ratio(step_i: FocalStep, step_j: FocalStep, which: str = "G") -> float:
    """
    |X_j - O| / |X_i - O| for X = G or H and consecutive steps i, j = i + 1.

    Raises:
        ConvergedError: if X_i already sits at O
    """
    if step_j.index != step_i.index + 1:
        raise GeometryError(
            f"Contraction ratio needs consecutive steps, got {step_i.index} and {step_j.index}")
    if which not in ("G", "H"):
        raise GeometryError(f"Contraction ratio is defined for 'G' or 'H', got {which!r}")
    before = getattr(step_i, which).distance_to(step_i.O)
    after = getattr(step_j, which).distance_to(step_i.O)
    if before <= CONVERGED_TOLERANCE * step_i.R:
        raise ConvergedError(
            f"{which}_{step_i.index} coincides with O; the sequence has converged")
    return after / before


def _hexagon(even: FocalStep, odd: FocalStep, origin: Point2, radius: float,
             steps: int) -> LimitHexagon:
    tagged = []
    for parity, step in ((even.index % 2, even), (odd.index % 2, odd)):
        for p in step.tri.vertices():
            angle = math.atan2(p.y - origin.y, p.x - origin.x) % (2 * math.pi)
            tagged.append((angle, parity, p))
    tagged.sort(key=lambda item: item[0])

    angles = [item[0] for item in tagged]
    gaps = [(angles[(k + 1) % 6] - angles[k]) % (2 * math.pi) for k in range(6)]
    gap_error = max(abs(gap - math.pi / 3) for gap in gaps)
    radius_error = max(abs(p.distance_to(origin) - radius) for _, _, p in tagged) / radius

    return LimitHexagon(
        vertices=tuple(item[2] for item in tagged),
        parities=tuple(item[1] for item in tagged),
        steps=steps,
        deviation=max(even.equilateral_deviation, odd.equilateral_deviation),
        phase=angles[0] % (math.pi / 3),
        gap_error=gap_error,
        radius_error=radius_error,
    )


def limit_hexagon(tri0: Triangle, tol: float = 1e-9, max_steps: int = DEFAULT_ITERATION_CAP,
                  base_point: Optional[Homogeneous3] = None,
                  blowup_tolerance: float = BLOWUP_TOLERANCE) -> LimitHexagon:
    """
    Iterate until the two most recent triangles are equilateral within tol.

    Stops when two consecutive deviations are below tol and the hexagon they
    form has angular gaps within tol of 60 degrees and radii within tol R0.

    Raises:
        GeometryError: if tol is not positive
        IterationCapError: if max_steps constructions do not reach the limit
    """
    if not tol > 0:
        raise GeometryError(f"Tolerance must be positive, got {tol}")

    previous: Optional[FocalStep] = None
    first: Optional[FocalStep] = None
    for step in iter_focal_steps(tri0, base_point, blowup_tolerance):
        if first is None:
            first = step
        if previous is not None:
            if previous.equilateral_deviation < tol and step.equilateral_deviation < tol:
                hexagon = _hexagon(previous, step, first.O, first.R, step.index + 1)
                if hexagon.gap_error < tol and hexagon.radius_error < tol:
                    logger.info("Limit hexagon after %d triangles, phase %.6f rad",
                                hexagon.steps, hexagon.phase)
                    return hexagon
        if step.index >= max_steps:
            raise IterationCapError(
                f"No limit hexagon within {max_steps} steps "
                f"(last deviation {step.equilateral_deviation:.3g})",
                steps=step.index, last_deviation=step.equilateral_deviation)
        previous = step
    raise NumericalError("Focal sequence ended unexpectedly")
