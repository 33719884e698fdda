"""
Randomized verification of the geometric invariants.

Every invariant is a function from a Sample (a triangle plus, where needed,
a tangency parameter or a barycentric point) to a non-negative residual.
Samples are drawn by TriangleSampler from a numpy RandomState so that a
run is reproducible from its seed, and any failing sample can be serialized
and replayed on its own.
"""

from dataclasses import dataclass, field
import logging
import math
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from exparabola_geom.core_geometry import (
    Homogeneous3,
    Triangle,
    Vertex,
    bary_to_cartesian,
    centers,
    steiner_residual,
)
from exparabola_geom.cubic_roots import (
    axis_cubic_coeffs,
    check_interlacing,
    max_cubic_coeffs,
    max_exparabola_roots,
    solve_cubic,
)
from exparabola_geom.errors import DegenerateTriangleError, ExparabolaError, InputSpecError
from exparabola_geom.exparabola import (
    ceva_product,
    cevian_point,
    make_exparabola,
    parameter_scale,
    squared_parameter_closed_form,
    tangency_discriminant,
)
from exparabola_geom.focal import (
    altitude_residuals,
    axis_incidence_residual,
    euler_line_residual,
    focal_triangle,
    focus_cross_check,
    h_invariant,
    steiner_inscribed_triangle,
    x_exparabolas,
)
from exparabola_geom.iteration import (
    contraction_ratio,
    iterate,
    limit_hexagon,
)

logger = logging.getLogger(__name__)

# below this |G_i - O| / R0 the contraction ratio is dominated by rounding
CONTRACTION_FLOOR = 1e-6
CENTROID = Homogeneous3(1.0, 1.0, 1.0)
ANTICOMPLEMENTARY = np.array([[-1.0, 1.0, 1.0], [1.0, -1.0, 1.0], [1.0, 1.0, -1.0]])


@dataclass(frozen=True)
class Sample:
    """
    Input of one invariant evaluation.

    Attributes:
        invariant: Name of the invariant the sample was drawn for
        vertices: Triangle vertices
        t: Tangency parameter, for per-exparabola invariants
        x: Barycentric point, for X-focal invariants
    """
    invariant: str
    vertices: Tuple[Tuple[float, float], ...]
    t: Optional[float] = None
    x: Optional[Tuple[float, float, float]] = None

    def triangle(self) -> Triangle:
        return Triangle.from_vertices(self.vertices)

    def point(self) -> Homogeneous3:
        if self.x is None:
            raise InputSpecError(f"Sample for {self.invariant} carries no point X")
        return Homogeneous3(*self.x)

    def to_dict(self) -> Dict[str, object]:
        return {
            "invariant": self.invariant,
            "vertices": [list(v) for v in self.vertices],
            "t": self.t,
            "x": list(self.x) if self.x is not None else None,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, object]) -> 'Sample':
        try:
            vertices = tuple((float(v[0]), float(v[1])) for v in data["vertices"])
            t = data.get("t")
            x = data.get("x")
            return cls(
                invariant=str(data["invariant"]),
                vertices=vertices,
                t=None if t is None else float(t),
                x=None if x is None else (float(x[0]), float(x[1]), float(x[2])),
            )
        except (KeyError, TypeError, ValueError, IndexError) as e:
            raise InputSpecError(f"Malformed sample {data!r}: {e}") from e


class TriangleSampler:
    """
    Random triangles, tangency parameters and admissible points.

    Triangles have vertices uniform in the unit square; degenerate ones and
    those whose longest side exceeds max_side_ratio times the shortest side
    are rejected.
    """

    def __init__(self, seed: int = 0, stream: int = 0, max_side_ratio: float = 50.0):
        """
        Initialize the sampler.

        Args:
            seed: Random seed for reproducibility
            stream: Independent stream index (one per invariant)
            max_side_ratio: Largest accepted longest-side / shortest-side ratio
        """
        self.rng = np.random.RandomState([seed, stream])
        self.max_side_ratio = max_side_ratio

    def triangle(self) -> Triangle:
        while True:
            points = self.rng.uniform(0.0, 1.0, size=(3, 2))
            try:
                tri = Triangle.from_vertices(points)
            except DegenerateTriangleError:
                continue
            if tri.side_ratio() <= self.max_side_ratio:
                return tri

    def parameter(self, low: float = -10.0, high: float = 10.0,
                  margin: float = 0.05) -> float:
        """Tangency parameter in [low, high], at least margin away from 0 and 1."""
        while True:
            t = float(self.rng.uniform(low, high))
            if abs(t) >= margin and abs(t - 1) >= margin:
                return t

    def admissible_point(self, min_weight: float = 0.02) -> Homogeneous3:
        """
        Normalized point strictly inside the anticomplementary triangle.

        Drawn as a Dirichlet combination of the anticomplementary vertices
        with every weight above min_weight.
        """
        while True:
            weights = self.rng.dirichlet(np.ones(3))
            if np.min(weights) > min_weight:
                return Homogeneous3.from_array(weights @ ANTICOMPLEMENTARY)


def _vertices(tri: Triangle) -> Tuple[Tuple[float, float], ...]:
    return tuple(p.to_tuple() for p in tri.vertices())


# residual functions -----------------------------------------------------------

def _focus_on_circumcircle(sample: Sample) -> float:
    tri = sample.triangle()
    c = centers(tri)
    return abs(make_exparabola(tri, sample.t).focus.distance_to(c.O) - c.R) / c.R


def _cevian_on_steiner_ellipse(sample: Sample) -> float:
    return abs(steiner_residual(cevian_point(sample.t)))


def _ceva(sample: Sample) -> float:
    return abs(ceva_product(sample.triangle(), sample.t) - 1)


def _tangency(sample: Sample) -> float:
    exp = make_exparabola(sample.triangle(), sample.t)
    return max(abs(tangency_discriminant(exp, side)) for side in Vertex)


def _focus_formulas_agree(sample: Sample) -> float:
    return focus_cross_check(sample.triangle(), sample.t)


def _squared_parameter_formulas_agree(sample: Sample) -> float:
    tri = sample.triangle()
    metric = make_exparabola(tri, sample.t).squared_parameter
    return abs(squared_parameter_closed_form(tri, sample.t) - metric) / metric


def _interlacing(sample: Sample) -> float:
    roots = solve_cubic(max_cubic_coeffs(sample.triangle(), "c"))
    return 0.0 if len(roots.reals) == 3 and check_interlacing(roots.reals) else 1.0


def _local_maximality(sample: Sample) -> float:
    tri = sample.triangle()
    worst = 0.0
    for t in max_exparabola_roots(tri):
        peak = squared_parameter_closed_form(tri, t)
        step = 1e-4 * max(1.0, abs(t))
        for neighbour in (t - step, t + step):
            worst = max(worst, (squared_parameter_closed_form(tri, neighbour) - peak) / peak)
    return worst


def _stationarity(sample: Sample) -> float:
    tri = sample.triangle()
    worst = 0.0
    for t in max_exparabola_roots(tri):
        # step and normalization follow the distance to the nearest zero or pole of rho^2
        scale = parameter_scale(tri, t)
        step = 1e-5 * scale
        slope = (squared_parameter_closed_form(tri, t + step)
                 - squared_parameter_closed_form(tri, t - step)) / (2 * step)
        worst = max(worst, abs(slope) * scale / squared_parameter_closed_form(tri, t))
    return worst


def _centroid_roots(sample: Sample) -> float:
    tri = sample.triangle()
    axis_roots = solve_cubic(axis_cubic_coeffs(tri, CENTROID)).reals
    return max(abs(p - q) / max(1.0, abs(q))
               for p, q in zip(axis_roots, max_exparabola_roots(tri)))


def _axis_incidence(sample: Sample) -> float:
    tri = sample.triangle()
    X = sample.point()
    point = bary_to_cartesian(tri, X)
    return max(axis_incidence_residual(exp, point) for exp in x_exparabolas(tri, X))


def _orthocenter(sample: Sample) -> float:
    tri = sample.triangle()
    return focal_triangle(tri, sample.point()).orthocenter_residual / centers(tri).R


def _h_vanishes(sample: Sample) -> float:
    tri = sample.triangle()
    u, v, w = solve_cubic(axis_cubic_coeffs(tri, sample.point())).reals
    return abs(h_invariant(tri, u, v, w))


def _foci_on_circumcircle(sample: Sample) -> float:
    tri = sample.triangle()
    c = centers(tri)
    result = focal_triangle(tri, sample.point())
    return max(abs(f.distance_to(c.O) - c.R) for f in result.foci) / c.R


def _altitudes(sample: Sample) -> float:
    tri = sample.triangle()
    result = focal_triangle(tri, CENTROID)
    return max(altitude_residuals(result, x_exparabolas(tri, CENTROID)))


def _euler_line(sample: Sample) -> float:
    tri = sample.triangle()
    return euler_line_residual(tri, focal_triangle(tri, CENTROID))


def _steiner_inscribed(sample: Sample) -> float:
    inscribed = steiner_inscribed_triangle(sample.triangle())
    ellipse = max(abs(steiner_residual(h)) for h in inscribed.coordinates)
    return max(ellipse, max(inscribed.concurrency))


def _contraction(sample: Sample) -> float:
    steps = iterate(sample.triangle(), 20)
    floor = CONTRACTION_FLOOR * steps[0].R
    worst = 0.0
    for before, after in zip(steps, steps[1:]):
        if before.G.distance_to(before.O) <= floor:
            break
        worst = max(worst, abs(contraction_ratio(before, after) - 1 / 3))
    return worst


def _sequence_drift(sample: Sample) -> float:
    steps = iterate(sample.triangle(), 50)
    first = steps[0]
    worst = 0.0
    for before, after in zip(steps, steps[1:]):
        worst = max(worst, after.O.distance_to(first.O), abs(after.R - first.R),
                    after.H.distance_to(before.G))
    return worst / first.R


def _hexagon(sample: Sample) -> float:
    hexagon = limit_hexagon(sample.triangle(), tol=1e-9)
    return max(hexagon.gap_error, hexagon.radius_error)


@dataclass(frozen=True)
class Invariant:
    """
    A checked identity.

    Attributes:
        name: Identifier used in reports and replay files
        residual: Maps a sample to a non-negative residual
        tolerance: Largest passing residual
        needs: Which extra input the sample carries: "t", "x" or None
        weight: Fraction of the trial count sampled (expensive suites run fewer trials)
    """
    name: str
    residual: Callable[[Sample], float]
    tolerance: float
    needs: Optional[str] = None
    weight: float = 1.0


INVARIANTS: Tuple[Invariant, ...] = (
    Invariant("focus_on_circumcircle", _focus_on_circumcircle, 1e-10, "t"),
    Invariant("cevian_on_steiner_ellipse", _cevian_on_steiner_ellipse, 1e-12, "t"),
    Invariant("ceva_product", _ceva, 1e-9, "t"),
    Invariant("side_tangency", _tangency, 1e-10, "t"),
    Invariant("focus_formulas_agree", _focus_formulas_agree, 1e-10, "t"),
    Invariant("squared_parameter_formulas_agree", _squared_parameter_formulas_agree, 1e-9, "t"),
    Invariant("root_interlacing", _interlacing, 0.0),
    Invariant("local_maximality", _local_maximality, 0.0),
    Invariant("stationarity", _stationarity, 1e-6),
    Invariant("centroid_roots", _centroid_roots, 1e-10),
    Invariant("axis_incidence", _axis_incidence, 1e-9, "x"),
    Invariant("orthocenter", _orthocenter, 1e-9, "x"),
    Invariant("h_vanishes", _h_vanishes, 1e-9, "x"),
    Invariant("foci_on_circumcircle", _foci_on_circumcircle, 1e-10, "x"),
    Invariant("focal_altitudes", _altitudes, 1e-9),
    Invariant("euler_line", _euler_line, 1e-9),
    Invariant("steiner_inscribed", _steiner_inscribed, 1e-9),
    Invariant("contraction", _contraction, 1e-8, weight=0.1),
    Invariant("sequence_drift", _sequence_drift, 1e-9, weight=0.1),
    Invariant("limit_hexagon", _hexagon, 1e-8, weight=0.1),
)


def get_invariant(name: str) -> Invariant:
    for invariant in INVARIANTS:
        if invariant.name == name:
            return invariant
    raise InputSpecError(f"Unknown invariant {name!r}")


@dataclass
class InvariantOutcome:
    """Aggregated result of one invariant over its samples."""
    name: str
    tolerance: float
    samples: int
    worst_residual: float = 0.0
    worst_sample: Optional[Sample] = None
    errors: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.errors and self.worst_residual <= self.tolerance

    def failing_sample(self) -> Optional[Sample]:
        return None if self.passed else self.worst_sample


def draw_sample(invariant: Invariant, sampler: TriangleSampler) -> Sample:
    tri = sampler.triangle()
    t = sampler.parameter() if invariant.needs == "t" else None
    x = sampler.admissible_point().as_tuple() if invariant.needs == "x" else None
    return Sample(invariant.name, _vertices(tri), t, x)


def evaluate_sample(sample: Sample) -> float:
    """Residual of a sample under its invariant; errors count as infinite."""
    invariant = get_invariant(sample.invariant)
    try:
        residual = float(invariant.residual(sample))
    except ExparabolaError as e:
        logger.warning("Invariant %s raised on %s: %s", sample.invariant, sample.to_dict(), e)
        return math.inf
    return residual if math.isfinite(residual) else math.inf


def replay_sample(data: Dict[str, object]) -> Tuple[Sample, float]:
    """Re-evaluate a serialized sample and return it with its residual."""
    sample = Sample.from_dict(data)
    return sample, evaluate_sample(sample)


def run_invariant(invariant: Invariant, trials: int, seed: int, stream: int,
                  max_side_ratio: float = 50.0) -> InvariantOutcome:
    """Evaluate one invariant on a reproducible batch of samples."""
    count = max(1, int(round(trials * invariant.weight)))
    sampler = TriangleSampler(seed=seed, stream=stream, max_side_ratio=max_side_ratio)
    outcome = InvariantOutcome(invariant.name, invariant.tolerance, count)
    for _ in range(count):
        sample = draw_sample(invariant, sampler)
        residual = evaluate_sample(sample)
        if not math.isfinite(residual):
            outcome.errors.append(f"non-finite residual for {sample.to_dict()}")
        if outcome.worst_sample is None or residual > outcome.worst_residual:
            outcome.worst_residual = residual
            outcome.worst_sample = sample
    logger.debug("%s: %d samples, worst residual %.3g", invariant.name, count,
                 outcome.worst_residual)
    return outcome


def run_all(trials: int, seed: int, max_side_ratio: float = 50.0,
            names: Optional[Sequence[str]] = None) -> List[InvariantOutcome]:
    """Run the selected invariants (all by default), each on its own random stream."""
    selected = {get_invariant(name).name for name in names} if names is not None else None
    outcomes = []
    for stream, invariant in enumerate(INVARIANTS):
        if selected is not None and invariant.name not in selected:
            continue
        outcomes.append(run_invariant(invariant, trials, seed, stream, max_side_ratio))
    return outcomes
