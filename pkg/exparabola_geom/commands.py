"""
Subcommand implementations.

Each cmd_* function takes parsed inputs, runs the computation and returns a
Report whose invariant table records the checks made along the way. The
argparse layer in cli.py only parses, dispatches and serializes.
"""

from dataclasses import dataclass
import logging
import math
from typing import Any, Dict, List, Optional, Sequence, Tuple

from exparabola_geom import __version__
from exparabola_geom.config import ToleranceConfig
from exparabola_geom.core_geometry import (
    Homogeneous3,
    Triangle,
    admissible,
    centers,
    side_lengths,
)
from exparabola_geom.cubic_roots import (
    RootKind,
    max_cubic_coeffs,
    max_exparabola_roots,
    root_residuals,
    solve_cubic,
    vieta_residual,
)
from exparabola_geom.errors import ConvergedError, InputSpecError, IterationCapError
from exparabola_geom.exparabola import Exparabola, make_exparabola, tangency_grid
from exparabola_geom.focal import (
    axis_incidence_residual,
    boundary_roots,
    focal_triangle,
    focus_cross_check,
    h_invariant,
    perpendicularity_check,
    steiner_inscribed_triangle,
    x_exparabolas,
)
from exparabola_geom.iteration import contraction_ratio, iterate, limit_hexagon, parity_gaps
from exparabola_geom.parabola_metrics import axis_direction, vertex
from exparabola_geom.render import render_figure, write_svg
from exparabola_geom.report import Report
from exparabola_geom.verification import (
    CONTRACTION_FLOOR,
    get_invariant,
    replay_sample,
    run_all,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TriangleSpec:
    """
    Triangle given by vertices or by side lengths.

    Side lengths are placed canonically at A = (0, 0), B = (c, 0),
    C = (c1, c2) with c2 > 0.
    """
    vertices: Optional[Tuple[Tuple[float, float], ...]] = None
    sides: Optional[Tuple[float, float, float]] = None

    @classmethod
    def from_json(cls, data: Any) -> 'TriangleSpec':
        """
        Parse {"vertices": [[x, y], ...]}, {"sides": {"a": .., "b": .., "c": ..}},
        {"a": .., "b": .., "c": ..} or a bare list of three vertices.

        Raises:
            InputSpecError: for anything else
        """
        try:
            if isinstance(data, list):
                return cls.from_vertices(data)
            if isinstance(data, dict):
                if "vertices" in data:
                    return cls.from_vertices(data["vertices"])
                sides = data.get("sides", data)
                if isinstance(sides, list):
                    return cls.from_sides(sides)
                if isinstance(sides, dict) and {"a", "b", "c"} <= set(sides):
                    return cls.from_sides([sides["a"], sides["b"], sides["c"]])
        except (TypeError, ValueError, IndexError, KeyError) as e:
            raise InputSpecError(f"Malformed triangle specification {data!r}: {e}") from e
        raise InputSpecError(
            f"Triangle specification needs 'vertices' or side lengths a, b, c: {data!r}")

    @classmethod
    def from_vertices(cls, vertices: Sequence[Sequence[float]]) -> 'TriangleSpec':
        if len(vertices) != 3 or any(len(v) != 2 for v in vertices):
            raise InputSpecError(f"Expected three [x, y] vertices, got {vertices!r}")
        return cls(vertices=tuple((float(v[0]), float(v[1])) for v in vertices))

    @classmethod
    def from_sides(cls, sides: Sequence[float]) -> 'TriangleSpec':
        if len(sides) != 3:
            raise InputSpecError(f"Expected three side lengths, got {sides!r}")
        a, b, c = (float(s) for s in sides)
        return cls(sides=(a, b, c))

    def to_triangle(self) -> Triangle:
        if self.vertices is not None:
            return Triangle.from_vertices(self.vertices)
        return Triangle.from_side_lengths(*self.sides)

    def to_dict(self) -> Dict[str, Any]:
        if self.vertices is not None:
            return {"vertices": [list(v) for v in self.vertices]}
        a, b, c = self.sides
        return {"sides": {"a": a, "b": b, "c": c}}


def parse_point(values: Sequence[Any]) -> Homogeneous3:
    """Barycentric triple from a JSON list or command-line values."""
    try:
        if len(values) != 3:
            raise InputSpecError(f"Expected three barycentric coordinates, got {values!r}")
        return Homogeneous3(*(float(v) for v in values))
    except (TypeError, ValueError) as e:
        raise InputSpecError(f"Malformed barycentric point {values!r}: {e}") from e


def _new_report(command: str, inputs: Dict[str, Any], seed: Optional[int] = None) -> Report:
    return Report(command=command, inputs=inputs, version=__version__, seed=seed)


def _describe_exparabola(exp: Exparabola) -> Dict[str, Any]:
    return {
        "t": exp.t,
        "opposite": exp.opposite.name,
        "control_points": [exp.curve.P0, exp.curve.P1, exp.curve.P2],
        "focus": exp.focus,
        "vertex": vertex(exp.curve),
        "axis_direction": axis_direction(exp.curve),
        "squared_parameter": exp.squared_parameter,
    }


def _centers_dict(tri: Triangle) -> Dict[str, Any]:
    c = centers(tri)
    return {"G": c.G, "O": c.O, "H": c.H, "R": c.R}


def cmd_max(spec: TriangleSpec) -> Report:
    """
    Max-exparabolas of a triangle: roots of e_c, tangency points, foci and axes.
    """
    tri = spec.to_triangle()
    report = _new_report("max", {"triangle": spec.to_dict()})
    c = centers(tri)

    coeffs = max_cubic_coeffs(tri, "c")
    roots = solve_cubic(coeffs)
    t0, t1, t2 = max_exparabola_roots(tri)
    exps = [make_exparabola(tri, t) for t in (t0, t1, t2)]

    report.results.update({
        "side_lengths": side_lengths(tri),
        "centers": _centers_dict(tri),
        "coefficients": {side: max_cubic_coeffs(tri, side).as_tuple() for side in "abc"},
        "roots": [t0, t1, t2],
        "root_flags": roots.to_dict(),
        "interlacing": {"t0<0": t0 < 0, "0<t1<1": 0 < t1 < 1, "t2>1": t2 > 1},
        "tangency_points": tangency_grid(t0, t1, t2).as_dict(),
        "exparabolas": [_describe_exparabola(exp) for exp in exps],
        "centroid_incidence": [axis_incidence_residual(exp, c.G) for exp in exps],
    })

    report.check("root_interlacing", 0.0 if t0 < 0 < t1 < 1 < t2 else 1.0, 0.0)
    report.check("vieta", vieta_residual(coeffs, roots), 1e-9)
    report.check("root_residual", max(root_residuals(coeffs, roots)), 1e-9)
    report.check("centroid_incidence", max(report.results["centroid_incidence"]), 1e-9)
    report.check("focus_on_circumcircle",
                 max(abs(exp.focus.distance_to(c.O) - c.R) for exp in exps) / c.R, 1e-10)
    report.check("focus_formulas_agree", max(focus_cross_check(tri, t) for t in (t0, t1, t2)),
                 1e-10)

    # the other two cubics carry the same exparabolas in their own side parametrizations
    expected = {"a": sorted(1 - 1 / t for t in (t0, t1, t2)),
                "b": sorted(1 / (1 - t) for t in (t0, t1, t2))}
    for side, wanted in expected.items():
        found = solve_cubic(max_cubic_coeffs(tri, side)).reals
        drift = (max(abs(p - q) / max(1.0, abs(q)) for p, q in zip(found, wanted))
                 if len(found) == 3 else math.inf)
        report.check(f"e_{side}_roots", drift, 1e-9)

    inscribed = steiner_inscribed_triangle(tri)
    report.results["steiner_inscribed"] = {
        "X1": inscribed.X1, "X2": inscribed.X2, "X3": inscribed.X3,
        "coordinates": list(inscribed.coordinates),
    }
    report.check("cevian_concurrency", max(inscribed.concurrency), 1e-9)
    return report


def cmd_xfocal(spec: TriangleSpec, X: Homogeneous3) -> Report:
    """
    Focal triangle with respect to X: axis cubic, roots, foci and orthocenter check.
    """
    tri = spec.to_triangle()
    report = _new_report("xfocal", {"triangle": spec.to_dict(), "x": X})
    c = centers(tri)

    result = focal_triangle(tri, X)
    coeffs = result.coefficients
    is_admissible = admissible(X)
    report.results.update({
        "centers": _centers_dict(tri),
        "x_normalized": X.normalized(),
        "admissible": is_admissible,
        "coefficients": coeffs.as_tuple(),
        "complex_pair": result.roots.kind is RootKind.ONE_REAL_COMPLEX_PAIR,
        "focal": result.to_dict(),
        "orthocenter_residual_relative": result.orthocenter_residual / c.R,
    })

    report.check("vieta", vieta_residual(coeffs, result.roots), 1e-9)
    if not result.all_real:
        logger.info("X = %s gives complex roots; orthocenter residual is reported only", X)
        return report

    report.check("orthocenter", result.orthocenter_residual / c.R, 1e-9)
    report.check("foci_on_circumcircle",
                 max(abs(f.distance_to(c.O) - c.R) for f in result.foci) / c.R, 1e-10)
    boundary = boundary_roots(result.roots)
    report.results["boundary_roots"] = boundary
    if boundary:
        logger.info("X = %s lies on an anticomplementary side line: root(s) %s at a vertex; "
                    "h and perpendicularity checks skipped", X, boundary)
        return report

    u, v, w = result.roots.reals
    report.results["h_invariant"] = h_invariant(tri, u, v, w)
    report.results["perpendicularity"] = perpendicularity_check(tri, u, v, w)
    report.check("h_vanishes", abs(report.results["h_invariant"]), 1e-9)
    report.check("perpendicularity", max(abs(r) for r in report.results["perpendicularity"]),
                 1e-9)
    if is_admissible:
        exps = x_exparabolas(tri, X)
        report.results["exparabolas"] = [_describe_exparabola(exp) for exp in exps]
        report.check("axis_incidence",
                     max(axis_incidence_residual(exp, result.x_point) for exp in exps), 1e-9)
    return report


def cmd_iterate(spec: TriangleSpec, n: int, tol: float,
                config: Optional[ToleranceConfig] = None,
                base_point: Optional[Homogeneous3] = None) -> Report:
    """
    Focal sequence: per-step table, contraction ratios and the limit hexagon.

    With a base point other than the centroid nothing is asserted; a missing
    limit is reported instead of raised.

    Raises:
        IterationCapError: if the centroid sequence does not converge
    """
    config = config or ToleranceConfig()
    if n < 1:
        raise InputSpecError(f"--steps must be at least 1, got {n}")
    tri = spec.to_triangle()
    inputs = {"triangle": spec.to_dict(), "steps": n, "tol": tol,
              "base_point": base_point}
    report = _new_report("iterate", inputs)

    steps = iterate(tri, n, base_point, config.blowup_tolerance)
    first = steps[0]
    gaps = parity_gaps(steps)
    rows: List[Dict[str, Any]] = []
    for i, step in enumerate(steps):
        row = step.to_dict()
        if i < len(gaps):
            row["parity_gap"] = gaps[i]
        if i + 1 < len(steps):
            for which in ("G", "H"):
                try:
                    row[f"ratio_{which}"] = contraction_ratio(step, steps[i + 1], which)
                except ConvergedError:
                    row[f"ratio_{which}"] = "converged"
        rows.append(row)
    report.results["steps"] = rows

    try:
        hexagon = limit_hexagon(tri, tol, config.iteration_cap, base_point,
                                config.blowup_tolerance)
        report.results["limit_hexagon"] = hexagon
    except IterationCapError as e:
        if base_point is None:
            raise
        report.results["limit_hexagon"] = None
        report.results["limit_error"] = str(e)
        hexagon = None

    if base_point is not None:
        return report

    floor = CONTRACTION_FLOOR * first.R
    ratio_error = 0.0
    for before, after in zip(steps, steps[1:]):
        if before.G.distance_to(before.O) <= floor:
            break
        ratio_error = max(ratio_error, abs(contraction_ratio(before, after) - 1 / 3))
    report.check("contraction", ratio_error, 1e-8)
    report.check("orthocenter_is_previous_centroid",
                 max((after.H.distance_to(before.G) for before, after in zip(steps, steps[1:])),
                     default=0.0) / first.R, 1e-9)
    report.check("circumcircle_drift",
                 max(max(s.O.distance_to(first.O), abs(s.R - first.R)) for s in steps) / first.R,
                 1e-9)
    report.check("hexagon_gaps", hexagon.gap_error, 1e-8)
    report.check("hexagon_radii", hexagon.radius_error, 1e-8)
    return report


def cmd_verify(trials: int, seed: int, config: Optional[ToleranceConfig] = None,
               names: Optional[Sequence[str]] = None) -> Report:
    """
    Run the invariant suites on random samples.

    Failing invariants carry their worst sample under results.failing_samples,
    ready for verify --replay.
    """
    config = config or ToleranceConfig()
    if trials < 1:
        raise InputSpecError(f"--trials must be at least 1, got {trials}")
    inputs = {"trials": trials, "max_side_ratio": config.max_side_ratio}
    report = _new_report("verify", inputs, seed)
    outcomes = run_all(trials, seed, config.max_side_ratio, names)

    summary = {}
    failing = []
    for outcome in outcomes:
        summary[outcome.name] = {"samples": outcome.samples,
                                 "worst_residual": outcome.worst_residual,
                                 "errors": len(outcome.errors)}
        detail = outcome.errors[0] if outcome.errors else None
        report.check(outcome.name, outcome.worst_residual, outcome.tolerance, detail)
        sample = outcome.failing_sample()
        if sample is not None:
            failing.append(sample.to_dict())
    report.results["summary"] = summary
    report.results["failing_samples"] = failing
    return report


def cmd_replay(data: Any) -> Report:
    """
    Re-evaluate serialized samples: a single sample, a list of samples or a
    verify report with failing samples.
    """
    if isinstance(data, dict) and "invariant" in data:
        samples = [data]
    elif isinstance(data, dict) and "results" in data:
        samples = data["results"].get("failing_samples", [])
    elif isinstance(data, list):
        samples = data
    else:
        raise InputSpecError("Replay input must be a sample, a list of samples or a verify report")

    report = _new_report("verify", {"replay": len(samples)})
    replayed = []
    for item in samples:
        sample, residual = replay_sample(item)
        invariant = get_invariant(sample.invariant)
        report.check(sample.invariant, residual, invariant.tolerance)
        replayed.append({"sample": sample.to_dict(), "residual": residual})
    report.results["replayed"] = replayed
    return report


def cmd_render(spec: TriangleSpec, figure: str, out: str,
               config: Optional[ToleranceConfig] = None, t: Optional[float] = None,
               steps: int = 4) -> Report:
    """
    Render a figure to an SVG file.

    Raises:
        OSError: if out cannot be written
    """
    config = config or ToleranceConfig()
    tri = spec.to_triangle()
    root = render_figure(tri, figure, config, t=t, steps=steps)
    write_svg(root, out)
    report = _new_report("render", {"triangle": spec.to_dict(), "figure": figure, "t": t,
                                    "steps": steps})
    report.results["out"] = out
    return report
