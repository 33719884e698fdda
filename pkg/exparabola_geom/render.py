"""
SVG figures of exparabola constructions.

Figures are built as xml.etree.ElementTree trees. World coordinates are
mapped with a y-flip into a square viewBox fitted to the construction with a
relative margin; parabola arcs are written as native quadratic path segments
and clipped to the viewBox.
"""

import logging
import math
from typing import Iterable, List, Optional, Sequence, Tuple
import xml.etree.ElementTree as ET

from exparabola_geom.config import ToleranceConfig
from exparabola_geom.core_geometry import (
    Homogeneous3,
    Point2,
    Triangle,
    Vec2,
    anticomplementary_triangle,
    bary_to_cartesian,
    centers,
    steiner_circumellipse_points,
)
from exparabola_geom.cubic_roots import max_exparabola_roots
from exparabola_geom.errors import InputSpecError
from exparabola_geom.exparabola import Exparabola, cevian_point, make_exparabola, tangency_points
from exparabola_geom.focal import focal_triangle
from exparabola_geom.iteration import iterate, limit_hexagon
from exparabola_geom.parabola_metrics import axis_direction, subcurve, vertex

logger = logging.getLogger(__name__)

SVG_NS = "http://www.w3.org/2000/svg"
FIGURES = ("exparabola", "max", "anticomplementary", "focal", "sequence")

BLUE = "#1f77b4"
ORANGE = "#ff7f0e"
GRAY = "#999999"
GREEN = "#2ca02c"
RED = "#d62728"
DARK = "#444444"

Bounds = Tuple[float, float, float, float]


def _fmt(value: float) -> str:
    text = f"{value:.6f}".rstrip("0").rstrip(".")
    return "0" if text in ("", "-0") else text


def fit_bounds(points: Iterable[Point2], margin: float) -> Bounds:
    """Square bounding box (xmin, ymin, xmax, ymax) around points with a relative margin."""
    xs, ys = zip(*(p.to_tuple() for p in points))
    cx, cy = (min(xs) + max(xs)) / 2, (min(ys) + max(ys)) / 2
    half = max(max(xs) - min(xs), max(ys) - min(ys)) / 2
    half = half / (1 - 2 * margin) if half > 0 else 1.0
    return (cx - half, cy - half, cx + half, cy + half)


class Canvas:
    """
    One drawing area: an <svg> element whose viewBox shows the given world bounds.
    """

    def __init__(self, element: ET.Element, bounds: Bounds, clip_id: str):
        self.element = element
        self.bounds = bounds
        xmin, ymin, xmax, ymax = bounds
        self.diagonal = math.hypot(xmax - xmin, ymax - ymin)
        element.set("viewBox", " ".join(_fmt(v) for v in (xmin, -ymax, xmax - xmin, ymax - ymin)))

        defs = ET.SubElement(element, "defs")
        clip = ET.SubElement(defs, "clipPath", id=clip_id)
        ET.SubElement(clip, "rect", x=_fmt(xmin), y=_fmt(-ymax), width=_fmt(xmax - xmin),
                      height=_fmt(ymax - ymin))
        self.layer = ET.SubElement(element, "g", {"clip-path": f"url(#{clip_id})"})

    @staticmethod
    def _xy(p: Point2) -> Tuple[str, str]:
        return _fmt(p.x), _fmt(-p.y)

    def _style(self, el: ET.Element, stroke: str, width: float = 1.5,
               fill: str = "none", dash: Optional[str] = None) -> ET.Element:
        el.set("fill", fill)
        el.set("stroke", stroke)
        el.set("stroke-width", _fmt(width))
        el.set("vector-effect", "non-scaling-stroke")
        if dash:
            el.set("stroke-dasharray", dash)
        return el

    def polygon(self, points: Sequence[Point2], stroke: str, **style) -> ET.Element:
        coords = " ".join(",".join(self._xy(p)) for p in points)
        return self._style(ET.SubElement(self.layer, "polygon", points=coords), stroke, **style)

    def segment(self, p: Point2, q: Point2, stroke: str, **style) -> ET.Element:
        (x1, y1), (x2, y2) = self._xy(p), self._xy(q)
        return self._style(ET.SubElement(self.layer, "line", x1=x1, y1=y1, x2=x2, y2=y2),
                           stroke, **style)

    def line(self, through: Point2, direction: Vec2, stroke: str, **style) -> ET.Element:
        """Line through a point, long enough to cross the whole viewBox."""
        unit = direction.to_array() / direction.norm()
        reach = 2 * self.diagonal
        p = Point2.from_array(through.to_array() - reach * unit)
        q = Point2.from_array(through.to_array() + reach * unit)
        return self.segment(p, q, stroke, **style)

    def circle(self, center: Point2, radius: float, stroke: str, **style) -> ET.Element:
        cx, cy = self._xy(center)
        return self._style(ET.SubElement(self.layer, "circle", cx=cx, cy=cy, r=_fmt(radius)),
                           stroke, **style)

    def dot(self, p: Point2, color: str, label: Optional[str] = None) -> None:
        cx, cy = self._xy(p)
        radius = self.diagonal / 250
        ET.SubElement(self.layer, "circle", cx=cx, cy=cy, r=_fmt(radius), fill=color)
        if label:
            text = ET.SubElement(self.layer, "text", x=_fmt(p.x + 1.5 * radius),
                                 y=_fmt(-p.y - 1.5 * radius), fill=color)
            text.set("font-size", _fmt(self.diagonal / 40))
            text.set("font-family", "sans-serif")
            text.text = label

    def arc(self, exp: Exparabola, padding: float, stroke: str, **style) -> ET.Element:
        """Arc covering the three tangency parameters 0, 1 and t, padded on both sides."""
        low, high = min(0.0, exp.t), max(1.0, exp.t)
        extra = padding * (high - low)
        piece = subcurve(exp.curve, low - extra, high + extra)
        (x0, y0), (x1, y1), (x2, y2) = (self._xy(p) for p in (piece.P0, piece.P1, piece.P2))
        d = f"M{x0} {y0}Q{x1} {y1} {x2} {y2}"
        return self._style(ET.SubElement(self.layer, "path", d=d), stroke, **style)


def _root(width: int, height: int) -> ET.Element:
    return ET.Element("svg", xmlns=SVG_NS, version="1.1", width=str(width), height=str(height))


def _panel(parent: ET.Element, x: int, y: int, size: int) -> ET.Element:
    return ET.SubElement(parent, "svg", x=str(x), y=str(y), width=str(size), height=str(size))


def _frame_points(tri: Triangle) -> List[Point2]:
    """Points every figure must show: the vertices and the circumcircle."""
    c = centers(tri)
    extremes = [Point2(c.O.x + dx * c.R, c.O.y + dy * c.R)
                for dx, dy in ((1, 0), (-1, 0), (0, 1), (0, -1))]
    return list(tri.vertices()) + extremes


def _draw_exparabola_figure(canvas: Canvas, tri: Triangle, t: float,
                            config: ToleranceConfig) -> None:
    exp = make_exparabola(tri, t)
    c = centers(tri)
    canvas.circle(c.O, c.R, DARK, width=1.0)
    canvas.polygon(steiner_circumellipse_points(tri), GREEN, width=1.0, dash="4 3")
    canvas.polygon(tri.vertices(), BLUE)
    canvas.arc(exp, config.arc_padding, RED, width=2.0)
    canvas.line(vertex(exp.curve), axis_direction(exp.curve), RED, width=0.8, dash="6 4")

    X = bary_to_cartesian(tri, cevian_point(t))
    for apex, h in zip((tri.A, tri.B, tri.C), tangency_points(t)):
        touch = bary_to_cartesian(tri, h)
        canvas.segment(apex, X, GRAY, width=0.8)
        canvas.dot(touch, RED)
    for label, p in zip("ABC", tri.vertices()):
        canvas.dot(p, BLUE, label)
    canvas.dot(exp.focus, RED, "F")
    canvas.dot(X, GREEN, "X")


def _draw_max_figure(canvas: Canvas, tri: Triangle, config: ToleranceConfig) -> None:
    c = centers(tri)
    canvas.circle(c.O, c.R, DARK, width=1.0)
    canvas.polygon(tri.vertices(), BLUE)
    for t in max_exparabola_roots(tri):
        exp = make_exparabola(tri, t)
        canvas.arc(exp, config.arc_padding, ORANGE, width=2.0)
        canvas.line(c.G, axis_direction(exp.curve), ORANGE, width=0.8, dash="6 4")
        canvas.dot(exp.focus, ORANGE)
    for label, p in zip("ABC", tri.vertices()):
        canvas.dot(p, BLUE, label)
    canvas.dot(c.G, DARK, "G")


def _draw_anticomplementary_figure(canvas: Canvas, tri: Triangle,
                                   config: ToleranceConfig) -> None:
    outer = anticomplementary_triangle(tri)
    c = centers(tri)
    region = canvas.polygon(outer.vertices(), GREEN, width=1.0, fill=GREEN)
    region.set("fill-opacity", "0.12")
    canvas.polygon(tri.vertices(), BLUE)
    for t in max_exparabola_roots(tri):
        exp = make_exparabola(tri, t)
        canvas.arc(exp, config.arc_padding, ORANGE, width=1.5)
        canvas.line(c.G, axis_direction(exp.curve), ORANGE, width=0.8, dash="6 4")
    for label, p in zip("ABC", tri.vertices()):
        canvas.dot(p, BLUE, label)
    canvas.dot(c.G, DARK, "G")


def _draw_focal_figure(canvas: Canvas, tri: Triangle, config: ToleranceConfig) -> None:
    c = centers(tri)
    result = focal_triangle(tri, Homogeneous3(1.0, 1.0, 1.0))
    canvas.circle(c.O, c.R, DARK, width=1.0)
    canvas.polygon(tri.vertices(), BLUE)
    canvas.polygon(result.foci, ORANGE)
    # F_A, F_B, F_C belong to the roots t2, t0, t1
    t0, t1, t2 = max_exparabola_roots(tri)
    for t, focus in zip((t2, t0, t1), result.foci):
        exp = make_exparabola(tri, t)
        canvas.arc(exp, config.arc_padding, ORANGE, width=1.0, dash="3 2")
        canvas.line(focus, axis_direction(exp.curve), GRAY, width=0.8)
    for label, p in zip("ABC", tri.vertices()):
        canvas.dot(p, BLUE, label)
    for label, p in zip(("FA", "FB", "FC"), result.foci):
        canvas.dot(p, ORANGE, label)
    canvas.dot(c.G, DARK, "G")


def _draw_sequence_panel(canvas: Canvas, step_tri: Triangle, next_tri: Triangle,
                         limits: Sequence[Sequence[Point2]], index: int) -> None:
    c = centers(step_tri)
    canvas.circle(c.O, c.R, DARK, width=1.0)
    for limit in limits:
        canvas.polygon(limit, GRAY, width=1.0)
    canvas.polygon(step_tri.vertices(), BLUE)
    canvas.polygon(next_tri.vertices(), ORANGE)
    canvas.dot(c.G, BLUE, f"G{index}")
    canvas.dot(c.H, BLUE, f"H{index}")


def render_figure(tri: Triangle, figure: str, config: Optional[ToleranceConfig] = None,
                  t: Optional[float] = None, steps: int = 4) -> ET.Element:
    """
    Build one figure.

    Args:
        tri: Triangle
        figure: One of FIGURES
        config: Rendering options (size, margin, arc padding)
        t: Parameter of the exparabola figure; the middle max-exparabola root by default
        steps: Number of panels of the sequence figure

    Returns:
        Root <svg> element
    """
    config = config or ToleranceConfig()
    if figure not in FIGURES:
        raise InputSpecError(f"Unknown figure {figure!r}; choose one of {', '.join(FIGURES)}")
    size = config.svg_size

    if figure == "sequence":
        return _render_sequence(tri, config, steps)

    points = _frame_points(tri)
    if figure == "anticomplementary":
        points += list(anticomplementary_triangle(tri).vertices())
    if figure == "exparabola":
        t = max_exparabola_roots(tri)[1] if t is None else t
        points += [bary_to_cartesian(tri, h) for h in tangency_points(t)]
        points.append(bary_to_cartesian(tri, cevian_point(t)))
    root = _root(size, size)
    canvas = Canvas(_panel(root, 0, 0, size), fit_bounds(points, config.svg_margin), "clip-0")

    if figure == "exparabola":
        _draw_exparabola_figure(canvas, tri, t, config)
    elif figure == "max":
        _draw_max_figure(canvas, tri, config)
    elif figure == "anticomplementary":
        _draw_anticomplementary_figure(canvas, tri, config)
    else:
        _draw_focal_figure(canvas, tri, config)
    logger.debug("Rendered %s figure for %s", figure, tri)
    return root


def _render_sequence(tri: Triangle, config: ToleranceConfig, panels: int) -> ET.Element:
    if panels < 1:
        raise InputSpecError(f"The sequence figure needs at least one panel, got {panels}")
    sequence = iterate(tri, panels, blowup_tolerance=config.blowup_tolerance)
    hexagon = limit_hexagon(tri, tol=config.tol, max_steps=config.iteration_cap,
                            blowup_tolerance=config.blowup_tolerance)
    limits = [[p for p, parity in zip(hexagon.vertices, hexagon.parities) if parity == k]
              for k in (0, 1)]

    columns = 2 if panels > 1 else 1
    rows = int(math.ceil(panels / columns))
    size = config.svg_size // columns
    root = _root(size * columns, size * rows)
    bounds = fit_bounds(_frame_points(tri), config.svg_margin)
    for i in range(panels):
        panel = _panel(root, (i % columns) * size, (i // columns) * size, size)
        canvas = Canvas(panel, bounds, f"clip-{i}")
        _draw_sequence_panel(canvas, sequence[i].tri, sequence[i + 1].tri, limits, i)
    return root


def to_string(root: ET.Element) -> str:
    return ET.tostring(root, encoding="unicode")


def write_svg(root: ET.Element, path: str) -> None:
    """Write a figure to path; OSError propagates for unwritable paths."""
    ET.ElementTree(root).write(path, encoding="utf-8", xml_declaration=True)
