"""
Exparabola geometry - parabolas tangent to the three side lines of a triangle.

This package computes exparabolas and the max-exparabolas of a triangle,
focal triangles with respect to a point, and the iterated focal triangles
that converge to a limit hexagon. A command-line front-end (``exparabola``)
wraps the library and a randomized verifier checks its invariants.
"""

__version__ = "0.1.0"

from exparabola_geom.errors import (
    ExparabolaError,
    GeometryError,
    DegenerateTriangleError,
    PointAtInfinityError,
    DegenerateParabolaError,
    InvalidParameterError,
    NonAdmissiblePointError,
    CoincidentRootsError,
    CollinearityError,
    ConvergedError,
    NumericalError,
    IterationCapError,
    InputSpecError,
    ConfigError,
)

from exparabola_geom.config import ToleranceConfig, load_config

from exparabola_geom.core_geometry import (
    Vertex,
    Vec2,
    Point2,
    Homogeneous3,
    CanonicalFrame,
    Triangle,
    TriangleCenters,
    centers,
    bary_to_cartesian,
    cartesian_to_bary,
    affine_ratio,
    admissible,
)

from exparabola_geom.parabola_metrics import BezierParabola, Line2

from exparabola_geom.exparabola import (
    Exparabola,
    TangencyGrid,
    make_exparabola,
    tangency_grid,
    cevian_point,
    opposite_vertex,
)

from exparabola_geom.cubic_roots import (
    CubicCoeffs,
    CubicRoots,
    RootKind,
    solve_cubic,
    max_exparabola_roots,
)

from exparabola_geom.focal import (
    FocalResult,
    SteinerInscribed,
    focal_triangle,
    x_exparabolas,
    h_invariant,
    steiner_inscribed_triangle,
)

from exparabola_geom.iteration import (
    FocalStep,
    LimitHexagon,
    iterate,
    contraction_ratio,
    limit_hexagon,
)

from exparabola_geom.report import InvariantCheck, Report

__all__ = [
    "__version__",
    "ExparabolaError",
    "GeometryError",
    "DegenerateTriangleError",
    "PointAtInfinityError",
    "DegenerateParabolaError",
    "InvalidParameterError",
    "NonAdmissiblePointError",
    "CoincidentRootsError",
    "CollinearityError",
    "ConvergedError",
    "NumericalError",
    "IterationCapError",
    "InputSpecError",
    "ConfigError",
    "ToleranceConfig",
    "load_config",
    "Vertex",
    "Vec2",
    "Point2",
    "Homogeneous3",
    "CanonicalFrame",
    "Triangle",
    "TriangleCenters",
    "centers",
    "bary_to_cartesian",
    "cartesian_to_bary",
    "affine_ratio",
    "admissible",
    "BezierParabola",
    "Line2",
    "Exparabola",
    "TangencyGrid",
    "make_exparabola",
    "tangency_grid",
    "cevian_point",
    "opposite_vertex",
    "CubicCoeffs",
    "CubicRoots",
    "RootKind",
    "solve_cubic",
    "max_exparabola_roots",
    "FocalResult",
    "SteinerInscribed",
    "focal_triangle",
    "x_exparabolas",
    "h_invariant",
    "steiner_inscribed_triangle",
    "FocalStep",
    "LimitHexagon",
    "iterate",
    "contraction_ratio",
    "limit_hexagon",
    "InvariantCheck",
    "Report",
]
