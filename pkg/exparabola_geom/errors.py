"""
Exception hierarchy for exparabola geometry.

Every error raised on purpose by this package derives from ExparabolaError.
The command-line front-end maps the subclasses onto its exit codes.
"""


class ExparabolaError(Exception):
    """Base class for all package errors."""


class GeometryError(ExparabolaError, ValueError):
    """Invalid geometric input (rejected before any computation)."""


class DegenerateTriangleError(GeometryError):
    """Triangle with (near) zero area."""


class PointAtInfinityError(GeometryError):
    """Homogeneous coordinates whose sum vanishes."""


class DegenerateParabolaError(GeometryError):
    """Bezier control points that are (near) collinear."""


class InvalidParameterError(GeometryError):
    """Tangency parameter t too close to 0 or 1."""


class NonAdmissiblePointError(GeometryError):
    """Point X outside the region bounded by the anticomplementary triangle."""


class CoincidentRootsError(GeometryError):
    """Two of the three exparabolas coincide, the focal triangle is undefined."""


class CollinearityError(GeometryError):
    """Points expected to be collinear are not (or a ratio is infinite)."""


class ConvergedError(GeometryError):
    """Quantity undefined because the iteration already reached its limit."""


class NumericalError(ExparabolaError, ArithmeticError):
    """Internal numerical failure; indicates lost precision, not bad input."""


class IterationCapError(NumericalError):
    """Iteration did not converge within the allowed number of steps."""

    def __init__(self, message: str, steps: int, last_deviation: float):
        super().__init__(message)
        self.steps = steps
        self.last_deviation = last_deviation


class InputSpecError(ExparabolaError, ValueError):
    """Malformed command-line or JSON input."""


class ConfigError(InputSpecError):
    """Malformed configuration file."""
