"""
Real cubic solving and the cubics whose roots select exparabolas.

The solver works on the depressed monic form and picks the trigonometric
method when all three roots are real and the sign-stable Cardano formula
otherwise; every root is then polished with guarded Newton steps on the
original coefficients.

Two families of cubics are built from triangle data:

- e_a, e_b, e_c: stationary parameters of the squared parameter, i.e. the
  max-exparabolas opposite A, B and C.
- f: parameters of the exparabolas whose axis passes through a point X.
"""

from dataclasses import dataclass
from enum import Enum
import logging
import math
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from exparabola_geom.core_geometry import Homogeneous3, Triangle
from exparabola_geom.errors import GeometryError, NumericalError

logger = logging.getLogger(__name__)

# |k3| <= LEADING_TOLERANCE * max|k_i| degrades the cubic to a quadratic
LEADING_TOLERANCE = 1e-14
# |discriminant| within this fraction of its scale counts as a multiple root
CLUSTER_TOLERANCE = 1e-12
NEWTON_STEPS = 2


class RootKind(Enum):
    THREE_REAL = "three-real"
    ONE_REAL_COMPLEX_PAIR = "one-real-one-complex-pair"
    QUADRATIC = "quadratic"


@dataclass(frozen=True)
class CubicCoeffs:
    """
    Polynomial k3 t^3 + k2 t^2 + k1 t + k0.

    Attributes:
        k3, k2, k1, k0: Coefficients from the cubic term down
    """
    k3: float
    k2: float
    k1: float
    k0: float

    def __post_init__(self):
        if not all(math.isfinite(k) for k in self.as_tuple()):
            raise GeometryError(f"Cubic coefficients must be finite: {self.as_tuple()}")

    def as_tuple(self) -> Tuple[float, float, float, float]:
        return (self.k3, self.k2, self.k1, self.k0)

    def max_abs(self) -> float:
        return max(abs(k) for k in self.as_tuple())

    def evaluate(self, t):
        """Horner evaluation; works for real and complex t."""
        return ((self.k3 * t + self.k2) * t + self.k1) * t + self.k0

    def derivative(self, t):
        return (3 * self.k3 * t + 2 * self.k2) * t + self.k1

    def scale(self, factor: float) -> 'CubicCoeffs':
        return CubicCoeffs(*(factor * k for k in self.as_tuple()))

    def leading_degenerate(self, tol: float = LEADING_TOLERANCE) -> bool:
        """True when the cubic term is negligible against the other coefficients."""
        return abs(self.k3) <= tol * self.max_abs()


@dataclass(frozen=True)
class CubicRoots:
    """
    Roots of a real cubic.

    Attributes:
        kind: Root configuration
        reals: Real roots, ascending
        complex_pair: (re, im) with im > 0 of the conjugate pair, if any
        clustered: Discriminant numerically zero (multiple root)
        quadratic_fallback: Leading coefficient vanished; roots are those of the quadratic part
    """
    kind: RootKind
    reals: Tuple[float, ...]
    complex_pair: Optional[Tuple[float, float]] = None
    clustered: bool = False
    quadratic_fallback: bool = False

    def all_roots(self) -> List[complex]:
        """Real roots ascending, then the complex pair with the positive imaginary part first."""
        roots = [complex(r, 0.0) for r in self.reals]
        if self.complex_pair is not None:
            re, im = self.complex_pair
            roots.extend([complex(re, im), complex(re, -im)])
        return roots

    def to_dict(self) -> Dict[str, object]:
        return {
            "kind": self.kind.value,
            "reals": list(self.reals),
            "complex_pair": list(self.complex_pair) if self.complex_pair else None,
            "clustered": self.clustered,
            "quadratic_fallback": self.quadratic_fallback,
        }


def _polish(coeffs: CubicCoeffs, root, steps: int = NEWTON_STEPS):
    """Newton steps on the original polynomial, kept only when |f| decreases."""
    value = coeffs.evaluate(root)
    for _ in range(steps):
        slope = coeffs.derivative(root)
        if slope == 0:
            break
        candidate = root - value / slope
        candidate_value = coeffs.evaluate(candidate)
        if abs(candidate_value) >= abs(value):
            break
        root, value = candidate, candidate_value
    return root


def _solve_quadratic(coeffs: CubicCoeffs) -> CubicRoots:
    _, a, b, c = coeffs.as_tuple()
    scale = coeffs.max_abs()
    if abs(a) <= LEADING_TOLERANCE * scale:
        if abs(b) <= LEADING_TOLERANCE * scale:
            raise GeometryError(f"Polynomial {coeffs.as_tuple()} has no roots to solve for")
        logger.warning("Cubic %s degenerates to a linear polynomial", coeffs.as_tuple())
        return CubicRoots(RootKind.QUADRATIC, (-c / b,), quadratic_fallback=True)

    disc = b * b - 4 * a * c
    if disc < 0:
        re, im = -b / (2 * a), math.sqrt(-disc) / (2 * abs(a))
        return CubicRoots(RootKind.QUADRATIC, (), (re, im), quadratic_fallback=True)
    # avoid cancellation: one root from the larger-magnitude expression, the other via the product
    w = -0.5 * (b + math.copysign(math.sqrt(disc), b))
    if w == 0:
        roots = (0.0, 0.0)
    else:
        roots = tuple(sorted((w / a, c / w)))
    return CubicRoots(RootKind.QUADRATIC, roots, clustered=disc == 0, quadratic_fallback=True)


def solve_cubic(coeffs: CubicCoeffs) -> CubicRoots:
    """
    Solve k3 t^3 + k2 t^2 + k1 t + k0 = 0.

    Args:
        coeffs: Cubic coefficients

    Returns:
        CubicRoots with real roots ascending. A negligible leading coefficient
        falls back to the quadratic part (flagged, kind QUADRATIC), a
        discriminant within CLUSTER_TOLERANCE of zero reports three real
        roots flagged as clustered.
    """
    if coeffs.leading_degenerate():
        logger.warning("Leading coefficient of %s negligible, solving the quadratic part",
                       coeffs.as_tuple())
        return _solve_quadratic(coeffs)

    k3, k2, k1, k0 = coeffs.as_tuple()
    b, c, d = k2 / k3, k1 / k3, k0 / k3
    shift = -b / 3
    p = c - b * b / 3
    q = 2 * b ** 3 / 27 - b * c / 3 + d
    half_q = q / 2
    disc = half_q * half_q + (p / 3) ** 3
    disc_scale = half_q * half_q + abs(p / 3) ** 3
    clustered = abs(disc) <= CLUSTER_TOLERANCE * disc_scale

    if disc < 0 and not clustered:
        logger.debug("Three distinct real roots (trigonometric branch), disc=%.3g", disc)
        m = 2 * math.sqrt(-p / 3)
        argument = (3 * q / (2 * p)) * math.sqrt(-3 / p)
        theta = math.acos(max(-1.0, min(1.0, argument))) / 3
        depressed = [m * math.cos(theta - 2 * math.pi * k / 3) for k in range(3)]
        reals = sorted(_polish(coeffs, s + shift) for s in depressed)
        return CubicRoots(RootKind.THREE_REAL, tuple(reals))

    if clustered:
        logger.warning("Cubic %s has a (near) multiple root, disc=%.3g", coeffs.as_tuple(), disc)
        if disc < 0:
            m = 2 * math.sqrt(-p / 3)
            argument = (3 * q / (2 * p)) * math.sqrt(-3 / p)
            theta = math.acos(max(-1.0, min(1.0, argument))) / 3
            depressed = [m * math.cos(theta - 2 * math.pi * k / 3) for k in range(3)]
        else:
            # exact for a vanishing discriminant: simple root 2r, double root -r
            r = float(np.cbrt(-half_q))
            depressed = [2 * r, -r, -r]
        reals = sorted(_polish(coeffs, s + shift) for s in depressed)
        return CubicRoots(RootKind.THREE_REAL, tuple(reals), clustered=True)

    logger.debug("One real root and a complex pair (Cardano branch), disc=%.3g", disc)
    sign = 1.0 if q >= 0 else -1.0
    big = -sign * float(np.cbrt(abs(half_q) + math.sqrt(disc)))
    small = -p / (3 * big) if big != 0 else 0.0
    real = _polish(coeffs, big + small + shift)

    # deflate the monic cubic by (t - real)
    linear = b + real
    constant = c + real * linear
    re = -linear / 2
    im_sq = constant - re * re
    pair = complex(re, math.sqrt(max(im_sq, 0.0)))
    pair = _polish(coeffs, pair)
    return CubicRoots(RootKind.ONE_REAL_COMPLEX_PAIR, (real,),
                      (pair.real, abs(pair.imag)))


def vieta_residual(coeffs: CubicCoeffs, roots: CubicRoots) -> float:
    """
    Largest coefficient mismatch of k3 * prod(t - t_i), relative to max|k_i|.

    Quadratic fallbacks are compared against the quadratic part only.
    """
    found = roots.all_roots()
    target = np.array(coeffs.as_tuple(), dtype=float)
    if roots.quadratic_fallback:
        leading = coeffs.k2 if len(found) == 2 else coeffs.k1
        rebuilt = leading * np.poly(found)
        target = target[len(target) - len(rebuilt):]
    else:
        rebuilt = coeffs.k3 * np.poly(found)
    return float(np.max(np.abs(rebuilt - target)) / coeffs.max_abs())


def root_residuals(coeffs: CubicCoeffs, roots: CubicRoots) -> List[float]:
    """|f(t_i)| / (max|k_i| * max(1, |t_i|)^3) for every root."""
    scale = coeffs.max_abs()
    return [abs(coeffs.evaluate(r)) / (scale * max(1.0, abs(r)) ** 3)
            for r in roots.all_roots()]


def max_cubic_coeffs(tri: Triangle, side: str) -> CubicCoeffs:
    """
    Coefficients of e_a, e_b or e_c.

    e_c = 2c^2 t^3 + (a^2 - b^2 - 3c^2) t^2 - (3a^2 + b^2 - c^2) t + 2a^2;
    e_a and e_b follow by the cyclic substitutions (a, b, c) -> (b, c, a)
    and (a, b, c) -> (c, a, b). The roots of e_c parametrize the
    max-exparabolas on the AB side; those of e_a are 1 - 1/t_i and those of
    e_b are 1/(1 - t_i).
    """
    a2, b2, c2 = tri.side_lengths_squared()
    permutations = {"c": (a2, b2, c2), "a": (b2, c2, a2), "b": (c2, a2, b2)}
    if side not in permutations:
        raise GeometryError(f"Side must be 'a', 'b' or 'c', got {side!r}")
    p, q, r = permutations[side]
    return CubicCoeffs(2 * r, p - q - 3 * r, -(3 * p + q - r), 2 * p)


def canonical_e_coeffs(tri: Triangle) -> CubicCoeffs:
    """
    The cubic e = e_c / 2 written in the canonical coordinates c, c1, c2.
    """
    frame = tri.canonical_frame()
    c, c1, c2 = frame.c, frame.c1, frame.c2
    return CubicCoeffs(
        c * c,
        -c * (c + c1),
        -c * c + 3 * c * c1 - 2 * c1 * c1 - 2 * c2 * c2,
        c * c - 2 * c * c1 + c1 * c1 + c2 * c2,
    )


def axis_cubic_coeffs(tri: Triangle, X: Homogeneous3) -> CubicCoeffs:
    """
    Coefficients of f, whose roots parametrize the exparabolas with axis through X.

    f = c^2(x0+x1) t^3 + ((a^2-b^2) x2 - (2x0+x1) c^2) t^2
        + ((c^2-b^2) x0 - (2x2+x1) a^2) t + a^2 (x1+x2)

    with X normalized to x0 + x1 + x2 = 1. For the centroid f = e_c / 3.

    Raises:
        PointAtInfinityError: if X is a point at infinity
    """
    x0, x1, x2 = X.normalized().as_tuple()
    a2, b2, c2 = tri.side_lengths_squared()
    coeffs = CubicCoeffs(
        c2 * (x0 + x1),
        (a2 - b2) * x2 - (2 * x0 + x1) * c2,
        (c2 - b2) * x0 - (2 * x2 + x1) * a2,
        a2 * (x1 + x2),
    )
    if coeffs.leading_degenerate():
        logger.warning("x0 + x1 = %.3g: axis cubic for %s degenerates to a quadratic",
                       x0 + x1, X)
    return coeffs


def check_interlacing(roots: Sequence[float]) -> bool:
    """t0 < 0 < t1 < 1 < t2."""
    t0, t1, t2 = roots
    return t0 < 0 < t1 < 1 < t2


def max_exparabola_roots(tri: Triangle) -> Tuple[float, float, float]:
    """
    Parameters (t0, t1, t2) of the three max-exparabolas, sorted.

    Raises:
        NumericalError: if e_c does not yield three interlaced real roots
    """
    coeffs = max_cubic_coeffs(tri, "c")
    roots = solve_cubic(coeffs)
    if roots.kind is not RootKind.THREE_REAL or not check_interlacing(roots.reals):
        raise NumericalError(
            f"Roots {roots.all_roots()} of e_c = {coeffs.as_tuple()} violate "
            f"t0 < 0 < t1 < 1 < t2 for {tri}")
    t0, t1, t2 = roots.reals
    return (t0, t1, t2)
