"""Nash bargaining on the quarter disk ``v1^2 + v2^2 <= 1, v >= 0``.

The solution Q on the unit circle is where the segment from the
disagreement point P makes the same angle with the x-axis as OQ makes with
the y-axis. The solution is generally irrational, so this is the one
floating-point solver in the package.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from ..errors import GameInputError, InfeasibleGameError

MAX_BISECTIONS = 200


@dataclass(frozen=True)
class CirclePoint:
    x: float
    y: float
    residual: float  # |(2y^2 - c2 y - 1)^2 - c1^2 (1 - y^2)|


def quartic_residual(c1: float, c2: float, y: float) -> float:
    return abs((2 * y * y - c2 * y - 1) ** 2 - c1 * c1 * (1 - y * y))


def angle_gap(c1: float, c2: float, phi: float) -> float:
    """Angle of PQ with the x-axis minus angle of OQ with the y-axis, Q at polar angle phi."""
    qx, qy = math.cos(phi), math.sin(phi)
    return math.atan2(qy - c2, qx - c1) - (math.pi / 2 - phi)


def solve_circle(c1: float, c2: float, tol: float = 1e-12) -> CirclePoint:
    """Bisect the angle gap over the arc where ``x > c1`` and ``y > c2``.

    The gap is negative where the arc meets ``y = c2`` and positive where
    it meets ``x = c1``, and crosses zero once. The bracket is shrunk
    below ``tol`` times ``min(1, (x - c1)^2, (y - c2)^2)`` so that the
    slope of PQ, which is badly conditioned near the rim, is also good to
    about ``tol``.
    """
    c1, c2 = float(c1), float(c2)
    if not (math.isfinite(c1) and math.isfinite(c2)) or tol <= 0:
        raise GameInputError("c1, c2 must be finite and tol positive")
    if c1 < 0 or c2 < 0:
        raise GameInputError("disagreement utilities must be >= 0")
    if c1 * c1 + c2 * c2 >= 1:
        raise InfeasibleGameError("disagreement point is not inside the unit disk", c1=c1, c2=c2)
    lo, hi = math.asin(c2), math.acos(c1)
    for _ in range(MAX_BISECTIONS):
        mid = 0.5 * (lo + hi)
        dx, dy = math.cos(mid) - c1, math.sin(mid) - c2
        if hi - lo <= tol * min(1.0, dx * dx, dy * dy) or mid in (lo, hi):
            break
        if angle_gap(c1, c2, mid) < 0:
            lo = mid
        else:
            hi = mid
    phi = 0.5 * (lo + hi)
    x, y = math.cos(phi), math.sin(phi)
    return CirclePoint(x, y, quartic_residual(c1, c2, y))
