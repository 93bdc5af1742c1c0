"""Winding index of a plane field along a circle.

The index is the total turning of the field direction during one
counterclockwise circuit, in turns. Angle differences between successive
samples are taken to the nearest branch; a step is accepted only while it
stays under a quarter of the branch period (pi/2 for vector fields, pi/4
for direction fields), otherwise the arc is bisected recursively. The
closing sample reuses the first angle so the lift telescopes exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import NonConvergent, SingularOnCircuit
from .halfint import HalfIndex

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class Circle:
    center: tuple[float, float]
    radius: float

    def __post_init__(self):
        if not self.radius > 0.0:
            raise ValueError("radius must be positive")

    def point(self, t: float) -> tuple[float, float]:
        return (self.center[0] + self.radius * math.cos(t),
                self.center[1] + self.radius * math.sin(t))

    @property
    def reach(self) -> float:
        """Largest distance from the origin to a point of the circle."""
        return math.hypot(*self.center) + self.radius


@dataclass(frozen=True)
class WindingResult:
    index: HalfIndex
    raw_turns: float
    residual: float
    samples_used: int
    max_step: float


RESIDUAL_LIMIT = 0.01


def winding_index(field, circle: Circle, *, initial_samples: int = 64,
                  max_depth: int = 48, singular_tol: float | None = None
                  ) -> WindingResult:
    """Winding of ``field`` along ``circle``, counterclockwise.

    Vector fields round to the nearest integer, direction fields to the
    nearest half-integer. The rounding residual must stay under 0.01 turns
    or the computation is declared non-convergent.
    """
    if initial_samples < 4:
        raise ValueError("initial_samples must be at least 4")
    line = field.line
    period = math.pi if line else TWO_PI
    guard = period / 4.0
    if singular_tol is None:
        singular_tol = field.singular_tolerance(circle.reach)

    evaluations = 0
    max_step = 0.0

    def angle_at(t: float) -> float:
        nonlocal evaluations
        evaluations += 1
        x, y = circle.point(t)
        fx, fy = field.direction_at(x, y)
        if not line:
            if math.hypot(fx, fy) < singular_tol:
                raise SingularOnCircuit(
                    f"field magnitude below {singular_tol:g} on the circuit",
                    point=(x, y), angle=t)
        return math.atan2(fy, fx)

    def advance(t0: float, a0: float, t1: float, a1: float, depth: int) -> float:
        nonlocal max_step
        step = math.remainder(a1 - a0, period)
        if abs(step) < guard:
            if abs(step) > max_step:
                max_step = abs(step)
            return step
        if depth <= 0:
            raise NonConvergent(
                "angular step still exceeds the branch guard at maximum "
                "bisection depth", angle_interval=(t0, t1))
        tm = 0.5 * (t0 + t1)
        am = angle_at(tm)
        return (advance(t0, a0, tm, am, depth - 1)
                + advance(tm, am, t1, a1, depth - 1))

    knots = [TWO_PI * k / initial_samples for k in range(initial_samples)]
    angles = [angle_at(t) for t in knots]
    knots.append(TWO_PI)
    angles.append(angles[0])

    total = 0.0
    for k in range(initial_samples):
        total += advance(knots[k], angles[k], knots[k + 1], angles[k + 1],
                         max_depth)

    raw = total / TWO_PI
    if line:
        doubled = round(total / math.pi)
    else:
        doubled = 2 * round(raw)
    residual = abs(raw - doubled / 2.0)
    if residual >= RESIDUAL_LIMIT:
        raise NonConvergent(
            f"winding residual {residual:.3g} exceeds {RESIDUAL_LIMIT}",
            raw_turns=raw)
    return WindingResult(index=HalfIndex(doubled), raw_turns=raw,
                         residual=residual, samples_used=evaluations,
                         max_step=max_step)
