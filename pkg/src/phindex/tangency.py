"""Circle tangencies of a plane field and the index bookkeeping built on
them.

A tangency is a root of the radial component rho(phi) = f(p(phi)) . n(phi)
along a circle strictly enclosing the singularity. Roots are bracketed by
sign changes of a sign-continuous lift of rho and refined by bisection;
grazing contacts, which touch zero without a sign change, are hunted at the
extrema of rho via the exact derivative

    rho'(phi) = r * (J t) . n + f . t

and reported as degenerate. Each located tangency is classified by the
second derivative of the leaf's squared distance to the circle center,

    h'' = 2 * (f . f + (p - c) . (J f)),

internal when h'' < 0. The expression contains the field an even number of
times, so it is insensitive to the representative sign of direction fields.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field as dc_field
from typing import Sequence

from .errors import (CircuitIsLeaf, DegenerateTangency, InsufficientConcavities,
                     MethodDisagreement, MonotonicityViolation, ParityError,
                     PreconditionLoop, SingularOnCircuit)
from .fields import CatalogEntry
from .halfint import HalfIndex
from .winding import TWO_PI, Circle, WindingResult, winding_index


class TangencyKind(enum.Enum):
    INTERNAL = "internal"
    EXTERNAL = "external"


@dataclass(frozen=True)
class Tangency:
    angle: float
    point: tuple[float, float]
    kind: TangencyKind
    second_order: float


LEAF_TOL = 1e-9


@dataclass
class _Circuit:
    """Sampled state along the circle, with a sign-continuous lift."""

    field: object
    circle: Circle
    samples: int
    angles: list[float] = dc_field(default_factory=list)     # parameter values
    rho: list[float] = dc_field(default_factory=list)        # lifted radial part
    sign: list[float] = dc_field(default_factory=list)       # lift sign
    mag: list[float] = dc_field(default_factory=list)

    def build(self, singular_tol: float):
        cx, cy = self.circle.center
        r = self.circle.radius
        lift = None
        for k in range(self.samples):
            t = TWO_PI * k / self.samples
            nx, ny = math.cos(t), math.sin(t)
            px, py = cx + r * nx, cy + r * ny
            fx, fy = self.field.direction_at(px, py)
            m = math.hypot(fx, fy)
            if not self.field.line and m < singular_tol:
                raise SingularOnCircuit(
                    f"field magnitude below {singular_tol:g} on the circuit",
                    point=(px, py), angle=t)
            a = math.atan2(fy, fx)
            if lift is None:
                lift = a
                s = 1.0
            elif self.field.line:
                lift = lift + math.remainder(a - lift, math.pi)
                s = 1.0 if abs(math.remainder(a - lift, TWO_PI)) < 0.5 * math.pi else -1.0
            else:
                s = 1.0
            self.angles.append(t)
            self.sign.append(s)
            self.mag.append(m)
            self.rho.append(s * (fx * nx + fy * ny))

    def rho_at(self, t: float, ref_dir: tuple[float, float]) -> float:
        cx, cy = self.circle.center
        r = self.circle.radius
        nx, ny = math.cos(t), math.sin(t)
        fx, fy = self.field.direction_at(cx + r * nx, cy + r * ny)
        if self.field.line and fx * ref_dir[0] + fy * ref_dir[1] < 0.0:
            fx, fy = -fx, -fy
        return fx * nx + fy * ny

    def dir_at(self, k: int) -> tuple[float, float]:
        t = self.angles[k]
        cx, cy = self.circle.center
        r = self.circle.radius
        fx, fy = self.field.direction_at(cx + r * math.cos(t), cy + r * math.sin(t))
        return (self.sign[k] * fx, self.sign[k] * fy)

    def drho_at(self, t: float, ref_dir: tuple[float, float]) -> float:
        cx, cy = self.circle.center
        r = self.circle.radius
        nx, ny = math.cos(t), math.sin(t)
        tx, ty = -ny, nx
        px, py = cx + r * nx, cy + r * ny
        fx, fy = self.field.direction_at(px, py)
        s = 1.0
        if self.field.line and fx * ref_dir[0] + fy * ref_dir[1] < 0.0:
            s = -1.0
        (jxx, jxy), (jyx, jyy) = self.field.jacobian_at(px, py)
        jt_n = (jxx * tx + jxy * ty) * nx + (jyx * tx + jyy * ty) * ny
        return s * (r * jt_n + fx * tx + fy * ty)


def _second_order(field, point, center) -> float:
    px, py = point
    fx, fy = field.direction_at(px, py)
    (jxx, jxy), (jyx, jyy) = field.jacobian_at(px, py)
    jfx = jxx * fx + jxy * fy
    jfy = jyx * fx + jyy * fy
    return 2.0 * (fx * fx + fy * fy + (px - center[0]) * jfx + (py - center[1]) * jfy)


def _second_order_scale(field, point, center) -> float:
    px, py = point
    fx, fy = field.direction_at(px, py)
    (jxx, jxy), (jyx, jyy) = field.jacobian_at(px, py)
    jfx = jxx * fx + jxy * fy
    jfy = jyx * fx + jyy * fy
    pc = math.hypot(px - center[0], py - center[1])
    return 2.0 * (fx * fx + fy * fy + pc * math.hypot(jfx, jfy))


def find_tangencies(field, circle: Circle, *, samples: int = 720,
                    root_tol: float = 1e-10, degen_tol: float = 1e-9,
                    graze_tol: float = 1e-7,
                    singular_tol: float | None = None) -> list[Tangency]:
    """All tangencies of the field with the circle, sorted by angle.

    Raises CircuitIsLeaf when the radial component vanishes along the whole
    circle, SingularOnCircuit when the field dies on it, and
    DegenerateTangency for contacts with |h''| below tolerance (including
    grazing contacts that produce no sign change).
    """
    if samples < 16:
        raise ValueError("samples must be at least 16")
    if singular_tol is None:
        singular_tol = field.singular_tolerance(circle.reach)

    state = _Circuit(field, circle, samples)
    state.build(singular_tol)

    rho_scale = max(abs(v) for v in state.rho)
    mag_scale = max(state.mag)
    if rho_scale <= LEAF_TOL * mag_scale:
        raise CircuitIsLeaf(
            "the radial component vanishes along the whole circle; every "
            "point is a tangency. Offset the circle center to obtain a "
            "census.", radius=circle.radius)

    n = samples
    step = TWO_PI / n
    roots: list[float] = []

    def close_to_known(t: float) -> bool:
        return any(
            min(abs(t - u), TWO_PI - abs(t - u)) < 1e-6 for u in roots)

    # Grid zeros count as roots outright.
    for k in range(n):
        if state.rho[k] == 0.0:
            roots.append(state.angles[k])

    # Sign-change brackets, refined by bisection on the lifted rho.
    for k in range(n):
        r0 = state.rho[k]
        r1 = state.rho[(k + 1) % n]
        if r0 == 0.0 or r1 == 0.0:
            continue
        t0 = state.angles[k]
        t1 = t0 + step
        if k + 1 == n:
            # Close the lift against the direction at the last knot.
            r1 = state.rho_at(TWO_PI, state.dir_at(k))
            if r1 == 0.0:
                continue
        if r0 * r1 > 0.0:
            continue
        ref = state.dir_at(k)
        lo, hi, rlo = t0, t1, r0
        while hi - lo > root_tol:
            mid = 0.5 * (lo + hi)
            rm = state.rho_at(mid, ref)
            if rm == 0.0:
                lo = hi = mid
                break
            if (rm > 0.0) == (rlo > 0.0):
                lo, rlo = mid, rm
            else:
                hi = mid
        t_root = (0.5 * (lo + hi)) % TWO_PI
        if not close_to_known(t_root):
            roots.append(t_root)

    # Grazing contacts: extrema of rho where |rho| nearly vanishes produce
    # no sign change. Bracket the extrema with the exact derivative.
    for k in range(n):
        ref = state.dir_at(k)
        d0 = state.drho_at(state.angles[k], ref)
        d1 = state.drho_at(state.angles[k] + step, ref)
        if d0 == 0.0 or d0 * d1 > 0.0:
            continue
        lo, hi, dlo = state.angles[k], state.angles[k] + step, d0
        while hi - lo > root_tol:
            mid = 0.5 * (lo + hi)
            dm = state.drho_at(mid, ref)
            if dm == 0.0:
                lo = hi = mid
                break
            if (dm > 0.0) == (dlo > 0.0):
                lo, dlo = mid, dm
            else:
                hi = mid
        t_ext = (0.5 * (lo + hi)) % TWO_PI
        if close_to_known(t_ext):
            continue
        if abs(state.rho_at(t_ext % TWO_PI, ref)) <= graze_tol * rho_scale:
            point = circle.point(t_ext)
            raise DegenerateTangency(
                "grazing leaf contact without a sign change; perturb the "
                "circle radius", angle=t_ext,
                second_order=_second_order(field, point, circle.center))

    out = []
    for t in sorted(roots):
        point = circle.point(t)
        h2 = _second_order(field, point, circle.center)
        scale = _second_order_scale(field, point, circle.center)
        if abs(h2) <= degen_tol * max(scale, 1e-300):
            raise DegenerateTangency(
                "second-order contact term vanishes at a tangency; perturb "
                "the circle radius", angle=t, second_order=h2)
        kind = TangencyKind.INTERNAL if h2 < 0.0 else TangencyKind.EXTERNAL
        out.append(Tangency(angle=t, point=point, kind=kind, second_order=h2))
    return out


def census_counts(tangencies: Sequence[Tangency]) -> tuple[int, int]:
    internal = sum(1 for t in tangencies if t.kind is TangencyKind.INTERNAL)
    return internal, len(tangencies) - internal


# ------------------------------------------------------------- index formulas

def bendixson_index(internal: int, external: int) -> HalfIndex:
    """j = 1 + (I - E)/2 from a tangency census."""
    if internal < 0 or external < 0:
        raise ValueError("tangency counts must be nonnegative")
    return HalfIndex(2 + internal - external)


def hamburger_index(convex: int, concave: int) -> HalfIndex:
    """j = 1 - (c - c')/4 from the convexity counts of a tagged circuit.

    c and c' must have equal parity, otherwise the value is not a
    half-integer.
    """
    if convex < 0 or concave < 0:
        raise ValueError("vertex counts must be nonnegative")
    if (convex - concave) % 2 != 0:
        raise ParityError(
            f"convexity counts ({convex}, {concave}) of different parity do "
            "not give a half-integer")
    return HalfIndex(2 - (convex - concave) // 2)


# ------------------------------------------------------------ tagged circuits

class VertexTag(enum.Enum):
    CONVEX = "convex"
    CONCAVE = "concave"


class ArcKind(enum.Enum):
    LEAF = "leaf"
    CROSS = "cross"


@dataclass(frozen=True)
class TaggedCircuit:
    """Vertex/arc bookkeeping of a piecewise circuit: arc k joins vertex k
    to vertex k+1 (cyclically). A smooth transversal circle has no vertices
    and no arcs."""

    vertices: tuple[VertexTag, ...]
    arcs: tuple[ArcKind, ...]

    def __post_init__(self):
        if len(self.vertices) != len(self.arcs):
            raise ValueError("a cyclic circuit has as many arcs as vertices")

    @property
    def convex(self) -> int:
        return sum(1 for v in self.vertices if v is VertexTag.CONVEX)

    @property
    def concave(self) -> int:
        return sum(1 for v in self.vertices if v is VertexTag.CONCAVE)

    @classmethod
    def from_counts(cls, convex: int, concave: int) -> "TaggedCircuit":
        if convex < 0 or concave < 0:
            raise ValueError("vertex counts must be nonnegative")
        vertices = (VertexTag.CONVEX,) * convex + (VertexTag.CONCAVE,) * concave
        return cls(vertices, (ArcKind.CROSS,) * len(vertices))


def circuit_from_tangencies(tangencies: Sequence[Tangency]) -> TaggedCircuit:
    """Push the circle off each tangency into a horseshoe around the leaf
    contact. Every external tangency contributes two convex corners, every
    internal one two concave corners; the replaced piece between a corner
    pair is a leaf arc, the circle pieces between tangencies stay
    transversal."""
    vertices: list[VertexTag] = []
    arcs: list[ArcKind] = []
    for t in sorted(tangencies, key=lambda t: t.angle):
        tag = (VertexTag.CONCAVE if t.kind is TangencyKind.INTERNAL
               else VertexTag.CONVEX)
        vertices.extend((tag, tag))
        arcs.extend((ArcKind.LEAF, ArcKind.CROSS))
    return TaggedCircuit(tuple(vertices), tuple(arcs))


# -------------------------------------------------------------------- surgery

@dataclass(frozen=True)
class SurgeryStep:
    """One concavity-removal surgery.

    Scenario A trades two concavities for one convexity and one concavity;
    scenario B trades two concavities for two convexities. The extra-lost
    counts record corners destroyed as side effects; they only ever lower
    the totals.
    """

    scenario: str
    extra_convex_lost: int = 0
    extra_concave_lost: int = 0

    def __post_init__(self):
        if self.scenario not in ("A", "B"):
            raise ValueError("scenario must be 'A' or 'B'")
        if self.extra_convex_lost < 0 or self.extra_concave_lost < 0:
            raise ValueError("extra losses cannot be negative")


@dataclass(frozen=True)
class SurgeryReplayResult:
    trace: tuple[tuple[int, int], ...]
    bound: HalfIndex | None
    bound_holds: bool | None


def surgery_replay(start: TaggedCircuit | tuple[int, int],
                   steps: Sequence[SurgeryStep | str]) -> SurgeryReplayResult:
    """Replay a declared surgery sequence on the (convex, concave) ledger.

    Scenario A removes one concavity net (and needs one to act on),
    scenario B removes two. Every step strictly decreases the concavity
    count; the replay halts as soon as no concavities remain, and then
    reports the bound 1 - c/4 <= 1.
    """
    if isinstance(start, TaggedCircuit):
        c, cp = start.convex, start.concave
    else:
        c, cp = start
        if c < 0 or cp < 0:
            raise ValueError("vertex counts must be nonnegative")
    trace = [(c, cp)]
    for k, raw in enumerate(steps):
        if cp == 0:
            break
        step = SurgeryStep(raw) if isinstance(raw, str) else raw
        needed = 1 if step.scenario == "A" else 2
        if cp < needed:
            raise InsufficientConcavities(
                f"step {k} (scenario {step.scenario}) needs {needed} "
                f"concavities, state has {cp}", step=k, state=(c, cp))
        if step.scenario == "A":
            nc = c + 1 - step.extra_convex_lost
            ncp = cp - 1 - step.extra_concave_lost
        else:
            nc = c + 2 - step.extra_convex_lost
            ncp = cp - 2 - step.extra_concave_lost
        if nc < 0 or ncp < 0:
            raise MonotonicityViolation(
                f"step {k} ({step.scenario}) drives the ledger negative: "
                f"({nc}, {ncp})", step=k, state=(nc, ncp))
        if ncp >= cp:
            raise MonotonicityViolation(
                f"step {k} does not decrease the concavity count", step=k,
                state=(nc, ncp))
        c, cp = nc, ncp
        trace.append((c, cp))
    if cp == 0:
        bound = hamburger_index(c, 0)
        return SurgeryReplayResult(tuple(trace), bound, bound <= 1)
    return SurgeryReplayResult(tuple(trace), None, None)


# ------------------------------------------------------------ loop-free bound

@dataclass(frozen=True)
class LoopFreeReport:
    name: str
    index: HalfIndex
    passed: bool


def loop_free_bound_check(entry: CatalogEntry, circle: Circle | None = None,
                          **winding_opts) -> LoopFreeReport:
    """For a singularity without leaf loops the index is at most 1."""
    if entry.has_loops:
        raise PreconditionLoop(
            f"catalog entry {entry.name!r} has leaves looping at the "
            "singularity; the loop-free bound does not apply", name=entry.name)
    if circle is None:
        circle = Circle((0.0, 0.0), 1.0)
    result = winding_index(entry.field, circle, **winding_opts)
    return LoopFreeReport(entry.name, result.index, result.index <= 1)


# -------------------------------------------------------------- cross-checks

LEAF_FALLBACK_OFFSET = 0.3


@dataclass(frozen=True)
class CrossCheckResult:
    winding: WindingResult
    tangencies: tuple[Tangency, ...]
    census_circle: Circle
    internal: int
    external: int
    bendixson: HalfIndex
    hamburger: HalfIndex
    circuit: TaggedCircuit
    agree: bool


def cross_check_index(field, circle: Circle, *, samples: int = 720,
                      **winding_opts) -> CrossCheckResult:
    """Compute the index by winding, by the tangency census, and by the
    convexity count of the pushed circuit, and insist they agree.

    When the given circle is itself a leaf (a center's circular orbit) the
    census is retaken on a circle of the same radius whose center is offset
    by 0.3 r, which still encloses the singularity.
    """
    wind = winding_index(field, circle, **winding_opts)
    census_circle = circle
    try:
        tangencies = find_tangencies(field, census_circle, samples=samples)
    except CircuitIsLeaf:
        census_circle = Circle((circle.center[0] + LEAF_FALLBACK_OFFSET * circle.radius,
                                circle.center[1]), circle.radius)
        tangencies = find_tangencies(field, census_circle, samples=samples)
    internal, external = census_counts(tangencies)
    bend = bendixson_index(internal, external)
    circuit = circuit_from_tangencies(tangencies)
    ham = hamburger_index(circuit.convex, circuit.concave)
    agree = wind.index == bend == ham
    if not agree:
        raise MethodDisagreement(
            f"winding {wind.index}, census {bend}, convexity count {ham} "
            "disagree", winding=str(wind.index), bendixson=str(bend),
            hamburger=str(ham))
    return CrossCheckResult(winding=wind, tangencies=tuple(tangencies),
                            census_circle=census_circle, internal=internal,
                            external=external, bendixson=bend, hamburger=ham,
                            circuit=circuit, agree=agree)
