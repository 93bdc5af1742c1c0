"""Tangency census, both index formulas, circuits, surgery replay.

Census expectations (angles, kinds, second-order values) were frozen from
the leaf-integration reference in tests/oracles/leafref, which classifies
tangencies by actually integrating the leaf through the contact point.
"""

import math
import random

import pytest

from phindex.errors import (
    CircuitIsLeaf,
    DegenerateTangency,
    InsufficientConcavities,
    MonotonicityViolation,
    ParityError,
    PreconditionLoop,
    SingularOnCircuit,
)
from phindex.fields import catalog_get, catalog_names, polynomial_field
from phindex.halfint import HalfIndex
from phindex.tangency import (
    ArcKind,
    SurgeryStep,
    TaggedCircuit,
    TangencyKind,
    VertexTag,
    bendixson_index,
    census_counts,
    circuit_from_tangencies,
    cross_check_index,
    find_tangencies,
    hamburger_index,
    loop_free_bound_check,
    surgery_replay,
)
from phindex.winding import Circle

UNIT = Circle((0.0, 0.0), 1.0)

# name -> tuple of (angle, kind, second_order) on the unit circle
FROZEN_CENSUS = {
    "node": (),
    "saddle": tuple((math.pi / 4 + k * math.pi / 2, TangencyKind.EXTERNAL, 4.0)
                    for k in range(4)),
    "dipole": ((math.pi / 2, TangencyKind.INTERNAL, -2.0),
               (3 * math.pi / 2, TangencyKind.INTERNAL, -2.0)),
    "monkey-saddle": tuple((math.pi / 6 + k * math.pi / 3,
                            TangencyKind.EXTERNAL, 6.0) for k in range(6)),
    "lemon": ((math.pi, TangencyKind.EXTERNAL, 1.0),),
    "tripod": ((math.pi / 3, TangencyKind.EXTERNAL, 3.0),
               (math.pi, TangencyKind.EXTERNAL, 3.0),
               (5 * math.pi / 3, TangencyKind.EXTERNAL, 3.0)),
    "star": ((math.pi, TangencyKind.INTERNAL, -1.0),),
}


def test_frozen_censuses():
    for name, expected in FROZEN_CENSUS.items():
        entry = catalog_get(name)
        tangencies = find_tangencies(entry.field, UNIT)
        assert len(tangencies) == len(expected), name
        for t, (angle, kind, h2) in zip(tangencies, expected):
            assert t.angle == pytest.approx(angle, abs=1e-6), name
            assert t.kind is kind, name
            assert t.second_order == pytest.approx(h2, rel=1e-6), name


def test_saddle_census_in_detail():
    tangencies = find_tangencies(catalog_get("saddle").field, UNIT)
    assert len(tangencies) == 4
    for k, t in enumerate(tangencies):
        assert t.angle == pytest.approx(math.pi / 4 + k * math.pi / 2,
                                        abs=1e-6)
        assert t.kind is TangencyKind.EXTERNAL
    internal, external = census_counts(tangencies)
    assert (internal, external) == (0, 4)
    assert bendixson_index(internal, external) == HalfIndex(-2)


def test_census_is_sorted_by_angle():
    tangencies = find_tangencies(catalog_get("monkey-saddle").field, UNIT)
    angles = [t.angle for t in tangencies]
    assert angles == sorted(angles)


def test_rotation_circle_is_leaf():
    with pytest.raises(CircuitIsLeaf):
        find_tangencies(catalog_get("rotation").field, UNIT)


def test_rotation_census_on_offset_circle():
    offset = Circle((0.3, 0.0), 1.0)
    tangencies = find_tangencies(catalog_get("rotation").field, offset)
    assert [t.kind for t in tangencies] == [TangencyKind.EXTERNAL,
                                            TangencyKind.INTERNAL]
    assert tangencies[0].angle == pytest.approx(0.0, abs=1e-6)
    assert tangencies[1].angle == pytest.approx(math.pi, abs=1e-6)
    assert tangencies[0].second_order == pytest.approx(0.78, rel=1e-6)
    assert tangencies[1].second_order == pytest.approx(-0.42, rel=1e-6)
    internal, external = census_counts(tangencies)
    assert bendixson_index(internal, external) == HalfIndex(2)


def test_singular_point_on_circle_detected():
    with pytest.raises(SingularOnCircuit):
        find_tangencies(catalog_get("node").field, Circle((1.0, 0.0), 1.0))


def test_degenerate_grazing_contact():
    # rho on the unit circle is (1 - y)^2: a double root at the top, with
    # no sign change, which the extremum scan must still catch.
    field = polynomial_field("-y + x*(1 - y)^2", "x + y*(1 - y)^2")
    with pytest.raises(DegenerateTangency):
        find_tangencies(field, UNIT)


def test_degenerate_higher_order_root():
    # rho = cos(phi) * (1 - sin(phi)) vanishes to third order at the top
    # of the circle, so the contact there has no second-order term.
    field = polynomial_field("1", "-x")
    with pytest.raises(DegenerateTangency):
        find_tangencies(field, UNIT)


def test_degenerate_resolves_under_radius_nudge():
    field = polynomial_field("-y + x*(1 - y)^2", "x + y*(1 - y)^2")
    tangencies = find_tangencies(field, Circle((0.0, 0.0), 0.9))
    internal, external = census_counts(tangencies)
    assert bendixson_index(internal, external) == HalfIndex(2)


def test_perturbation_stability_of_counts():
    for name in ("saddle", "dipole", "monkey-saddle", "lemon", "tripod",
                 "star"):
        entry = catalog_get(name)
        base = census_counts(find_tangencies(entry.field, UNIT))
        for radius in (0.99, 1.01):
            circle = Circle((0.0, 0.0), radius)
            assert census_counts(find_tangencies(entry.field, circle)) == base


# ----------------------------------------------------------- index formulas

def test_bendixson_formula():
    assert bendixson_index(0, 0) == HalfIndex(2)
    assert bendixson_index(0, 4) == HalfIndex(-2)
    assert bendixson_index(2, 0) == HalfIndex(4)
    assert bendixson_index(1, 0) == HalfIndex(3)


def test_hamburger_formula():
    assert hamburger_index(0, 0) == HalfIndex(2)
    assert hamburger_index(8, 0) == HalfIndex(-2)
    assert hamburger_index(0, 4) == HalfIndex(4)
    assert hamburger_index(2, 0) == HalfIndex(1)
    with pytest.raises(ParityError):
        hamburger_index(3, 0)


def test_formulas_agree_through_doubling():
    for internal in range(0, 5):
        for external in range(0, 5):
            assert bendixson_index(internal, external) == hamburger_index(
                2 * external, 2 * internal)


# ------------------------------------------------------------------ circuits

def test_circuit_from_empty_census():
    circuit = circuit_from_tangencies(())
    assert circuit.convex == 0 and circuit.concave == 0


def test_circuit_from_saddle_census():
    tangencies = find_tangencies(catalog_get("saddle").field, UNIT)
    circuit = circuit_from_tangencies(tangencies)
    assert circuit.convex == 8 and circuit.concave == 0
    assert len(circuit.vertices) == len(circuit.arcs) == 8
    assert circuit.arcs.count(ArcKind.LEAF) == 4
    assert circuit.arcs.count(ArcKind.CROSS) == 4


def test_circuit_from_dipole_census():
    tangencies = find_tangencies(catalog_get("dipole").field, UNIT)
    circuit = circuit_from_tangencies(tangencies)
    assert circuit.convex == 0 and circuit.concave == 4


def test_circuit_matches_census_index():
    for name in ("saddle", "dipole", "monkey-saddle", "lemon", "star"):
        tangencies = find_tangencies(catalog_get(name).field, UNIT)
        internal, external = census_counts(tangencies)
        circuit = circuit_from_tangencies(tangencies)
        assert hamburger_index(circuit.convex, circuit.concave) \
            == bendixson_index(internal, external)


def test_tagged_circuit_validates_lengths():
    with pytest.raises(ValueError):
        TaggedCircuit((VertexTag.CONVEX,), ())


# ------------------------------------------------------------- cross-check

def test_cross_check_whole_catalog():
    for name in catalog_names():
        entry = catalog_get(name)
        for radius in (0.1, 1.0, 7.0):
            check = cross_check_index(entry.field,
                                      Circle((0.0, 0.0), radius))
            assert check.agree
            assert check.winding.index == entry.expected_index
            assert check.bendixson == entry.expected_index
            assert check.hamburger == entry.expected_index


def test_cross_check_reports_leaf_fallback_circle():
    check = cross_check_index(catalog_get("rotation").field, UNIT)
    assert check.census_circle.center == (0.3, 0.0)
    assert check.winding.index == HalfIndex(2)


# -------------------------------------------------------------- surgeries

def test_surgery_replay_two_a_steps():
    result = surgery_replay((2, 2), ["A", "A"])
    assert result.trace == ((2, 2), (3, 1), (4, 0))
    assert result.bound == HalfIndex(0)
    assert result.bound_holds


def test_surgery_replay_empty():
    result = surgery_replay((0, 0), [])
    assert result.trace == ((0, 0),)
    assert result.bound == HalfIndex(2)
    assert result.bound_holds


def test_surgery_replay_single_b():
    result = surgery_replay((0, 2), ["B"])
    assert result.trace == ((0, 2), (2, 0))
    assert result.bound == HalfIndex(1)
    assert result.bound_holds


def test_surgery_halts_once_concavities_vanish():
    result = surgery_replay((2, 2), ["A", "A", "B", "B"])
    assert result.trace == ((2, 2), (3, 1), (4, 0))


def test_surgery_requires_concavities():
    with pytest.raises(InsufficientConcavities):
        surgery_replay((0, 1), ["B"])
    # The first B leaves a single concavity, not enough for the second.
    with pytest.raises(InsufficientConcavities):
        surgery_replay((0, 3), ["B", "B"])


def test_surgery_extra_losses_must_stay_feasible():
    with pytest.raises(MonotonicityViolation):
        surgery_replay((0, 2), [SurgeryStep("A", extra_convex_lost=2)])
    with pytest.raises(MonotonicityViolation):
        surgery_replay((0, 4), [SurgeryStep("B", extra_concave_lost=3)])


def test_surgery_random_admissible_sequences():
    """1000 random admissible replays: c' strictly decreases, the replay
    terminates, and when the concavities are used up the final bound is
    at most 1. Extra losses are drawn with matching parity so the
    convex/concave difference stays even."""
    rng = random.Random(20260814)
    for _ in range(1000):
        cp = rng.randint(0, 12)
        c = rng.choice(range(cp % 2, 13, 2))
        steps = []
        sc, sp = c, cp
        while sp > 0 and len(steps) < 40:
            scenario = "B" if (sp >= 2 and rng.random() < 0.5) else "A"
            need = 1 if scenario == "A" else 2
            if sp < need:
                break
            gain = 1 if scenario == "A" else 2
            max_xl = sc + gain
            xl = rng.randint(0, min(2, max_xl))
            max_yl = sp - need
            same_parity = [v for v in range(0, min(2, max_yl) + 1)
                           if (v - xl) % 2 == 0]
            if not same_parity:
                break
            yl = rng.choice(same_parity)
            steps.append(SurgeryStep(scenario, xl, yl))
            sc = sc + gain - xl
            sp = sp - need - yl
        result = surgery_replay((c, cp), steps)
        trace = result.trace
        for (c0, p0), (c1, p1) in zip(trace, trace[1:]):
            assert p1 < p0
            assert c1 >= 0 and p1 >= 0
        if trace[-1][1] == 0:
            assert result.bound is not None
            assert result.bound <= 1
            assert result.bound_holds


# ------------------------------------------------------------- loop-free

def test_loop_free_bound_over_catalog():
    for name in catalog_names():
        entry = catalog_get(name)
        if entry.has_loops:
            with pytest.raises(PreconditionLoop):
                loop_free_bound_check(entry)
        else:
            verdict = loop_free_bound_check(entry)
            assert verdict.passed
            assert verdict.index <= 1


def test_dipole_rejected_but_index_known():
    entry = catalog_get("dipole")
    with pytest.raises(PreconditionLoop):
        loop_free_bound_check(entry)
    # The excluded case is exactly the one that would break the bound.
    assert entry.expected_index == HalfIndex(4)
