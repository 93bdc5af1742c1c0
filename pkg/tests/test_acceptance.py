"""Acceptance gate: one test per headline guarantee, each printing a
single [PASS]/[FAIL] line with its runtime and enforcing the stated
budget."""

import math
import random
import time

import pytest

from oracles import capsearch

from phindex.cover import (
    SingularPartition,
    index_lift_relation,
    numeric_lift_check,
    reduction_sum_check,
)
from phindex.errors import ChiMismatch, PreconditionLoop
from phindex.fields import catalog_get, catalog_names
from phindex.halfint import HalfIndex
from phindex.obstruction import (
    BagpipeSpec,
    foliation_feasibility,
    witness_poles,
)
from phindex.surface import (
    discrete_ph_sum,
    generate_surface,
    poincare_1885_check,
)
from phindex.tangency import (
    SurgeryStep,
    TangencyKind,
    cross_check_index,
    find_tangencies,
    loop_free_bound_check,
    surgery_replay,
)
from phindex.winding import Circle


def criterion(number, description, budget=None):
    """Time the body, enforce the runtime budget, print one status line."""
    def wrap(body):
        def timed():
            start = time.perf_counter()
            try:
                body()
                elapsed = time.perf_counter() - start
                if budget is not None:
                    assert elapsed < budget, (
                        f"took {elapsed:.2f}s, budget {budget}s")
            except BaseException:
                print(f"[FAIL] criterion {number}: {description}")
                raise
            print(f"[PASS] criterion {number}: {description} "
                  f"({elapsed:.2f}s)")
        timed.__name__ = body.__name__
        return timed
    return wrap


@criterion(1, "winding, tangency census, and convexity count give the "
              "same exact index for every catalog entry", budget=5.0)
def test_criterion_1_cross_method_agreement():
    for name in catalog_names():
        entry = catalog_get(name)
        for radius in (0.1, 1.0, 7.0):
            check = cross_check_index(entry.field,
                                      Circle((0.0, 0.0), radius))
            assert check.winding.residual < 0.01, (name, radius)
            assert check.winding.index == entry.expected_index, (name, radius)
            assert check.bendixson == entry.expected_index, (name, radius)
            assert check.hamburger == entry.expected_index, (name, radius)


@criterion(2, "saddle census: four external tangencies at pi/4 + k*pi/2, "
              "index -1")
def test_criterion_2_saddle_census():
    entry = catalog_get("saddle")
    tangencies = find_tangencies(entry.field, Circle((0.0, 0.0), 1.0))
    assert len(tangencies) == 4
    for k, t in enumerate(tangencies):
        assert abs(t.angle - (math.pi / 4 + k * math.pi / 2)) < 1e-6
        assert t.kind is TangencyKind.EXTERNAL
    check = cross_check_index(entry.field, Circle((0.0, 0.0), 1.0))
    assert check.winding.index == HalfIndex(-2)


@criterion(3, "discrete index sums equal chi on all generated surfaces "
              "and the per-vertex identity holds", budget=2.0)
def test_criterion_3_poincare_hopf():
    for genus in range(0, 9):
        t = generate_surface(genus=genus)
        assert discrete_ph_sum(t).total == 2 - 2 * genus
        report = poincare_1885_check(t)
        assert report.vertex_sum == report.edge_identity
        assert 3 * report.sigma2 == 2 * report.sigma1
        assert report.total == report.chi == 2 - 2 * genus
    for crosscaps in range(1, 9):
        t = generate_surface(crosscaps=crosscaps)
        assert discrete_ph_sum(t).total == 2 - crosscaps
        report = poincare_1885_check(t)
        assert report.vertex_sum == report.edge_identity
        assert 3 * report.sigma2 == 2 * report.sigma1
        assert report.total == report.chi == 2 - crosscaps


@criterion(4, "numeric double-cover winding matches i = 2j - 1 for all "
              "odd doubled indices in [-7, 7]", budget=2.0)
def test_criterion_4_lift_relation():
    for two_j in range(-7, 8, 2):
        expected = index_lift_relation(HalfIndex(two_j))
        report = numeric_lift_check(two_j)
        assert int(expected) == two_j - 1
        assert report.computed_upstairs == two_j - 1
        assert report.winding.residual < 0.01


@criterion(5, "reduction chain: four lemons close on the sphere and 1000 "
              "random partitions pass exactly when sum(j) = chi", budget=2.0)
def test_criterion_5_reduction_chain():
    lemons = SingularPartition((), (HalfIndex(1),) * 4, base_chi=2)
    report = reduction_sum_check(lemons)
    assert report.upstairs_sum == 0
    assert report.deg_r == 4
    assert report.downstairs_sum == HalfIndex(4)
    # 2 = (0 + 4)/2 read back from the report.
    assert report.downstairs_sum.doubled == report.upstairs_sum + report.deg_r

    rng = random.Random(20260814)
    for _ in range(1000):
        orientable = tuple(HalfIndex(2 * rng.randint(-4, 4))
                           for _ in range(rng.randint(0, 4)))
        non_orientable = tuple(HalfIndex(2 * rng.randint(-4, 3) + 1)
                               for _ in range(rng.randint(0, 4)))
        total = sum(j.doubled for j in orientable + non_orientable)
        if total % 2 == 0 and rng.random() < 0.5:
            chi = total // 2
        else:
            chi = rng.randint(-6, 2)
        partition = SingularPartition(orientable, non_orientable, chi)
        should_pass = (total % 2 == 0 and total // 2 == chi)
        if should_pass:
            outcome = reduction_sum_check(partition)
            assert outcome.upstairs_sum == outcome.chi_cover
        else:
            with pytest.raises(ChiMismatch):
                reduction_sum_check(partition)


@criterion(6, "closed-form feasibility equals brute-force cap enumeration "
              "on the whole grid", budget=5.0)
def test_criterion_6_obstruction_verdicts():
    for chi_b in range(-5, 6):
        for n in range(0, 7):
            verdict = foliation_feasibility(BagpipeSpec(chi_b, n))
            found = capsearch.search(chi_b, n, K=10)
            assert verdict.feasible == (found is not None), (chi_b, n)
    assert not foliation_feasibility(BagpipeSpec(-1, 3)).feasible
    plane = foliation_feasibility(BagpipeSpec(1, 1))
    assert plane.feasible
    assert plane.witness == (HalfIndex(0),)
    assert witness_poles(plane.witness) == (HalfIndex(4),)
    for chi_b in range(-5, 6):
        verdict = foliation_feasibility(BagpipeSpec(chi_b, 0))
        assert verdict.feasible == (chi_b == 0)


@criterion(7, "1000 admissible surgery replays strictly decrease the "
              "concavity count and end with bound at most 1", budget=1.0)
def test_criterion_7_surgery_replay():
    rng = random.Random(7191823)
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
            xl = rng.randint(0, min(2, sc + gain))
            same_parity = [v for v in range(0, min(2, sp - need) + 1)
                           if (v - xl) % 2 == 0]
            if not same_parity:
                break
            yl = rng.choice(same_parity)
            steps.append(SurgeryStep(scenario, xl, yl))
            sc = sc + gain - xl
            sp = sp - need - yl
        result = surgery_replay((c, cp), steps)
        for (c0, p0), (c1, p1) in zip(result.trace, result.trace[1:]):
            assert p1 < p0
            assert c1 >= 0 and p1 >= 0
        if result.trace[-1][1] == 0:
            assert result.bound is not None
            assert result.bound <= 1
            assert result.bound_holds


@criterion(8, "loop-free catalog entries have index at most 1 and the "
              "dipole is rejected by precondition")
def test_criterion_8_loop_free_bound():
    for name in catalog_names():
        entry = catalog_get(name)
        if not entry.has_loops:
            verdict = loop_free_bound_check(entry)
            assert verdict.passed
            assert verdict.index <= 1
    dipole = catalog_get("dipole")
    assert dipole.has_loops
    assert dipole.expected_index == HalfIndex(4)
    with pytest.raises(PreconditionLoop):
        loop_free_bound_check(dipole)
