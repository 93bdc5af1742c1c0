"""Orientation double cover around a half-integer singularity.

A direction field with odd doubled index j cannot be combed into a vector
field near the singularity, but its pullback under the model covering map
w -> w^2 can. The passage costs the derivative twist -arg(w); with it the
upstairs winding lands on i = 2j - 1, and summing over a whole singular
set reproduces the Euler characteristic of the base through the
Riemann-Hurwitz count.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import (
    ChiMismatch,
    EvenInput,
    InputError,
    MethodDisagreement,
    OrientableInput,
    ParityError,
    RangeError,
)
from .halfint import HalfIndex
from .winding import Circle, WindingResult, winding_index


def index_lift_relation(j: HalfIndex) -> HalfIndex:
    """Index upstairs of the one point over a non-orientable singularity,
    i = 2j - 1. Only odd doubled values lift this way."""
    if j.is_integral:
        raise OrientableInput(
            "index has even doubled value; the singularity is orientable "
            "and the two preimages keep index j", doubled=j.doubled)
    return HalfIndex(2 * j.doubled - 2)


def index_lift_inverse(i: HalfIndex) -> HalfIndex:
    """Recover the downstairs index from the upstairs one, j = (i + 1)/2."""
    if not i.is_integral:
        raise OrientableInput(
            "upstairs index must be an integer", doubled=i.doubled)
    return HalfIndex(i.doubled // 2 + 1)


class _SquareLift:
    """Direction field on the covering circle: the half-angle model field
    of doubled index two_j, pulled back through w -> w^2.

    With the derivative twist the pulled-back angle is
    Theta(w) = theta(w^2) - arg(w); dropping the twist (twist=False) gives
    the naive pullback, whose winding is 2j instead of 2j - 1.
    """

    line = True

    def __init__(self, two_j: int, twist: bool = True):
        self.two_j = two_j
        self.twist = twist

    def direction_at(self, x: float, y: float):
        u = math.atan2(y, x)
        theta = 0.5 * self.two_j * math.atan2(
            2.0 * x * y, (x - y) * (x + y))
        if self.twist:
            theta -= u
        return (math.cos(theta), math.sin(theta))

    def singular_tolerance(self, reach: float) -> float:
        return 1e-12


@dataclass(frozen=True)
class LiftCheckReport:
    two_j: int
    downstairs: HalfIndex
    expected_upstairs: int
    computed_upstairs: int
    winding: WindingResult


def numeric_lift_check(two_j: int, circle: Circle | None = None
                       ) -> LiftCheckReport:
    """Wind the twisted pullback around the covering circle and compare
    with i = 2j - 1."""
    if two_j % 2 == 0:
        raise EvenInput(
            "doubled index must be odd; orientable singularities do not "
            "ramify the cover", two_j=two_j)
    if circle is None:
        circle = Circle((0.0, 0.0), 1.0)
    if circle.center != (0.0, 0.0):
        raise InputError("the model cover is centered at the origin",
                         center=circle.center)
    j = HalfIndex(two_j)
    expected = index_lift_relation(j)
    result = winding_index(_SquareLift(two_j), circle)
    # The pullback is an honest vector field, so its doubled reading is
    # even and halves exactly.
    if result.index.doubled % 2 != 0:
        raise ParityError("upstairs winding is not an integer",
                          doubled=result.index.doubled)
    computed = result.index.doubled // 2
    if computed != int(expected):
        raise MethodDisagreement(
            "numeric lift disagrees with i = 2j - 1",
            computed=computed, expected=int(expected), two_j=two_j)
    return LiftCheckReport(
        two_j=two_j, downstairs=j, expected_upstairs=int(expected),
        computed_upstairs=computed, winding=result)


def riemann_hurwitz(chi_f: int, deg_r: int) -> int:
    """Characteristic of a double cover with deg_r simple branch points."""
    if deg_r < 0:
        raise RangeError("ramification degree must be nonnegative",
                         deg_r=deg_r)
    return 2 * chi_f - deg_r


@dataclass(frozen=True)
class SingularPartition:
    """Indices of a singular set split by orientability of the field germ:
    even doubled values in ``orientable``, odd in ``non_orientable``."""

    orientable: tuple[HalfIndex, ...]
    non_orientable: tuple[HalfIndex, ...]
    base_chi: int

    def __post_init__(self):
        object.__setattr__(self, "orientable", tuple(self.orientable))
        object.__setattr__(self, "non_orientable",
                           tuple(self.non_orientable))
        for j in self.orientable:
            if not j.is_integral:
                raise ParityError("orientable part holds an odd doubled "
                                  "value", doubled=j.doubled)
        for j in self.non_orientable:
            if j.is_integral:
                raise ParityError("non-orientable part holds an even "
                                  "doubled value", doubled=j.doubled)

    @property
    def deg_r(self) -> int:
        return len(self.non_orientable)


ORIENTABLE_READING = (
    "each orientable singularity has two preimages on the unbranched locus "
    "and each is read with the same index j")


@dataclass(frozen=True)
class ReductionReport:
    base_chi: int
    deg_r: int
    chi_cover: int
    downstairs_sum: HalfIndex
    upstairs_indices: tuple[int, ...]
    upstairs_sum: int
    chain: tuple[str, ...]
    reading: str = ORIENTABLE_READING


def reduction_sum_check(partition: SingularPartition) -> ReductionReport:
    """Verify sum(j) = (1/2)(sum upstairs i + deg R) = (1/2)(chi(cover)
    + deg R) = chi(base). The first equality is bookkeeping; the second
    assumes the index formula upstairs and fails exactly when the
    downstairs sum misses chi(base)."""
    deg_r = partition.deg_r
    chi_cover = riemann_hurwitz(partition.base_chi, deg_r)

    upstairs: list[int] = []
    for j in partition.orientable:
        upstairs.extend((int(j), int(j)))
    for j in partition.non_orientable:
        upstairs.append(int(index_lift_relation(j)))
    upstairs_sum = sum(upstairs)

    downstairs_sum = HalfIndex(
        sum(j.doubled for j in (*partition.orientable,
                                *partition.non_orientable)))
    # The halving identity sum(j) = (sum(i) + deg R)/2 holds by
    # construction of the upstairs list; the chain records it and the one
    # genuine check is sum(i) against chi(cover).
    half_of = HalfIndex(upstairs_sum + deg_r)
    chain = (
        f"deg R = {deg_r}",
        f"chi(cover) = 2*{partition.base_chi} - {deg_r} = {chi_cover}",
        f"sum upstairs i = {upstairs_sum}",
        f"(sum upstairs i + deg R)/2 = {half_of}",
        f"sum downstairs j = {downstairs_sum}",
        f"chi(base) = {partition.base_chi}",
    )
    if upstairs_sum != chi_cover:
        raise ChiMismatch(
            "index sum does not match the base characteristic",
            downstairs_sum=str(downstairs_sum), base_chi=partition.base_chi,
            chain=chain)
    return ReductionReport(
        base_chi=partition.base_chi, deg_r=deg_r, chi_cover=chi_cover,
        downstairs_sum=downstairs_sum, upstairs_indices=tuple(upstairs),
        upstairs_sum=upstairs_sum, chain=chain)
