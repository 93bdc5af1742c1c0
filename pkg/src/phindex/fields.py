"""Plane fields: polynomial vector fields and standard direction-field
models, plus the catalog of reference singularities.

A field exposes ``direction_at`` and ``jacobian_at``. For vector fields the
returned vector is the field value itself. For line (direction) fields the
vector is one representative of an unoriented direction; consumers must be
invariant under flipping its sign, and the Jacobian returned alongside
always differentiates the same representative branch.
"""

from __future__ import annotations

import difflib
import json
import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import FieldFormatError, SingularOnCircuit, UnknownName
from .halfint import HalfIndex
from .poly import PolyExpr, parse_polynomial

Vec = tuple[float, float]
Jac = tuple[tuple[float, float], tuple[float, float]]


class PolynomialField:
    """f(x, y) = (P(x, y), Q(x, y)) with exact rational coefficients."""

    line = False

    def __init__(self, p: PolyExpr, q: PolyExpr):
        self.p = p
        self.q = q
        self._px = p.derivative("x")
        self._py = p.derivative("y")
        self._qx = q.derivative("x")
        self._qy = q.derivative("y")

    def direction_at(self, x: float, y: float) -> Vec:
        return (self.p.evaluate(x, y), self.q.evaluate(x, y))

    def jacobian_at(self, x: float, y: float) -> Jac:
        return ((self._px.evaluate(x, y), self._py.evaluate(x, y)),
                (self._qx.evaluate(x, y), self._qy.evaluate(x, y)))

    def singular_tolerance(self, reach: float) -> float:
        """Magnitude below which a value counts as a zero of the field, for
        points within distance ``reach`` of the origin. Scales with the
        largest coefficient and the degree so that huge circles on huge
        fields do not trip the guard spuriously."""
        coeff = float(max(self.p.max_coefficient_magnitude(),
                          self.q.max_coefficient_magnitude()))
        degree = max(self.p.total_degree(), self.q.total_degree())
        return 1e-9 * (1.0 + coeff * max(reach, 0.0) ** degree)

    def __eq__(self, other):
        return (isinstance(other, PolynomialField)
                and self.p == other.p and self.q == other.q)

    def __repr__(self):
        return f"PolynomialField({self.p!s}, {self.q!s})"


class LineModelField:
    """The model direction field of index two_j/2: at polar angle phi the
    direction makes angle (two_j/2)*phi with the x-axis, taken mod pi.

    Odd two_j gives a genuinely unoriented field (the representative flips
    after a full circuit); even two_j is orientable but is still treated as
    a direction field here.
    """

    line = True

    def __init__(self, two_j: int):
        if not isinstance(two_j, int):
            raise FieldFormatError("two_j must be an integer")
        self.two_j = two_j

    def _theta(self, x: float, y: float) -> float:
        return 0.5 * self.two_j * math.atan2(y, x)

    def direction_at(self, x: float, y: float) -> Vec:
        if x == 0.0 and y == 0.0:
            raise SingularOnCircuit("direction undefined at the model singularity",
                                    point=(x, y))
        t = self._theta(x, y)
        return (math.cos(t), math.sin(t))

    def jacobian_at(self, x: float, y: float) -> Jac:
        r2 = x * x + y * y
        if r2 == 0.0:
            raise SingularOnCircuit("direction undefined at the model singularity",
                                    point=(x, y))
        t = self._theta(x, y)
        gx = 0.5 * self.two_j * (-y / r2)
        gy = 0.5 * self.two_j * (x / r2)
        return ((-math.sin(t) * gx, -math.sin(t) * gy),
                (math.cos(t) * gx, math.cos(t) * gy))

    def singular_tolerance(self, reach: float) -> float:
        return 1e-12

    def __eq__(self, other):
        return isinstance(other, LineModelField) and self.two_j == other.two_j

    def __repr__(self):
        return f"LineModelField({self.two_j})"


PlaneField = PolynomialField | LineModelField


def polynomial_field(p_text: str, q_text: str) -> PolynomialField:
    return PolynomialField(parse_polynomial(p_text), parse_polynomial(q_text))


def complex_monomial_field(k: int) -> PolynomialField:
    """z**k as a vector field for k >= 0; conj(z)**(-k) for k < 0. The
    winding index around the origin is k in both cases."""
    x = PolyExpr.variable("x")
    y = PolyExpr.variable("y")
    re, im = PolyExpr.constant(1), PolyExpr.zero()
    bx, by = (x, y) if k >= 0 else (x, -y)
    for _ in range(abs(k)):
        re, im = re * bx - im * by, re * by + im * bx
    return PolynomialField(re, im)


def complex_product(a: PolynomialField, b: PolynomialField) -> PolynomialField:
    """Pointwise product of the fields read as complex-valued functions;
    winding indices add under this product."""
    return PolynomialField(a.p * b.p - a.q * b.q, a.p * b.q + a.q * b.p)


# -------------------------------------------------------------------- catalog

@dataclass(frozen=True)
class CatalogEntry:
    name: str
    field: PolynomialField | LineModelField
    expected_index: HalfIndex
    has_loops: bool
    orientable: bool
    note: str


def _entry(name, field, doubled, has_loops, orientable, note):
    return CatalogEntry(name, field, HalfIndex(doubled), has_loops, orientable, note)


CATALOG: dict[str, CatalogEntry] = {
    e.name: e for e in (
        _entry("node", polynomial_field("x", "y"), 2, False, True,
               "radial field z; index +1 by direct winding"),
        _entry("saddle", polynomial_field("x", "-y"), -2, False, True,
               "conj(z); index -1; four external tangencies on any centered circle"),
        _entry("rotation", polynomial_field("-y", "x"), 2, False, True,
               "i*z, a center; index +1; centered circles are leaves, so the "
               "tangency census needs an offset circle"),
        _entry("dipole", polynomial_field("x^2 - y^2", "2*x*y"), 4, True, True,
               "z^2; index +2; leaves are circles through the origin, so the "
               "loop-free bound does not apply"),
        _entry("monkey-saddle", polynomial_field("x^2 - y^2", "-2*x*y"), -4, False, True,
               "conj(z)^2; index -2; six hyperbolic sectors"),
        _entry("lemon", LineModelField(1), 1, False, False,
               "direction model theta = phi/2; index +1/2"),
        _entry("tripod", LineModelField(-1), -1, False, False,
               "direction model theta = -phi/2; index -1/2"),
        _entry("star", LineModelField(3), 3, True, False,
               "direction model theta = 3*phi/2; index +3/2 exceeds 1, so "
               "petal leaves looping at the singularity are forced"),
    )
}


def catalog_names() -> list[str]:
    return list(CATALOG)


def catalog_get(name: str) -> CatalogEntry:
    try:
        return CATALOG[name]
    except KeyError:
        close = difflib.get_close_matches(name, CATALOG, n=1)
        hint = f"; did you mean {close[0]!r}?" if close else ""
        raise UnknownName(f"no catalog entry named {name!r}{hint}",
                          name=name) from None


# ---------------------------------------------------------------- (de)serial

def field_from_json(spec: dict) -> PolynomialField | LineModelField:
    if not isinstance(spec, dict) or "kind" not in spec:
        raise FieldFormatError("field spec must be an object with a 'kind'")
    kind = spec["kind"]
    if kind == "vector_polynomial":
        try:
            p_text, q_text = spec["P"], spec["Q"]
        except KeyError as missing:
            raise FieldFormatError(f"vector_polynomial needs {missing} component") from None
        return polynomial_field(p_text, q_text)
    if kind == "line_model":
        if "two_j" not in spec:
            raise FieldFormatError("line_model needs 'two_j'")
        two_j = spec["two_j"]
        if not isinstance(two_j, int) or isinstance(two_j, bool):
            raise FieldFormatError("'two_j' must be an integer")
        return LineModelField(two_j)
    if kind == "builtin":
        if "name" not in spec:
            raise FieldFormatError("builtin needs 'name'")
        return catalog_get(spec["name"]).field
    raise FieldFormatError(f"unknown field kind {kind!r}")


def field_to_json(field: PolynomialField | LineModelField) -> dict:
    if isinstance(field, PolynomialField):
        return {"kind": "vector_polynomial", "P": str(field.p), "Q": str(field.q)}
    return {"kind": "line_model", "two_j": field.two_j}


def load_field_file(path: str) -> PolynomialField | LineModelField:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            spec = json.load(fh)
        except json.JSONDecodeError as err:
            raise FieldFormatError(f"not valid JSON: {err}") from None
    return field_from_json(spec)
