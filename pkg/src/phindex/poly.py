"""Bivariate polynomials with exact rational coefficients.

The expression grammar covers signed rational literals, the variables x
and y, the operators + - * ^ with nonnegative integer exponents, and
parentheses. A slash is only legal inside a rational literal ("3/4");
implicit multiplication ("2x") is rejected. Printing is canonical and
``parse_polynomial(str(p)) == p`` holds for every polynomial.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import ExponentError, ExprSyntaxError

Exponents = tuple[int, int]


def _term_key(e: Exponents):
    i, j = e
    return (-(i + j), -i, -j)


@dataclass(frozen=True)
class PolyExpr:
    """Terms are kept sorted (total degree, then x-degree descending) with
    no zero coefficients, so equality and hashing are structural."""

    terms: tuple[tuple[Exponents, Fraction], ...]

    @classmethod
    def from_dict(cls, coeffs: dict[Exponents, Fraction]) -> "PolyExpr":
        items = [((int(i), int(j)), Fraction(c)) for (i, j), c in coeffs.items()
                 if Fraction(c) != 0]
        for (i, j), _ in items:
            if i < 0 or j < 0:
                raise ValueError("exponents must be nonnegative")
        items.sort(key=lambda t: _term_key(t[0]))
        return cls(tuple(items))

    @classmethod
    def constant(cls, c) -> "PolyExpr":
        return cls.from_dict({(0, 0): Fraction(c)})

    @classmethod
    def variable(cls, name: str) -> "PolyExpr":
        if name == "x":
            return cls.from_dict({(1, 0): Fraction(1)})
        if name == "y":
            return cls.from_dict({(0, 1): Fraction(1)})
        raise ValueError(f"unknown variable {name!r}")

    @classmethod
    def zero(cls) -> "PolyExpr":
        return cls(())

    def coefficients(self) -> dict[Exponents, Fraction]:
        return dict(self.terms)

    def coefficient(self, i: int, j: int) -> Fraction:
        for e, c in self.terms:
            if e == (i, j):
                return c
        return Fraction(0)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def total_degree(self) -> int:
        return max((i + j for (i, j), _ in self.terms), default=0)

    def max_coefficient_magnitude(self) -> Fraction:
        return max((abs(c) for _, c in self.terms), default=Fraction(0))

    # ------------------------------------------------------------ arithmetic

    def __add__(self, other: "PolyExpr") -> "PolyExpr":
        acc = dict(self.terms)
        for e, c in other.terms:
            acc[e] = acc.get(e, Fraction(0)) + c
        return PolyExpr.from_dict(acc)

    def __sub__(self, other: "PolyExpr") -> "PolyExpr":
        return self + (-other)

    def __neg__(self) -> "PolyExpr":
        return PolyExpr(tuple((e, -c) for e, c in self.terms))

    def __mul__(self, other: "PolyExpr") -> "PolyExpr":
        acc: dict[Exponents, Fraction] = {}
        for (i1, j1), c1 in self.terms:
            for (i2, j2), c2 in other.terms:
                e = (i1 + i2, j1 + j2)
                acc[e] = acc.get(e, Fraction(0)) + c1 * c2
        return PolyExpr.from_dict(acc)

    def scale(self, c) -> "PolyExpr":
        c = Fraction(c)
        if c == 0:
            return PolyExpr.zero()
        return PolyExpr(tuple((e, k * c) for e, k in self.terms))

    def derivative(self, var: str) -> "PolyExpr":
        acc: dict[Exponents, Fraction] = {}
        for (i, j), c in self.terms:
            if var == "x" and i > 0:
                acc[(i - 1, j)] = acc.get((i - 1, j), Fraction(0)) + c * i
            elif var == "y" and j > 0:
                acc[(i, j - 1)] = acc.get((i, j - 1), Fraction(0)) + c * j
        if var not in ("x", "y"):
            raise ValueError(f"unknown variable {var!r}")
        return PolyExpr.from_dict(acc)

    # ------------------------------------------------------------ evaluation

    def evaluate(self, x: float, y: float) -> float:
        total = 0.0
        for (i, j), c in self.terms:
            total += float(c) * (x ** i) * (y ** j)
        return total

    def evaluate_exact(self, x: Fraction, y: Fraction) -> Fraction:
        total = Fraction(0)
        for (i, j), c in self.terms:
            total += c * (x ** i) * (y ** j)
        return total

    # -------------------------------------------------------------- printing

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for idx, ((i, j), c) in enumerate(self.terms):
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            factors = []
            if mag != 1 or (i == 0 and j == 0):
                factors.append(str(mag))
            if i == 1:
                factors.append("x")
            elif i > 1:
                factors.append(f"x^{i}")
            if j == 1:
                factors.append("y")
            elif j > 1:
                factors.append(f"y^{j}")
            body = "*".join(factors)
            if idx == 0:
                parts.append(body if sign == "+" else f"-{body}")
            else:
                parts.append(f" {sign} {body}")
        return "".join(parts)


# ------------------------------------------------------------------- parsing

_OPERATORS = set("+-*^/()")


@dataclass(frozen=True)
class _Token:
    kind: str  # 'num' | 'name' | 'op' | 'end'
    text: str
    pos: int


def _tokenize(text: str) -> list[_Token]:
    out = []
    k = 0
    n = len(text)
    while k < n:
        ch = text[k]
        if ch.isspace():
            k += 1
            continue
        if ch.isdigit():
            start = k
            while k < n and text[k].isdigit():
                k += 1
            if k < n and text[k] == ".":
                k += 1
                if k >= n or not text[k].isdigit():
                    raise ExprSyntaxError("digits required after decimal point", k)
                while k < n and text[k].isdigit():
                    k += 1
            out.append(_Token("num", text[start:k], start))
            continue
        if ch.isalpha():
            start = k
            while k < n and (text[k].isalnum() or text[k] == "_"):
                k += 1
            out.append(_Token("name", text[start:k], start))
            continue
        if ch in _OPERATORS:
            out.append(_Token("op", ch, k))
            k += 1
            continue
        raise ExprSyntaxError(f"unexpected character {ch!r}", k)
    out.append(_Token("end", "", n))
    return out


class _Parser:
    def __init__(self, tokens: list[_Token]):
        self.tokens = tokens
        self.k = 0

    def peek(self) -> _Token:
        return self.tokens[self.k]

    def take(self) -> _Token:
        t = self.tokens[self.k]
        self.k += 1
        return t

    def expr(self) -> PolyExpr:
        acc = self.term()
        while self.peek().kind == "op" and self.peek().text in "+-":
            op = self.take()
            rhs = self.term()
            acc = acc + rhs if op.text == "+" else acc - rhs
        return acc

    def term(self) -> PolyExpr:
        acc = self.factor()
        while self.peek().kind == "op" and self.peek().text == "*":
            self.take()
            acc = acc * self.factor()
        return acc

    def factor(self) -> PolyExpr:
        negate = False
        while self.peek().kind == "op" and self.peek().text in "+-":
            if self.take().text == "-":
                negate = not negate
        base = self.power()
        return -base if negate else base

    def power(self) -> PolyExpr:
        base = self.atom()
        while self.peek().kind == "op" and self.peek().text == "^":
            self.take()
            base = self._apply_exponent(base)
        return base

    def _apply_exponent(self, base: PolyExpr) -> PolyExpr:
        t = self.peek()
        if t.kind == "op" and t.text == "-":
            raise ExponentError("negative exponent", t.pos)
        if t.kind != "num":
            raise ExponentError("expected an integer exponent", t.pos)
        self.take()
        if "." in t.text:
            raise ExponentError("non-integer exponent", t.pos)
        e = int(t.text)
        out = PolyExpr.constant(1)
        for _ in range(e):
            out = out * base
        return out

    def atom(self) -> PolyExpr:
        t = self.take()
        if t.kind == "num":
            value = Fraction(t.text)
            nxt = self.peek()
            if nxt.kind == "op" and nxt.text == "/":
                if "." in t.text:
                    raise ExprSyntaxError(
                        "rational literals take integer numerators", t.pos)
                self.take()
                den = self.peek()
                if den.kind != "num" or "." in den.text:
                    raise ExprSyntaxError(
                        "expected an integer denominator", den.pos)
                self.take()
                if int(den.text) == 0:
                    raise ExprSyntaxError("zero denominator", den.pos)
                value = Fraction(int(t.text), int(den.text))
            return PolyExpr.constant(value)
        if t.kind == "name":
            if t.text in ("x", "y"):
                return PolyExpr.variable(t.text)
            raise ExprSyntaxError(f"unknown variable {t.text!r}", t.pos)
        if t.kind == "op" and t.text == "(":
            inner = self.expr()
            closing = self.take()
            if not (closing.kind == "op" and closing.text == ")"):
                raise ExprSyntaxError("expected ')'", closing.pos)
            return inner
        raise ExprSyntaxError(
            f"unexpected {t.text!r}" if t.text else "unexpected end of input",
            t.pos)


def parse_polynomial(text: str) -> PolyExpr:
    parser = _Parser(_tokenize(text))
    out = parser.expr()
    trailing = parser.peek()
    if trailing.kind != "end":
        raise ExprSyntaxError(f"unexpected {trailing.text!r}", trailing.pos)
    return out
