"""Exact half-integer values.

Indices of direction-field singularities live in (1/2)Z. They are stored
as doubled integers so that all bookkeeping stays exact; floats only enter
when a numeric method produces a raw value to be rounded.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import BadHalfInteger


@dataclass(frozen=True, eq=False)
class HalfIndex:
    doubled: int

    def __post_init__(self):
        if not isinstance(self.doubled, int):
            raise TypeError("doubled value must be an int")

    @classmethod
    def from_int(cls, n: int) -> "HalfIndex":
        return cls(2 * n)

    @classmethod
    def from_fraction(cls, q: Fraction) -> "HalfIndex":
        d = q * 2
        if d.denominator != 1:
            raise BadHalfInteger(f"{q} is not a half-integer")
        return cls(int(d))

    @classmethod
    def parse(cls, text: str) -> "HalfIndex":
        """Accepts '2', '-1', '1/2', '-3/2'."""
        s = text.strip()
        try:
            q = Fraction(s)
        except (ValueError, ZeroDivisionError):
            raise BadHalfInteger(f"cannot read {text!r} as a half-integer") from None
        if q.denominator not in (1, 2):
            raise BadHalfInteger(f"{text!r} is not a half-integer")
        return cls.from_fraction(q)

    @property
    def is_integral(self) -> bool:
        return self.doubled % 2 == 0

    @property
    def as_fraction(self) -> Fraction:
        return Fraction(self.doubled, 2)

    def __float__(self) -> float:
        return self.doubled / 2.0

    def __int__(self) -> int:
        if self.doubled % 2 != 0:
            raise ValueError(f"{self} is not an integer")
        return self.doubled // 2

    def __str__(self) -> str:
        if self.doubled % 2 == 0:
            return str(self.doubled // 2)
        return f"{self.doubled}/2"

    def __repr__(self) -> str:
        return f"HalfIndex({self.doubled})"

    def _coerce(self, other):
        if isinstance(other, HalfIndex):
            return other
        if isinstance(other, int):
            return HalfIndex(2 * other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else HalfIndex(self.doubled + o.doubled)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else HalfIndex(self.doubled - o.doubled)

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else HalfIndex(o.doubled - self.doubled)

    def __neg__(self):
        return HalfIndex(-self.doubled)

    def __mul__(self, other):
        if isinstance(other, int):
            return HalfIndex(self.doubled * other)
        return NotImplemented

    __rmul__ = __mul__

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.doubled == o.doubled

    def __le__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.doubled <= o.doubled

    def __lt__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.doubled < o.doubled

    def __ge__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.doubled >= o.doubled

    def __gt__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.doubled > o.doubled

    def __hash__(self):
        return hash(("HalfIndex", self.doubled))

    def render(self) -> dict:
        """Stable JSON form: printable value plus the exact doubled int."""
        return {"value": str(self), "doubled": self.doubled}
