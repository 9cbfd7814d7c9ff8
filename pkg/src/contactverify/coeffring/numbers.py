"""Exact elements of the coefficient field Q(i, sqrt 2).

An element is stored by its four rational coordinates in the basis
``1, i, sqrt2, i*sqrt2``.  Rationals are plain :class:`fractions.Fraction`.
"""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational as _RationalABC
from typing import Union

Rational = Fraction

# e_j * e_k = sign * e_(index) for the basis 1, i, s, i*s (s = sqrt 2)
MULT_TABLE = (
    ((0, 1), (1, 1), (2, 1), (3, 1)),
    ((1, 1), (0, -1), (3, 1), (2, -1)),
    ((2, 1), (3, 1), (0, 2), (1, 2)),
    ((3, 1), (2, -1), (1, 2), (0, -2)),
)

CoeffLike = Union["CoeffNumber", int, Fraction]


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, _RationalABC)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot convert {type(x).__name__} to an exact rational")


class CoeffNumber:
    """``a + b*i + c*sqrt2 + d*i*sqrt2`` with rational ``a, b, c, d``."""

    __slots__ = ("_v",)

    def __init__(self, a=0, b=0, c=0, d=0):
        self._v = (_frac(a), _frac(b), _frac(c), _frac(d))

    @classmethod
    def coerce(cls, x: CoeffLike) -> "CoeffNumber":
        if isinstance(x, CoeffNumber):
            return x
        return cls(x)

    @property
    def components(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        return self._v

    a = property(lambda self: self._v[0])
    b = property(lambda self: self._v[1])
    c = property(lambda self: self._v[2])
    d = property(lambda self: self._v[3])

    def is_zero(self) -> bool:
        return not any(self._v)

    def is_rational(self) -> bool:
        return not (self._v[1] or self._v[2] or self._v[3])

    def is_real(self) -> bool:
        return not (self._v[1] or self._v[3])

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self._v[0]

    def conjugate(self) -> "CoeffNumber":
        a, b, c, d = self._v
        return CoeffNumber(a, -b, c, -d)

    def _galois(self, flip_i: bool, flip_s: bool) -> "CoeffNumber":
        a, b, c, d = self._v
        if flip_i:
            b, d = -b, -d
        if flip_s:
            c, d = -c, -d
        return CoeffNumber(a, b, c, d)

    def norm(self) -> Fraction:
        """Field norm down to Q (product of the four Galois conjugates)."""
        p = self * self._galois(True, False) * self._galois(False, True) * self._galois(True, True)
        return p.to_fraction()

    def inverse(self) -> "CoeffNumber":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in Q(i, sqrt2)")
        if self.is_rational():
            return CoeffNumber(1 / self._v[0])
        others = self._galois(True, False) * self._galois(False, True) * self._galois(True, True)
        n = (self * others).to_fraction()
        return others * CoeffNumber(1 / n)

    def __add__(self, other):
        if not isinstance(other, CoeffNumber):
            try:
                other = CoeffNumber(other)
            except TypeError:
                return NotImplemented
        return CoeffNumber(*(x + y for x, y in zip(self._v, other._v)))

    __radd__ = __add__

    def __neg__(self):
        return CoeffNumber(*(-x for x in self._v))

    def __sub__(self, other):
        if not isinstance(other, CoeffNumber):
            try:
                other = CoeffNumber(other)
            except TypeError:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, CoeffNumber):
            try:
                other = CoeffNumber(other)
            except TypeError:
                return NotImplemented
        out = [Fraction(0)] * 4
        for j, x in enumerate(self._v):
            if not x:
                continue
            row = MULT_TABLE[j]
            for k, y in enumerate(other._v):
                if y:
                    idx, s = row[k]
                    out[idx] += s * x * y
        return CoeffNumber(*out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, CoeffNumber):
            try:
                other = CoeffNumber(other)
            except TypeError:
                return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return CoeffNumber(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = CoeffNumber(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, CoeffNumber):
            return self._v == other._v
        try:
            return self._v == CoeffNumber(other)._v
        except TypeError:
            return NotImplemented

    def __hash__(self):
        if self.is_rational():
            return hash(self._v[0])
        return hash(self._v)

    def __bool__(self):
        return not self.is_zero()

    def __complex__(self):
        a, b, c, d = (float(x) for x in self._v)
        r = math.sqrt(2.0)
        return complex(a + c * r, b + d * r)

    def __repr__(self):
        return f"CoeffNumber({', '.join(str(x) for x in self._v)})"

    def __str__(self):
        parts = []
        for x, unit in zip(self._v, ("", "i", "sqrt2", "i*sqrt2")):
            if not x:
                continue
            if not unit:
                parts.append(str(x))
            elif x == 1:
                parts.append(unit)
            elif x == -1:
                parts.append("-" + unit)
            else:
                q = str(x) if x.denominator == 1 else f"({x})"
                parts.append(f"{q}*{unit}")
        if not parts:
            return "0"
        out = parts[0]
        for p in parts[1:]:
            out += " - " + p[1:] if p.startswith("-") else " + " + p
        return out


I = CoeffNumber(0, 1)
SQRT2 = CoeffNumber(0, 0, 1)
ONE = CoeffNumber(1)
ZERO = CoeffNumber(0)


def rational_sqrt(q: Fraction) -> Fraction | None:
    """Nonnegative rational square root of ``q`` if it exists, else None."""
    q = Fraction(q)
    if q < 0:
        return None
    n, d = q.numerator, q.denominator
    rn, rd = math.isqrt(n), math.isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None
