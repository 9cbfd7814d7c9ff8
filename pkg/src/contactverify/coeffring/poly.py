"""Sparse multivariate polynomials over Q(i, sqrt 2).

A polynomial is ``(P0 + i*P1 + sqrt2*P2 + i*sqrt2*P3) / den`` where each
``Pj`` is a dict from packed monomial (see :mod:`.chart`) to int.  Keeping
the four integer components apart makes products of Gaussian polynomials
cost four integer convolutions instead of one over a slow number type.
Instances are immutable and normalized, so ``==`` is structural equality.
"""

from __future__ import annotations

import heapq
import math
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from .chart import (BITS, DEG_SHIFT, MAX_DEGREE, degree, divides, exponent)
from .numbers import MULT_TABLE, CoeffNumber

_EMPTY: dict = {}


def _var_monomial(k: int) -> int:
    return (1 << DEG_SHIFT) | (1 << (BITS * k))


def _mul_int(p: dict, q: dict) -> dict:
    out: dict[int, int] = {}
    get = out.get
    for m1, c1 in p.items():
        for m2, c2 in q.items():
            m = m1 + m2
            out[m] = get(m, 0) + c1 * c2
    return out


def _acc(target: dict, src: dict, scale: int) -> None:
    get = target.get
    for m, c in src.items():
        target[m] = get(m, 0) + scale * c


def _tuple_mul(x, y):
    a, b, c, d = x
    e, f, g, h = y
    return (a * e - b * f + 2 * (c * g - d * h),
            a * f + b * e + 2 * (c * h + d * g),
            a * g + c * e - b * h - d * f,
            a * h + d * e + b * g + c * f)


class Poly:
    __slots__ = ("parts", "den", "_hash")

    def __init__(self, parts: Sequence[dict], den: int = 1, *, _normalized=False):
        if _normalized:
            self.parts = tuple(parts)
            self.den = den
        else:
            self.parts, self.den = self._normalize(parts, den)
        self._hash = None

    @staticmethod
    def _normalize(parts, den):
        if den <= 0:
            if den == 0:
                raise ZeroDivisionError("polynomial with zero denominator")
            den = -den
            parts = [{m: -c for m, c in p.items()} for p in parts]
        clean = []
        for p in parts:
            q = {m: c for m, c in p.items() if c}
            clean.append(q if q else _EMPTY)
        while len(clean) < 4:
            clean.append(_EMPTY)
        if not any(clean):
            return (_EMPTY,) * 4, 1
        if den != 1:
            g = den
            for p in clean:
                for c in p.values():
                    g = math.gcd(g, c)
                    if g == 1:
                        break
                if g == 1:
                    break
            if g != 1:
                den //= g
                clean = [{m: c // g for m, c in p.items()} if p else _EMPTY for p in clean]
        return tuple(clean), den

    # construction

    @classmethod
    def zero(cls) -> "Poly":
        return _ZERO

    @classmethod
    def one(cls) -> "Poly":
        return _ONE

    @classmethod
    def from_terms(cls, terms: Iterable[tuple[int, CoeffNumber]]) -> "Poly":
        terms = [(m, CoeffNumber.coerce(c)) for m, c in terms]
        den = 1
        for _, c in terms:
            for x in c.components:
                den = den * x.denominator // math.gcd(den, x.denominator)
        parts = [{}, {}, {}, {}]
        for m, c in terms:
            for j, x in enumerate(c.components):
                if x:
                    v = x.numerator * (den // x.denominator)
                    parts[j][m] = parts[j].get(m, 0) + v
        return cls(parts, den)

    @classmethod
    def constant(cls, c) -> "Poly":
        c = CoeffNumber.coerce(c)
        if c.is_zero():
            return _ZERO
        return cls.from_terms([(0, c)])

    @classmethod
    def variable(cls, k: int) -> "Poly":
        return cls([{_var_monomial(k): 1}], 1)

    # inspection

    def is_zero(self) -> bool:
        return not any(self.parts)

    def monomials(self) -> set[int]:
        out: set[int] = set()
        for p in self.parts:
            out.update(p)
        return out

    def __len__(self):
        return len(self.monomials())

    def coefficient(self, m: int) -> CoeffNumber:
        return CoeffNumber(*(Fraction(p.get(m, 0), self.den) for p in self.parts))

    def terms(self) -> Iterator[tuple[int, CoeffNumber]]:
        """(monomial, coefficient) pairs in decreasing monomial order."""
        for m in sorted(self.monomials(), reverse=True):
            yield m, self.coefficient(m)

    def leading_monomial(self) -> int:
        return max(max(p) for p in self.parts if p)

    def leading_coefficient(self) -> CoeffNumber:
        return self.coefficient(self.leading_monomial())

    def total_degree(self) -> int:
        if self.is_zero():
            return -1
        return degree(self.leading_monomial())

    def is_constant(self) -> bool:
        return self.monomials() <= {0}

    def constant_value(self) -> CoeffNumber:
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return self.coefficient(0)

    def uses_variable(self, k: int) -> bool:
        return any(exponent(m, k) for p in self.parts for m in p)

    def content_rational(self) -> bool:
        """True when every coefficient is rational."""
        return not (self.parts[1] or self.parts[2] or self.parts[3])

    # arithmetic

    def __add__(self, other: "Poly") -> "Poly":
        if not isinstance(other, Poly):
            return NotImplemented
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        if self.den == other.den:
            parts = []
            for p, q in zip(self.parts, other.parts):
                if not q:
                    parts.append(p)
                elif not p:
                    parts.append(q)
                else:
                    r = dict(p)
                    _acc(r, q, 1)
                    parts.append(r)
            return Poly(parts, self.den)
        g = math.gcd(self.den, other.den)
        sa, sb = other.den // g, self.den // g
        parts = []
        for p, q in zip(self.parts, other.parts):
            r: dict[int, int] = {}
            if p:
                _acc(r, p, sa)
            if q:
                _acc(r, q, sb)
            parts.append(r)
        return Poly(parts, self.den * sa)

    def __neg__(self) -> "Poly":
        return Poly([{m: -c for m, c in p.items()} for p in self.parts], self.den, _normalized=True)

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            if isinstance(other, (CoeffNumber, int, Fraction)):
                return self.scale(other)
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return _ZERO
        if degree(self.leading_monomial()) + degree(other.leading_monomial()) > MAX_DEGREE:
            raise OverflowError("polynomial degree exceeds the supported maximum")
        out = [{}, {}, {}, {}]
        for j, p in enumerate(self.parts):
            if not p:
                continue
            for k, q in enumerate(other.parts):
                if not q:
                    continue
                idx, s = MULT_TABLE[j][k]
                prod = _mul_int(p, q)
                if not out[idx]:
                    out[idx] = prod if s == 1 else {m: s * c for m, c in prod.items()}
                else:
                    _acc(out[idx], prod, s)
        return Poly(out, self.den * other.den)

    __rmul__ = __mul__

    def scale(self, c) -> "Poly":
        c = CoeffNumber.coerce(c)
        if c.is_zero():
            return _ZERO
        return self * Poly.constant(c)

    def __pow__(self, k: int) -> "Poly":
        if k < 0:
            raise ValueError("negative power of a polynomial")
        out, base = _ONE, self
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    def __eq__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        return self.den == other.den and self.parts == other.parts

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.den,) + tuple(frozenset(p.items()) for p in self.parts))
        return self._hash

    # calculus and substitutions

    def derivative(self, k: int) -> "Poly":
        vm = _var_monomial(k)
        parts = []
        for p in self.parts:
            q = {}
            for m, c in p.items():
                e = exponent(m, k)
                if e:
                    q[m - vm] = c * e
            parts.append(q)
        return Poly(parts, self.den)

    def permute_variables(self, perm: Sequence[int]) -> "Poly":
        """Rename variable ``k`` to ``perm[k]``."""
        n = len(perm)
        cache: dict[int, int] = {}

        def move(m):
            r = cache.get(m)
            if r is None:
                r = m & ~((1 << DEG_SHIFT) - 1)
                for k in range(n):
                    e = exponent(m, k)
                    if e:
                        r |= e << (BITS * perm[k])
                cache[m] = r
            return r

        return Poly([{move(m): c for m, c in p.items()} for p in self.parts], self.den,
                     _normalized=True)

    def conjugate_coefficients(self) -> "Poly":
        p0, p1, p2, p3 = self.parts
        return Poly((p0, {m: -c for m, c in p1.items()}, p2, {m: -c for m, c in p3.items()}),
                    self.den, _normalized=True)

    def evaluate(self, values: Sequence[CoeffNumber]) -> CoeffNumber:
        total = CoeffNumber(0)
        n = len(values)
        powcache: dict[tuple[int, int], CoeffNumber] = {}
        for m, c in self.terms():
            t = c
            for k in range(n):
                e = exponent(m, k)
                if e:
                    key = (k, e)
                    v = powcache.get(key)
                    if v is None:
                        v = powcache[key] = values[k] ** e
                    t = t * v
            total = total + t
        return total

    def monic(self) -> tuple[CoeffNumber, "Poly"]:
        """Split off the leading coefficient: ``self == lc * monic``."""
        lc = self.leading_coefficient()
        if lc == 1:
            return lc, self
        return lc, self.scale(lc.inverse())

    def divexact(self, f: "Poly") -> "Poly | None":
        """Quotient ``self / f`` if ``f`` divides ``self`` exactly, else None."""
        if f.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if self.is_zero():
            return _ZERO
        fl = f.leading_monomial()
        flc = tuple(p.get(fl, 0) for p in f.parts)
        if flc[1] or flc[2] or flc[3]:
            # make the leading coefficient rational: multiply by its other conjugates
            lc = f.leading_coefficient()
            others = lc._galois(True, False) * lc._galois(False, True) * lc._galois(True, True)
            o = Poly.constant(others)
            return (self * o).divexact(f * o)
        if not divides(fl, self.leading_monomial()):
            return None
        lead = flc[0]
        fterms = []
        for m in f.monomials():
            fterms.append((m, tuple(p.get(m, 0) for p in f.parts)))
        rem: dict[int, list[int]] = {}
        for j, p in enumerate(self.parts):
            for m, c in p.items():
                rem.setdefault(m, [0, 0, 0, 0])[j] = c
        heap = [-m for m in rem]
        heapq.heapify(heap)
        quo: dict[int, list[int]] = {}
        scale = 1
        while rem:
            m = -heapq.heappop(heap)
            c = rem.get(m)
            if c is None:
                continue
            if not divides(fl, m):
                return None
            if lead != 1:
                g = math.gcd(lead, *c)
                mult = abs(lead) // g
                if mult != 1:
                    scale *= mult
                    for v in rem.values():
                        for t in range(4):
                            v[t] *= mult
                    for v in quo.values():
                        for t in range(4):
                            v[t] *= mult
                    c = rem[m]
                qc = tuple(x // lead for x in c)
            else:
                qc = tuple(c)
            mq = m - fl
            quo[mq] = list(qc)
            for mf, cf in fterms:
                mm = mq + mf
                prod = _tuple_mul(qc, cf)
                v = rem.get(mm)
                if v is None:
                    rem[mm] = [-x for x in prod]
                    heapq.heappush(heap, -mm)
                else:
                    v[0] -= prod[0]
                    v[1] -= prod[1]
                    v[2] -= prod[2]
                    v[3] -= prod[3]
                    if not (v[0] or v[1] or v[2] or v[3]):
                        del rem[mm]
        parts = [{}, {}, {}, {}]
        for m, v in quo.items():
            for t in range(4):
                if v[t]:
                    parts[t][m] = v[t]
        # self/f = (Pn/Pd) / (Fn/Fd) = Fd * q / (Pd * scale)
        num = Poly(parts, self.den * scale)
        if f.den != 1:
            num = Poly([{m: c * f.den for m, c in p.items()} for p in num.parts], num.den)
        return num

    # display

    def format(self, names: Sequence[str], extra: str | None = None) -> str:
        """Render with variable ``names``; ``extra`` names one more trailing variable."""
        if self.is_zero():
            return "0"
        allnames = list(names) + ([extra] if extra else [])
        pieces = []
        for m, c in self.terms():
            mono = []
            for k, name in enumerate(allnames):
                e = exponent(m, k)
                if e == 1:
                    mono.append(name)
                elif e:
                    mono.append(f"{name}^{e}")
            cs = str(c)
            simple = c.is_rational() or sum(1 for x in c.components if x) == 1
            if not mono:
                pieces.append(cs if simple else f"({cs})")
                continue
            ms = "*".join(mono)
            if c == 1:
                pieces.append(ms)
            elif c == -1:
                pieces.append("-" + ms)
            elif simple:
                pieces.append(f"{cs}*{ms}")
            else:
                pieces.append(f"({cs})*{ms}")
        out = pieces[0]
        for p in pieces[1:]:
            out += " - " + p[1:] if p.startswith("-") else " + " + p
        return out

    def __repr__(self):
        return f"Poly({self.format([f'v{k}' for k in range(MAX_VARS_DISPLAY)])})"


MAX_VARS_DISPLAY = 32
_ZERO = Poly((_EMPTY,) * 4, 1, _normalized=True)
_ONE = Poly(({0: 1}, _EMPTY, _EMPTY, _EMPTY), 1, _normalized=True)
