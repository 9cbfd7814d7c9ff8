"""Rational functions on a chart, with an optional radical ``rho``.

A :class:`ScalarExpr` is stored as ``(p0 + rho*p1) / prod(f_k**e_k)`` where
``p0, p1`` are polynomials in the chart variables and the ``f_k`` are
pairwise distinct monic rho-free polynomials.  ``rho**2`` is rewritten to
``N = sum_j z_j*zbar_j`` on every product, and denominators containing
``rho`` are rationalized by multiplying with ``p0 - rho*p1``.  After each
operation every denominator factor is trial-divided out of the numerator,
which keeps expressions reduced without a general multivariate gcd.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

from .chart import Chart, ChartError, exponent
from .numbers import CoeffNumber, rational_sqrt
from .poly import Poly, _var_monomial

Number = Union[int, Fraction, CoeffNumber]

_RADICAL_CACHE: dict[Chart, Poly] = {}


class EvaluationError(ArithmeticError):
    pass


def norm_polynomial(chart: Chart) -> Poly:
    """``sum_j z_j * zbar_j`` for a complex chart."""
    p = _RADICAL_CACHE.get(chart)
    if p is None:
        if chart.kind != "complex":
            raise ChartError("norm polynomial needs a complex chart")
        terms = {}
        for k in chart.holomorphic_indices():
            terms[_var_monomial(k) + _var_monomial(k + 1)] = 1
        p = Poly([terms], 1)
        _RADICAL_CACHE[chart] = p
    return p


def _factor_key(f: Poly):
    return (f.total_degree(), f.leading_monomial(), len(f), hash(f))


def _pow(f: Poly, e: int) -> Poly:
    return f ** e


class ScalarExpr:
    """Element of the function field of a chart (see module docstring)."""

    __slots__ = ("chart", "p0", "p1", "den")

    def __init__(self, chart: Chart, p0: Poly, p1: Poly | None = None,
                 den: Mapping[Poly, int] | Iterable[tuple[Poly, int]] = (), *,
                 reduce: bool = True):
        p1 = Poly.zero() if p1 is None else p1
        if not p1.is_zero() and not chart.has_radical:
            raise ChartError(f"chart {chart.name!r} has no radical")
        den = dict(den)
        if reduce:
            p0, p1, den = _cancel(p0, p1, den)
        self.chart = chart
        self.p0 = p0
        self.p1 = p1
        self.den = tuple(sorted(((f, e) for f, e in den.items() if e > 0),
                                key=lambda fe: _factor_key(fe[0])))

    # constructors

    @classmethod
    def constant(cls, chart: Chart, c: Number) -> "ScalarExpr":
        return cls(chart, Poly.constant(c), reduce=False)

    @classmethod
    def variable(cls, chart: Chart, var: str | int) -> "ScalarExpr":
        return cls(chart, Poly.variable(chart.index(var)), reduce=False)

    @classmethod
    def radical(cls, chart: Chart) -> "ScalarExpr":
        if not chart.has_radical:
            raise ChartError(f"chart {chart.name!r} has no radical")
        return cls(chart, Poly.zero(), Poly.one(), reduce=False)

    @classmethod
    def from_poly(cls, chart: Chart, p: Poly) -> "ScalarExpr":
        return cls(chart, p, reduce=False)

    def _coerce(self, other) -> "ScalarExpr":
        if isinstance(other, ScalarExpr):
            if other.chart != self.chart:
                raise ChartError(f"chart mismatch: {self.chart.name!r} vs {other.chart.name!r}")
            return other
        if isinstance(other, (int, Fraction, CoeffNumber)):
            return ScalarExpr.constant(self.chart, other)
        raise TypeError(f"cannot combine ScalarExpr with {type(other).__name__}")

    # inspection

    def is_zero(self) -> bool:
        return self.p0.is_zero() and self.p1.is_zero()

    def has_radical_part(self) -> bool:
        return not self.p1.is_zero()

    def is_polynomial(self) -> bool:
        return not self.den and self.p1.is_zero()

    def is_constant(self) -> bool:
        return not self.den and self.p1.is_zero() and self.p0.is_constant()

    def constant_value(self) -> CoeffNumber:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self.p0.constant_value()

    @property
    def numerator(self) -> Poly:
        """Numerator as a polynomial in the chart variables followed by ``rho``."""
        if self.p1.is_zero():
            return self.p0
        shift = _var_monomial(self.chart.nvars)
        lifted = Poly([{m + shift: c for m, c in p.items()} for p in self.p1.parts],
                      self.p1.den)
        return self.p0 + lifted

    @property
    def denominator(self) -> Poly:
        out = Poly.one()
        for f, e in self.den:
            out = out * _pow(f, e)
        return out

    def canonical(self) -> "ScalarExpr":
        return ScalarExpr(self.chart, self.p0, self.p1, dict(self.den))

    def identical(self, other: "ScalarExpr") -> bool:
        """Structural equality of the stored canonical forms."""
        return (self.chart == other.chart and self.p0 == other.p0 and self.p1 == other.p1
                and self.den == other.den)

    def equals_by_cross_multiplication(self, other: "ScalarExpr") -> bool:
        other = self._coerce(other)
        a0, a1 = _mul_num(self.chart, self.p0, self.p1, other.denominator, Poly.zero())
        b0, b1 = _mul_num(self.chart, other.p0, other.p1, self.denominator, Poly.zero())
        return (a0 - b0).is_zero() and (a1 - b1).is_zero()

    # arithmetic

    def __add__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return ScalarExpr.sum([self, other])

    __radd__ = __add__

    def __neg__(self):
        return ScalarExpr(self.chart, -self.p0, -self.p1, dict(self.den), reduce=False)

    def __sub__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return ScalarExpr.sum([self, -other])

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, CoeffNumber)):
            c = CoeffNumber.coerce(other)
            if c.is_zero():
                return ScalarExpr(self.chart, Poly.zero(), reduce=False)
            return ScalarExpr(self.chart, self.p0.scale(c), self.p1.scale(c), dict(self.den),
                              reduce=False)
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return ScalarExpr(self.chart, Poly.zero(), reduce=False)
        p0, p1 = _mul_num(self.chart, self.p0, self.p1, other.p0, other.p1)
        den = dict(self.den)
        for f, e in other.den:
            den[f] = den.get(f, 0) + e
        return ScalarExpr(self.chart, p0, p1, den)

    __rmul__ = __mul__

    def inverse(self) -> "ScalarExpr":
        if self.is_zero():
            raise ZeroDivisionError("division by a zero ScalarExpr")
        chart = self.chart
        num0 = Poly.one()
        for f, e in self.den:
            num0 = num0 * _pow(f, e)
        candidates = [f for f, _ in self.den]
        if chart.has_radical:
            candidates.append(norm_polynomial(chart))
        if self.p1.is_zero():
            unit, factors = _factor(chart, self.p0, candidates)
            inv = unit.inverse()
            return ScalarExpr(chart, num0.scale(inv), None, factors)
        N = norm_polynomial(chart)
        norm = self.p0 * self.p0 - N * self.p1 * self.p1
        unit, factors = _factor(chart, norm, candidates)
        inv = unit.inverse()
        return ScalarExpr(chart, (num0 * self.p0).scale(inv), (-(num0 * self.p1)).scale(inv),
                          factors)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction, CoeffNumber)):
            return self * CoeffNumber.coerce(other).inverse()
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = ScalarExpr.constant(self.chart, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    def __eq__(self, other):
        try:
            other = self._coerce(other)
        except (TypeError, ChartError):
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None  # type: ignore[assignment]

    @staticmethod
    def sum(items: Iterable["ScalarExpr"], chart: Chart | None = None) -> "ScalarExpr":
        """Sum over one common denominator, reduced once at the end."""
        items = list(items)
        for x in items:
            if chart is None:
                chart = x.chart
            elif x.chart != chart:
                raise ChartError(f"chart mismatch: {chart.name!r} vs {x.chart.name!r}")
        if chart is None:
            raise ValueError("empty sum needs an explicit chart")
        items = [x for x in items if not x.is_zero()]
        if not items:
            return ScalarExpr(chart, Poly.zero(), reduce=False)
        if len(items) == 1:
            return items[0]
        lcm: dict[Poly, int] = {}
        for x in items:
            for f, e in x.den:
                if lcm.get(f, 0) < e:
                    lcm[f] = e
        groups: dict[tuple, list[ScalarExpr]] = {}
        for x in items:
            groups.setdefault(x.den, []).append(x)
        acc0, acc1 = Poly.zero(), Poly.zero()
        for den, xs in groups.items():
            g0 = Poly.zero()
            g1 = Poly.zero()
            for x in xs:
                g0 = g0 + x.p0
                g1 = g1 + x.p1
            have = dict(den)
            mult = Poly.one()
            for f, e in lcm.items():
                d = e - have.get(f, 0)
                if d:
                    mult = mult * _pow(f, d)
            if mult != Poly.one():
                g0, g1 = g0 * mult, g1 * mult
            acc0, acc1 = acc0 + g0, acc1 + g1
        return ScalarExpr(chart, acc0, acc1, lcm)

    # involution, calculus, evaluation

    def conjugate(self) -> "ScalarExpr":
        chart = self.chart
        perm = chart.conj_index
        p0 = self.p0.permute_variables(perm).conjugate_coefficients()
        p1 = self.p1.permute_variables(perm).conjugate_coefficients()
        scale = CoeffNumber(1)
        den: dict[Poly, int] = {}
        for f, e in self.den:
            g = f.permute_variables(perm).conjugate_coefficients()
            lc, g = g.monic()
            scale = scale * lc ** e
            den[g] = den.get(g, 0) + e
        inv = scale.inverse()
        return ScalarExpr(chart, p0.scale(inv), p1.scale(inv), den)

    def partial_derivative(self, var: str | int) -> "ScalarExpr":
        chart = self.chart
        k = chart.index(var)
        parts = [ScalarExpr(chart, self.p0.derivative(k), self.p1.derivative(k), reduce=False)]
        if chart.has_radical and not self.p1.is_zero():
            # d rho / d v_k = conj(v_k) / (2 rho) = conj(v_k) * rho / (2 N)
            partner = Poly.variable(chart.conj_index[k])
            parts.append(ScalarExpr(chart, Poly.zero(),
                                    (self.p1 * partner).scale(Fraction(1, 2)),
                                    {norm_polynomial(chart): 1}))
        dnum = ScalarExpr.sum(parts, chart)
        if not self.den:
            return dnum
        inv_den = ScalarExpr(chart, Poly.one(), None, dict(self.den), reduce=False)
        logs = []
        for f, e in self.den:
            df = f.derivative(k)
            if not df.is_zero():
                logs.append(ScalarExpr(chart, df.scale(e), None, {f: 1}, reduce=False))
        first = dnum * inv_den
        if not logs:
            return first
        return first - self * ScalarExpr.sum(logs, chart)

    def evaluate(self, point: Mapping[str, Number]) -> CoeffNumber:
        values = point_values(self.chart, point)
        chart = self.chart
        denval = CoeffNumber(1)
        for f, e in self.den:
            denval = denval * f.evaluate(values) ** e
        if denval.is_zero():
            raise EvaluationError(f"denominator of {self} vanishes at {dict(point)}")
        num = self.p0.evaluate(values)
        if not self.p1.is_zero():
            r = radical_value(chart, values)
            num = num + self.p1.evaluate(values) * r
        return num / denval

    def substitute(self, target: Chart, images: Sequence["ScalarExpr"],
                   radical_image: "ScalarExpr | None" = None) -> "ScalarExpr":
        """Replace chart variable ``k`` by ``images[k]`` (expressions on ``target``)."""
        cache: dict[tuple[int, int], ScalarExpr] = {}
        num = substitute_poly(self.p0, target, images, cache)
        if not self.p1.is_zero():
            if radical_image is None:
                raise ChartError("substituting a radical expression needs a radical image")
            num = num + radical_image * substitute_poly(self.p1, target, images, cache)
        for f, e in self.den:
            num = num / substitute_poly(f, target, images, cache) ** e
        return num

    # display

    def format(self) -> str:
        names = list(self.chart.variables)
        extra = "rho" if self.chart.has_radical else None
        num = self.numerator.format(names, extra)
        if not self.den:
            return num
        dens = []
        for f, e in self.den:
            s = f.format(names)
            if len(f) > 1:
                s = f"({s})"
            dens.append(s if e == 1 else f"{s}^{e}")
        return f"({num}) / ({'*'.join(dens)})" if len(dens) > 1 else f"({num}) / {dens[0]}"

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"ScalarExpr[{self.chart.name}]({self.format()})"


def _mul_num(chart: Chart, a0: Poly, a1: Poly, b0: Poly, b1: Poly) -> tuple[Poly, Poly]:
    p0 = a0 * b0
    if not (a1.is_zero() or b1.is_zero()):
        p0 = p0 + norm_polynomial(chart) * (a1 * b1)
    p1 = Poly.zero()
    if not b1.is_zero():
        p1 = p1 + a0 * b1
    if not a1.is_zero():
        p1 = p1 + a1 * b0
    return p0, p1


def _cancel(p0: Poly, p1: Poly, den: dict[Poly, int]):
    if p0.is_zero() and p1.is_zero():
        return p0, p1, {}
    out = {}
    for f, e in den.items():
        while e > 0:
            q0 = p0.divexact(f)
            if q0 is None:
                break
            if p1.is_zero():
                q1 = p1
            else:
                q1 = p1.divexact(f)
                if q1 is None:
                    break
            p0, p1 = q0, q1
            e -= 1
        if e:
            out[f] = e
    return p0, p1, out


def _factor(chart: Chart, p: Poly, candidates: Sequence[Poly]) -> tuple[CoeffNumber, dict[Poly, int]]:
    """Split ``p`` as unit * product of monic factors, reusing known factors."""
    if p.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    unit, p = p.monic()
    out: dict[Poly, int] = {}
    seen = []
    for f in candidates:
        if f in seen or f.is_constant():
            continue
        seen.append(f)
        while not p.is_constant():
            q = p.divexact(f)
            if q is None:
                break
            p = q
            out[f] = out.get(f, 0) + 1
    if not p.is_constant():
        mons = p.monomials()
        for k in range(chart.nvars):
            emin = min(exponent(m, k) for m in mons)
            if emin:
                v = Poly.variable(k)
                out[v] = out.get(v, 0) + emin
                p = p.divexact(v ** emin)
                mons = p.monomials()
    if not p.is_constant():
        out[p] = out.get(p, 0) + 1
    return unit, out


def substitute_poly(p: Poly, target: Chart, images: Sequence[ScalarExpr],
                    cache: dict | None = None) -> ScalarExpr:
    cache = {} if cache is None else cache
    terms = []
    for m, c in p.terms():
        t = ScalarExpr.constant(target, c)
        for k in range(len(images)):
            e = exponent(m, k)
            if e:
                key = (k, e)
                v = cache.get(key)
                if v is None:
                    v = cache[key] = images[k] ** e
                t = t * v
        terms.append(t)
    return ScalarExpr.sum(terms, target)


def point_values(chart: Chart, point: Mapping[str, Number]) -> list[CoeffNumber]:
    """Full variable assignment from values of the holomorphic coordinates."""
    values: list[CoeffNumber | None] = [None] * chart.nvars
    for name, v in point.items():
        values[chart.index(name)] = CoeffNumber.coerce(v)
    if chart.kind == "complex":
        for k in chart.holomorphic_indices():
            z, zb = values[k], values[k + 1]
            if z is None and zb is None:
                raise EvaluationError(f"no value given for {chart.variables[k]}")
            if z is None:
                z = zb.conjugate()
            if zb is None:
                zb = z.conjugate()
            if zb != z.conjugate():
                raise EvaluationError(
                    f"{chart.variables[k + 1]} must be the conjugate of {chart.variables[k]}")
            values[k], values[k + 1] = z, zb
    missing = [chart.variables[k] for k, v in enumerate(values) if v is None]
    if missing:
        raise EvaluationError(f"no value given for {', '.join(missing)}")
    return values  # type: ignore[return-value]


def radical_value(chart: Chart, values: Sequence[CoeffNumber]) -> CoeffNumber:
    n = norm_polynomial(chart).evaluate(values)
    if not n.is_rational():
        raise EvaluationError(f"squared norm {n} is not rational")
    r = rational_sqrt(n.to_fraction())
    if r is None:
        raise EvaluationError(f"squared norm {n} is not the square of a rational")
    return CoeffNumber(r)
