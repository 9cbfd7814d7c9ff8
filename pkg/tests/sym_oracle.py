"""Independent sympy oracle: build matching expressions on both sides and compare exactly."""

from __future__ import annotations

import random
from fractions import Fraction

import sympy
from hypothesis import strategies as st

from contactverify.coeffring import CoeffNumber, ScalarExpr
from contactverify.contactlab import rational_sphere_point, sphere_chart

SQ2 = sympy.sqrt(2)


def to_sympy(c: CoeffNumber):
    a, b, s, d = (sympy.Rational(x.numerator, x.denominator) for x in c.components)
    return a + b * sympy.I + s * SQ2 + d * sympy.I * SQ2


def chart_symbols(n: int):
    z = [sympy.Symbol(f"z{j}") for j in range(1, n + 1)]
    zb = [sympy.Symbol(f"zb{j}") for j in range(1, n + 1)]
    rho = sympy.sqrt(sum(a * b for a, b in zip(z, zb)))
    return z, zb, rho


def equal_exact(a, b) -> bool:
    d = sympy.expand(a - b)
    if d == 0:
        return True
    d = sympy.expand(sympy.radsimp(sympy.together(d)))
    return d == 0 or sympy.simplify(d) == 0


def random_point(n: int, seed: int) -> tuple[dict[str, CoeffNumber], Fraction]:
    """Point with rational norm ``t`` so that the radical evaluates exactly."""
    rng = random.Random(seed)
    t = Fraction(rng.randint(1, 7), rng.randint(1, 5))
    p = rational_sphere_point(n, rng)
    return {k: v * t for k, v in p.items()}, t


def sympy_subs(n: int, point: dict[str, CoeffNumber]) -> dict:
    z, zb, _ = chart_symbols(n)
    out = {}
    for j in range(n):
        v = to_sympy(point[f"z{j + 1}"])
        out[z[j]] = v
        out[zb[j]] = sympy.conjugate(v)
    return out


CONSTS = [CoeffNumber(1), CoeffNumber(-2), CoeffNumber(Fraction(1, 3)), CoeffNumber(0, 1),
          CoeffNumber(0, 0, 1), CoeffNumber(1, 1, 0, -1)]


def leaves(n: int):
    chart = sphere_chart(n)
    z, zb, rho = chart_symbols(n)
    out = [(ScalarExpr.radical(chart), rho)]
    for j in range(n):
        out.append((ScalarExpr.variable(chart, f"z{j + 1}"), z[j]))
        out.append((ScalarExpr.variable(chart, f"zb{j + 1}"), zb[j]))
    out += [(ScalarExpr.constant(chart, c), to_sympy(c)) for c in CONSTS]
    return out


def divisors(n: int):
    """Denominators with no zero at real-conjugate points: ``k + |z1|^2``, ``k + rho``."""
    chart = sphere_chart(n)
    z, zb, rho = chart_symbols(n)
    z1, zb1, r = (ScalarExpr.variable(chart, "z1"), ScalarExpr.variable(chart, "zb1"),
                  ScalarExpr.radical(chart))
    return [(1 + z1 * zb1, 1 + z[0] * zb[0]), (2 + r, 2 + rho), (1 + r * z1 * zb1, 1 + rho * z[0] * zb[0])]


def _combine(n):
    divs = divisors(n)

    def go(pair):
        (x, xs), op, (y, ys), k = pair
        if op == "+":
            return x + y, xs + ys
        if op == "-":
            return x - y, xs - ys
        if op == "*":
            return x * y, xs * ys
        d, ds = divs[k % len(divs)]
        return x / d, xs / ds
    return go


def scalar_pairs(n: int = 2, max_leaves: int = 6):
    """Strategy of ``(ScalarExpr, sympy expr)`` pairs over the radical chart on C^n."""
    base = st.sampled_from(leaves(n))
    return st.recursive(
        base,
        lambda kids: st.tuples(kids, st.sampled_from("+-*/"), kids,
                               st.integers(0, 2)).map(_combine(n)),
        max_leaves=max_leaves,
    )
