import itertools
import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from contactverify.coeffring import I, Chart, ChartError, ScalarExpr
from contactverify.contactlab import inclusion_map, sphere_chart, sphere_context
from contactverify.extalg import (
    ChartMap, DiffForm, VectorField, exterior_derivative, interior_product, lie_derivative,
    pullback, wedge, wedge_power,
)
from sym_oracle import scalar_pairs

C2 = sphere_chart(2)
VARS = C2.variables  # z1 zb1 z2 zb2


def dv(chart, v):
    return DiffForm.differential(chart, v)


def var(chart, v):
    return ScalarExpr.variable(chart, v)


def forms(degree=None, n_terms=2, n=2):
    """Random homogeneous forms on the radical chart over C^n."""
    chart = sphere_chart(n)
    deg = st.integers(0, 3) if degree is None else st.just(degree)

    def build(args):
        k, items = args
        terms = {}
        for (c, _), idx in items:
            idx = tuple(sorted(idx[:k]))
            terms[idx] = c if idx not in terms else terms[idx] + c
        return DiffForm(chart, terms)

    idx = st.permutations(range(2 * n)).map(tuple)
    return st.tuples(deg, st.lists(st.tuples(scalar_pairs(n, max_leaves=4), idx),
                                   min_size=1, max_size=n_terms)).map(build)


# brute-force oracle: a constant k-form as an alternating multilinear map

def as_multilinear(a: DiffForm, vectors):
    total = Fraction(0)
    for idx, c in a.terms.items():
        minor = [[v[i] for v in vectors] for i in idx]
        total += c.constant_value().to_fraction() * _det(minor)
    return total


def _det(m):
    n = len(m)
    if n == 0:
        return 1
    total = 0
    for perm in itertools.permutations(range(n)):
        sign = (-1) ** sum(1 for i, j in itertools.combinations(perm, 2) if i > j)
        total += sign * math.prod(m[i][perm[i]] for i in range(n))
    return total


def brute_wedge(a, p, b, q, vectors):
    total = Fraction(0)
    for perm in itertools.permutations(range(p + q)):
        sign = (-1) ** sum(1 for i, j in itertools.combinations(perm, 2) if i > j)
        vs = [vectors[i] for i in perm]
        total += sign * as_multilinear(a, vs[:p]) * as_multilinear(b, vs[p:])
    return total / (math.factorial(p) * math.factorial(q))


R4 = Chart.real("R4", ["x1", "x2", "x3", "x4"])


def constant_form(rng, k):
    terms = {idx: rng.randint(-3, 3) for idx in itertools.combinations(range(4), k)
             if rng.random() < 0.7}
    return DiffForm(R4, terms)


@pytest.mark.parametrize("seed", range(30))
def test_wedge_matches_multilinear_oracle(seed):
    rng = random.Random(seed)
    p, q = rng.randint(0, 2), rng.randint(0, 2)
    a, b = constant_form(rng, p), constant_form(rng, q)
    vectors = [[Fraction(rng.randint(-4, 4)) for _ in range(4)] for _ in range(p + q)]
    assert as_multilinear(wedge(a, b), vectors) == brute_wedge(a, p, b, q, vectors)


def test_wedge_examples():
    z1, zb1 = var(C2, "z1"), var(C2, "zb1")
    e = wedge(dv(C2, "z1"), dv(C2, "zb1"))
    assert e.terms == {(0, 1): ScalarExpr.constant(C2, 1)}
    assert wedge(dv(C2, "z1"), dv(C2, "z1")).is_zero()
    got = wedge(dv(C2, "zb1") * z1, dv(C2, "z1") * zb1)
    assert got == e * (-(z1 * zb1))


@settings(max_examples=60)
@given(forms(), forms())
def test_graded_commutativity(a, b):
    p, q = a.degree, b.degree
    assert wedge(a, b) == wedge(b, a) * (-1) ** (p * q)


def test_exterior_derivative_examples():
    z1, zb1 = var(C2, "z1"), var(C2, "zb1")
    assert exterior_derivative(dv(C2, "zb1") * z1) == wedge(dv(C2, "z1"), dv(C2, "zb1"))
    rho = ScalarExpr.radical(C2)
    want = DiffForm.sum([dv(C2, "z1") * zb1, dv(C2, "zb1") * z1,
                         dv(C2, "z2") * var(C2, "zb2"), dv(C2, "zb2") * var(C2, "z2")]) \
        * (1 / (2 * rho))
    assert exterior_derivative(DiffForm.function(rho)) == want
    ctx = sphere_context(2)
    assert exterior_derivative(exterior_derivative(ctx.alpha_std)).is_zero()


@settings(max_examples=200)
@given(forms())
def test_d_squared_is_zero(a):
    assert exterior_derivative(exterior_derivative(a)).is_zero()


@settings(max_examples=200)
@given(forms(n_terms=1), forms(n_terms=1))
def test_leibniz(a, b):
    lhs = exterior_derivative(wedge(a, b))
    rhs = wedge(exterior_derivative(a), b) + wedge(a, exterior_derivative(b)) * (-1) ** a.degree
    assert lhs == rhs


def test_interior_product_examples():
    ctx = sphere_context(2)
    z1, zb1 = var(C2, "z1"), var(C2, "zb1")
    two_form = wedge(dv(C2, "z1"), dv(C2, "zb1")) * (2 * I)
    want = (dv(C2, "zb1") * z1 - dv(C2, "z1") * zb1) * I
    assert interior_product(ctx.X_L, two_form) == want
    assert interior_product(ctx.X_L, DiffForm.function(z1)).is_zero()
    d_z1 = VectorField(C2, {"z1": 1})
    assert interior_product(d_z1, wedge(dv(C2, "z1"), dv(C2, "zb1"))) == dv(C2, "zb1")


def fields():
    def build(items):
        return VectorField(C2, {v: c for v, (c, _) in zip(VARS, items)})
    return st.lists(scalar_pairs(2, max_leaves=3), min_size=4, max_size=4).map(build)


@settings(max_examples=60)
@given(fields(), forms())
def test_interior_product_squares_to_zero(X, a):
    assert interior_product(X, interior_product(X, a)).is_zero()


def test_lie_derivative_examples():
    R = Chart.real("R2", ["x", "y"])
    x = var(R, "x")
    a = wedge(dv(R, "x"), dv(R, "y")) * x
    assert lie_derivative(VectorField(R, {"x": 1}), a) == wedge(dv(R, "x"), dv(R, "y"))
    ctx = sphere_context(2)
    assert lie_derivative(ctx.X_L, DiffForm.function(ScalarExpr.constant(C2, 5))).is_zero()


@settings(max_examples=60)
@given(fields(), forms(degree=1, n_terms=3))
def test_lie_derivative_of_one_forms_in_coordinates(X, a):
    # L_X(sum a_i dx_i) = sum X(a_i) dx_i + a_i d(X^i)
    parts = []
    for (k,), c in a.terms.items():
        parts.append(dv(C2, k) * X(c))
        comp = X.components.get(k)
        if comp is not None:
            parts.append(exterior_derivative(DiffForm.function(comp)) * c)
    assert lie_derivative(X, a) == DiffForm.sum(parts, C2)


def test_chart_mismatch():
    with pytest.raises(ChartError):
        wedge(dv(C2, "z1"), dv(sphere_chart(3), "z1"))
    with pytest.raises(ChartError):
        interior_product(sphere_context(3).X_L, dv(C2, "z1"))


# pullback

def test_pullback_of_square_map():
    U = Chart.real("U", ["u"])
    X = Chart.real("X", ["x"])
    u = var(U, "u")
    m = ChartMap(U, X, {"x": u * u})
    assert pullback(m, dv(X, "x")) == dv(U, "u") * (2 * u)


def test_chart_map_checks_radical():
    src = sphere_chart(2)
    with pytest.raises(ChartError):
        ChartMap(src, sphere_chart(3), {"z1": var(src, "z1"), "z2": var(src, "z2"), "z3": 1},
                 radical_image=ScalarExpr.radical(src))
    with pytest.raises(ChartError):
        ChartMap(src, sphere_chart(2), {"z1": var(src, "z1"), "z2": var(src, "z2")})


@settings(max_examples=40)
@given(forms(n_terms=2, n=3), forms(n_terms=1, n=3), st.integers(1, 3))
def test_pullback_naturality(a, b, j):
    m = inclusion_map(2, j)
    assert pullback(m, wedge(a, b)) == wedge(pullback(m, a), pullback(m, b))
    assert pullback(m, exterior_derivative(a)) == exterior_derivative(pullback(m, a))


def test_wedge_power_examples():
    e1 = wedge(dv(C2, "z1"), dv(C2, "zb1"))
    e2 = wedge(dv(C2, "z2"), dv(C2, "zb2"))
    assert wedge_power(e1 + e2, 2) == wedge(e1, e2) * 2
    assert wedge_power(e1, 1) == e1
    with pytest.raises(ValueError):
        wedge_power(dv(C2, "z1"), 2)


@settings(max_examples=30)
@given(forms(degree=2, n_terms=3), st.integers(1, 2), st.integers(1, 2))
def test_wedge_power_additive(a, j, k):
    assert wedge_power(a, j + k) == wedge(wedge_power(a, j), wedge_power(a, k))
