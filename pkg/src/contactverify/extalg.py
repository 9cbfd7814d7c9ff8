"""Differential forms and vector fields with exact coefficients.

Forms are graded sums ``sum_I c_I dv_I`` over strictly increasing index
tuples ``I`` into the chart variables.  The radical ``rho`` never gets a
cotangent generator; anything depending on it is differentiated through
:meth:`ScalarExpr.partial_derivative`.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

from .coeffring import Chart, ChartError, CoeffNumber, ScalarExpr

Scalar = Union[ScalarExpr, int, Fraction, CoeffNumber]
Index = tuple[int, ...]


def _merge_sign(a: Index, b: Index) -> tuple[int, Index] | None:
    """Sign and sorted index of ``dv_a ^ dv_b``, or None if they share a slot."""
    if not b:
        return 1, a
    if not a:
        return 1, b
    if set(a) & set(b):
        return None
    inversions = 0
    for x in a:
        for y in b:
            if x > y:
                inversions += 1
    return (-1 if inversions & 1 else 1), tuple(sorted(a + b))


class DiffForm:
    __slots__ = ("chart", "terms")

    def __init__(self, chart: Chart, terms: Mapping[Index, ScalarExpr] | None = None):
        self.chart = chart
        clean: dict[Index, ScalarExpr] = {}
        for idx, c in (terms or {}).items():
            idx = tuple(idx)
            if any(x >= y for x, y in zip(idx, idx[1:])):
                raise ValueError(f"index tuple {idx} is not strictly increasing")
            if not isinstance(c, ScalarExpr):
                c = ScalarExpr.constant(chart, c)
            elif c.chart != chart:
                raise ChartError(f"coefficient lives on {c.chart.name!r}, form on {chart.name!r}")
            if not c.is_zero():
                clean[idx] = c
        self.terms = clean

    # constructors

    @classmethod
    def zero(cls, chart: Chart) -> "DiffForm":
        return cls(chart)

    @classmethod
    def function(cls, f: ScalarExpr) -> "DiffForm":
        return cls(f.chart, {(): f})

    @classmethod
    def differential(cls, chart: Chart, var: str | int) -> "DiffForm":
        """The basis 1-form ``d var``."""
        return cls(chart, {(chart.index(var),): ScalarExpr.constant(chart, 1)})

    @classmethod
    def basis(cls, chart: Chart, variables: Sequence[str | int],
              coeff: Scalar = 1) -> "DiffForm":
        """``coeff * dv_1 ^ ... ^ dv_k`` for the given variables in the given order."""
        form = cls.function(_as_scalar(chart, coeff))
        for v in variables:
            form = wedge(form, cls.differential(chart, v))
        return form

    @classmethod
    def sum(cls, forms: Iterable["DiffForm"], chart: Chart | None = None) -> "DiffForm":
        buckets: dict[Index, list[ScalarExpr]] = {}
        for a in forms:
            if chart is None:
                chart = a.chart
            elif a.chart != chart:
                raise ChartError(f"chart mismatch: {chart.name!r} vs {a.chart.name!r}")
            for idx, c in a.terms.items():
                buckets.setdefault(idx, []).append(c)
        if chart is None:
            raise ValueError("empty sum needs an explicit chart")
        return cls(chart, {idx: ScalarExpr.sum(cs, chart) for idx, cs in buckets.items()})

    # inspection

    def is_zero(self) -> bool:
        return not self.terms

    def degrees(self) -> set[int]:
        return {len(idx) for idx in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    @property
    def degree(self) -> int:
        degs = self.degrees()
        if len(degs) > 1:
            raise ValueError(f"form of mixed degrees {sorted(degs)}")
        return degs.pop() if degs else 0

    def component(self, k: int) -> "DiffForm":
        return DiffForm(self.chart, {i: c for i, c in self.terms.items() if len(i) == k})

    def coefficient(self, variables: Sequence[str | int]) -> ScalarExpr:
        """Coefficient of ``dv_1 ^ ... ^ dv_k`` (any order; the sign is applied)."""
        idx = [self.chart.index(v) for v in variables]
        if len(set(idx)) != len(idx):
            return ScalarExpr.constant(self.chart, 0)
        inversions = sum(1 for a in range(len(idx)) for b in range(a + 1, len(idx))
                         if idx[a] > idx[b])
        c = self.terms.get(tuple(sorted(idx)))
        if c is None:
            return ScalarExpr.constant(self.chart, 0)
        return -c if inversions & 1 else c

    def evaluate(self, point) -> dict[Index, CoeffNumber]:
        return {idx: c.evaluate(point) for idx, c in self.terms.items()}

    # arithmetic

    def _check(self, other: "DiffForm"):
        if other.chart != self.chart:
            raise ChartError(f"chart mismatch: {self.chart.name!r} vs {other.chart.name!r}")

    def __add__(self, other):
        if not isinstance(other, DiffForm):
            return NotImplemented
        self._check(other)
        return DiffForm.sum([self, other])

    def __neg__(self):
        return DiffForm(self.chart, {i: -c for i, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, DiffForm):
            return NotImplemented
        return self + (-other)

    def __mul__(self, s):
        """Multiply by a function (degree-0 coefficient)."""
        if isinstance(s, DiffForm):
            return NotImplemented
        s = _as_scalar(self.chart, s)
        return DiffForm(self.chart, {i: c * s for i, c in self.terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, DiffForm):
            return NotImplemented
        return self.chart == other.chart and (self - other).is_zero()

    __hash__ = None  # type: ignore[assignment]

    def conjugate(self) -> "DiffForm":
        perm = self.chart.conj_index
        out = []
        for idx, c in self.terms.items():
            new = [perm[k] for k in idx]
            inv = sum(1 for a in range(len(new)) for b in range(a + 1, len(new)) if new[a] > new[b])
            cc = c.conjugate()
            out.append(DiffForm(self.chart, {tuple(sorted(new)): -cc if inv & 1 else cc}))
        return DiffForm.sum(out, self.chart)

    # display

    def format(self) -> str:
        if not self.terms:
            return "0"
        names = self.chart.variables
        pieces = []
        for idx in sorted(self.terms, key=lambda i: (len(i), i)):
            c = self.terms[idx]
            basis = "^".join(f"d{names[k]}" for k in idx)
            cs = c.format()
            if not basis:
                pieces.append(f"({cs})")
            elif c.is_constant() and c.constant_value() == 1:
                pieces.append(basis)
            else:
                pieces.append(f"({cs})*{basis}")
        return " + ".join(pieces)

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"DiffForm[{self.chart.name}]({self.format()})"


class VectorField:
    __slots__ = ("chart", "components")

    def __init__(self, chart: Chart, components: Mapping[str | int, Scalar]):
        self.chart = chart
        comps: dict[int, ScalarExpr] = {}
        for v, c in components.items():
            k = chart.index(v)
            c = _as_scalar(chart, c)
            if not c.is_zero():
                comps[k] = c
        self.components = comps

    def __call__(self, f: ScalarExpr) -> ScalarExpr:
        """Directional derivative ``X(f)``."""
        return ScalarExpr.sum([c * f.partial_derivative(k) for k, c in self.components.items()],
                              self.chart)

    def __mul__(self, s):
        s = _as_scalar(self.chart, s)
        return VectorField(self.chart, {k: c * s for k, c in self.components.items()})

    __rmul__ = __mul__

    def __add__(self, other: "VectorField"):
        if other.chart != self.chart:
            raise ChartError("chart mismatch")
        keys = set(self.components) | set(other.components)
        zero = ScalarExpr.constant(self.chart, 0)
        return VectorField(self.chart, {k: self.components.get(k, zero) + other.components.get(k, zero)
                                        for k in keys})

    def __repr__(self):
        names = self.chart.variables
        body = " + ".join(f"({c})*d/d{names[k]}" for k, c in sorted(self.components.items()))
        return f"VectorField[{self.chart.name}]({body or '0'})"


class ChartMap:
    """Map ``source -> target`` given by the pullbacks of the target coordinates.

    For a complex target only the holomorphic images are required; the
    conjugate images default to their conjugates and are checked when given.
    A radical target needs ``radical_image``, whose square is verified
    against ``sum_j image(z_j) * image(zbar_j)`` at construction.
    """

    __slots__ = ("source", "target", "images", "radical_image", "_dcache")

    def __init__(self, source: Chart, target: Chart,
                 images: Mapping[str, Scalar] | Sequence[Scalar],
                 radical_image: Scalar | None = None):
        self.source = source
        self.target = target
        if isinstance(images, Mapping):
            given = {target.index(k): _as_scalar(source, v) for k, v in images.items()}
        else:
            if len(images) != target.nvars:
                raise ChartError(f"expected {target.nvars} images, got {len(images)}")
            given = {k: _as_scalar(source, v) for k, v in enumerate(images)}
        full: list[ScalarExpr] = []
        for k in range(target.nvars):
            img = given.get(k)
            if target.kind == "complex" and k % 2 == 1:
                expected = full[k - 1].conjugate()
                if img is None:
                    img = expected
                elif img != expected:
                    raise ChartError(
                        f"image of {target.variables[k]} is not the conjugate of "
                        f"the image of {target.variables[k - 1]}")
            if img is None:
                raise ChartError(f"no image given for {target.variables[k]}")
            full.append(img)
        self.images = tuple(full)
        if target.has_radical:
            if radical_image is None:
                raise ChartError(f"target {target.name!r} has a radical; radical_image is required")
            r = _as_scalar(source, radical_image)
            norm = ScalarExpr.sum([full[k] * full[k + 1] for k in target.holomorphic_indices()],
                                  source)
            if r * r != norm:
                raise ChartError("radical_image squared does not match the squared norm of the image")
            self.radical_image = r
        else:
            if radical_image is not None:
                raise ChartError(f"target {target.name!r} has no radical")
            self.radical_image = None
        self._dcache: dict[int, DiffForm] = {}

    def pull_scalar(self, c: ScalarExpr) -> ScalarExpr:
        if c.chart != self.target:
            raise ChartError(f"expression lives on {c.chart.name!r}, map target is {self.target.name!r}")
        return c.substitute(self.source, self.images, self.radical_image)

    def pull_differential(self, k: int) -> DiffForm:
        d = self._dcache.get(k)
        if d is None:
            d = self._dcache[k] = exterior_derivative(DiffForm.function(self.images[k]))
        return d


def _as_scalar(chart: Chart, c: Scalar) -> ScalarExpr:
    if isinstance(c, ScalarExpr):
        if c.chart != chart:
            raise ChartError(f"chart mismatch: {c.chart.name!r} vs {chart.name!r}")
        return c
    return ScalarExpr.constant(chart, c)


def wedge(a: DiffForm, b: DiffForm) -> DiffForm:
    a._check(b)
    buckets: dict[Index, list[ScalarExpr]] = {}
    for ia, ca in a.terms.items():
        for ib, cb in b.terms.items():
            merged = _merge_sign(ia, ib)
            if merged is None:
                continue
            sign, idx = merged
            p = ca * cb
            buckets.setdefault(idx, []).append(p if sign > 0 else -p)
    return DiffForm(a.chart, {i: ScalarExpr.sum(cs, a.chart) for i, cs in buckets.items()})


def exterior_derivative(a: DiffForm) -> DiffForm:
    chart = a.chart
    buckets: dict[Index, list[ScalarExpr]] = {}
    for idx, c in a.terms.items():
        for k in range(chart.nvars):
            if k in idx:
                continue
            dc = c.partial_derivative(k)
            if dc.is_zero():
                continue
            before = sum(1 for i in idx if i < k)
            new = tuple(sorted(idx + (k,)))
            buckets.setdefault(new, []).append(-dc if before & 1 else dc)
    return DiffForm(chart, {i: ScalarExpr.sum(cs, chart) for i, cs in buckets.items()})


d = exterior_derivative


def interior_product(X: VectorField, a: DiffForm) -> DiffForm:
    if X.chart != a.chart:
        raise ChartError(f"chart mismatch: {X.chart.name!r} vs {a.chart.name!r}")
    buckets: dict[Index, list[ScalarExpr]] = {}
    for idx, c in a.terms.items():
        for p, k in enumerate(idx):
            xk = X.components.get(k)
            if xk is None:
                continue
            t = xk * c
            buckets.setdefault(idx[:p] + idx[p + 1:], []).append(-t if p & 1 else t)
    return DiffForm(a.chart, {i: ScalarExpr.sum(cs, a.chart) for i, cs in buckets.items()})


def lie_derivative(X: VectorField, a: DiffForm) -> DiffForm:
    """Cartan's formula ``L_X a = d(i_X a) + i_X(d a)``."""
    return exterior_derivative(interior_product(X, a)) + interior_product(X, exterior_derivative(a))


def pullback(m: ChartMap, a: DiffForm) -> DiffForm:
    if a.chart != m.target:
        raise ChartError(f"form lives on {a.chart.name!r}, map target is {m.target.name!r}")
    out = []
    for idx, c in a.terms.items():
        piece = DiffForm.function(m.pull_scalar(c))
        for k in idx:
            piece = wedge(piece, m.pull_differential(k))
            if piece.is_zero():
                break
        out.append(piece)
    return DiffForm.sum(out, m.source)


def wedge_power(a: DiffForm, k: int) -> DiffForm:
    if k < 1:
        raise ValueError("wedge power needs k >= 1")
    if k == 1:
        return a
    if not a.is_homogeneous() or a.degree % 2:
        raise ValueError("wedge powers with k > 1 need a homogeneous form of even degree")
    result = None
    base = a
    while k:
        if k & 1:
            result = base if result is None else wedge(result, base)
        k >>= 1
        if k:
            base = wedge(base, base)
    return result
