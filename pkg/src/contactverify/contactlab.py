"""Contact forms on spheres, the stereographic disk and the Weinstein model.

Every ``verify_*`` function returns a :class:`VerificationResult` whose
status is ``pass`` only when each asserted identity reduced to an exact
zero.  Extra keyword arguments select the mutated variants used as negative
controls.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .coeffring import I, SQRT2, Chart, ChartError, CoeffNumber, ScalarExpr
from .extalg import (ChartMap, DiffForm, VectorField, exterior_derivative, interior_product,
                     lie_derivative, pullback, wedge, wedge_power)
from .results import ParameterError, Recorder, VerificationResult

# upper bounds on n; the CLI can lift them with --unsafe-n
DEFAULT_CAPS = {
    "top-power": 4,
    "lagrange": 5,
    "embedding-chain": 6,
    "liouville": 4,
    "weinstein": 4,
}


def _check_n(n: int, lo: int, cap: int | None, what: str) -> None:
    if not isinstance(n, int) or n < lo:
        raise ParameterError(f"{what}: n must be an integer >= {lo}, got {n!r}")
    if cap is not None and n > cap:
        raise ParameterError(f"{what}: n={n} exceeds the cap {cap}")


def _d(f: ScalarExpr) -> DiffForm:
    return exterior_derivative(DiffForm.function(f))


def _fn(f: ScalarExpr) -> DiffForm:
    return DiffForm.function(f)


# spheres in C^n


@dataclass(frozen=True, eq=False)
class SphereContext:
    n: int
    chart: Chart
    z: tuple[ScalarExpr, ...]
    z_bar: tuple[ScalarExpr, ...]
    rho: ScalarExpr
    norm_sq: ScalarExpr
    f: ScalarExpr
    f_bar: ScalarExpr
    alpha_std: DiffForm
    alpha_minus: DiffForm
    alpha_minus_tilde: DiffForm
    omega_minus: DiffForm
    X_L: VectorField

    def volume_form(self, coeff) -> DiffForm:
        """``coeff * dz1 ^ dzb1 ^ ... ^ dzn ^ dzbn``."""
        return DiffForm.basis(self.chart, self.chart.variables, coeff)

    def top_power_closed_form(self, sign: int = -1) -> DiffForm:
        """Closed form of the n-th power of omega_minus (``sign=-1`` is the claimed one)."""
        N = self.norm_sq
        c = CoeffNumber(0, 2) ** self.n * math.factorial(self.n) * sign
        return self.volume_form((3 * N * N - 2 * self.f * self.f_bar) / (N * N) * c)


def sphere_chart(n: int) -> Chart:
    return Chart.complex(f"C{n}", n, radical=True)


@lru_cache(maxsize=None)
def sphere_context(n: int) -> SphereContext:
    if n < 1:
        raise ParameterError("sphere dimension parameter must be >= 1")
    chart = sphere_chart(n)
    z = tuple(ScalarExpr.variable(chart, f"z{j}") for j in range(1, n + 1))
    zb = tuple(ScalarExpr.variable(chart, f"zb{j}") for j in range(1, n + 1))
    rho = ScalarExpr.radical(chart)
    N = ScalarExpr.sum([a * b for a, b in zip(z, zb)], chart)
    f = ScalarExpr.sum([a * a for a in z], chart)
    fb = f.conjugate()
    alpha_std = DiffForm.sum([wedge(_fn(z[j] * I), DiffForm.differential(chart, f"zb{j + 1}"))
                              for j in range(n)]
                             + [wedge(_fn(-zb[j] * I), DiffForm.differential(chart, f"z{j + 1}"))
                                for j in range(n)], chart)
    alpha_minus = alpha_std - (_d(fb) * f - _d(f) * fb) * I
    u, ub = f / rho, fb / rho
    alpha_tilde = alpha_std - (_d(ub) * u - _d(u) * ub) * I
    omega = exterior_derivative(alpha_tilde)
    half = Fraction(1, 2)
    X = VectorField(chart, {**{f"z{j + 1}": z[j] * half for j in range(n)},
                            **{f"zb{j + 1}": zb[j] * half for j in range(n)}})
    return SphereContext(n, chart, z, zb, rho, N, f, fb, alpha_std, alpha_minus, alpha_tilde,
                         omega, X)


def rational_sphere_point(n: int, rng: random.Random, spread: int = 5) -> dict[str, CoeffNumber]:
    """Rational point on the unit sphere of C^n via inverse stereographic projection."""
    m = 2 * n - 1
    u = [Fraction(rng.randint(-spread, spread), rng.randint(1, spread)) for _ in range(m)]
    s = sum(x * x for x in u)
    coords = [2 * x / (s + 1) for x in u] + [(s - 1) / (s + 1)]
    return {f"z{j + 1}": CoeffNumber(coords[2 * j], coords[2 * j + 1]) for j in range(n)}


def verify_liouville_pairing(n: int, field_scale=1, cap: int | None = DEFAULT_CAPS["liouville"]
                             ) -> VerificationResult:
    _check_n(n, 2, cap, "liouville")
    rec = Recorder("liouville", {"n": n} | ({"field_scale": str(field_scale)} if field_scale != 1 else {}))
    ctx = sphere_context(n)
    X = ctx.X_L * field_scale if field_scale != 1 else ctx.X_L
    rec.zero("i_X omega - alpha_tilde", interior_product(X, ctx.omega_minus) - ctx.alpha_minus_tilde)
    rec.zero("d alpha_tilde - omega", exterior_derivative(ctx.alpha_minus_tilde) - ctx.omega_minus)
    return rec.result()


def verify_top_power(n: int, sign: int = -1, cap: int | None = DEFAULT_CAPS["top-power"],
                     sample_points: int = 0, seed: int = 0) -> VerificationResult:
    """``omega_minus^n`` against its closed form; optionally spot-check nonvanishing."""
    _check_n(n, 2, cap, "top-power")
    params = {"n": n} | ({"sign": sign} if sign != -1 else {})
    rec = Recorder("top-power", params)
    ctx = sphere_context(n)
    top = wedge_power(ctx.omega_minus, n)
    rec.zero("omega^n - closed form", top - ctx.top_power_closed_form(sign))
    coeff = top.coefficient(ctx.chart.variables)
    real_point = {"z1": CoeffNumber(Fraction(3, 5)), "z2": CoeffNumber(Fraction(4, 5))}
    real_point.update({f"z{j}": CoeffNumber(0) for j in range(3, n + 1)})
    rec.details["coefficient_at_real_point"] = str(coeff.evaluate(real_point))
    if sample_points:
        rng = random.Random(seed)
        bad = []
        for _ in range(sample_points):
            p = rational_sphere_point(n, rng)
            if coeff.evaluate(p).is_zero():
                bad.append(p)
        rec.truth("nonvanishing at sphere samples", not bad, f"zero at {bad[:1]}")
    return rec.result()


def lagrange_terms(ctx: SphereContext) -> list[ScalarExpr]:
    z, zb = ctx.z, ctx.z_bar
    out = []
    for j in range(ctx.n):
        for k in range(j + 1, ctx.n):
            w = z[j] * zb[k] - z[k] * zb[j]
            out.append(w * w.conjugate())
    return out


def verify_lagrange_certificate(n: int, drop_term: bool = False,
                                cap: int | None = DEFAULT_CAPS["lagrange"]) -> VerificationResult:
    """``N^2 - |f|^2`` as a sum of squared moduli ``|z_j zb_k - z_k zb_j|^2``."""
    _check_n(n, 2, cap, "lagrange")
    rec = Recorder("lagrange", {"n": n} | ({"drop_term": True} if drop_term else {}))
    ctx = sphere_context(n)
    N, ffb = ctx.norm_sq, ctx.f * ctx.f_bar
    terms = lagrange_terms(ctx)
    if drop_term:
        terms = terms[:-1]
    certificate = ScalarExpr.sum(terms, ctx.chart)
    rec.zero("N^2 - f fbar - sum |w_jk|^2", N * N - ffb - certificate)
    rec.zero("3N^2 - 2 f fbar - (N^2 + 2 sum |w_jk|^2)",
             3 * N * N - 2 * ffb - (N * N + 2 * certificate))
    rec.details["certificate_terms"] = len(terms)
    return rec.result()


def inclusion_map(k: int, j: int, inserted=0) -> ChartMap:
    """``(z_1..z_k) -> (z_1..z_{j-1}, inserted, z_j..z_k)`` between sphere charts."""
    if not 1 <= j <= k + 1:
        raise ParameterError(f"insertion slot j={j} outside 1..{k + 1}")
    src, tgt = sphere_context(k), sphere_chart(k + 1)
    images = {}
    for t in range(1, k + 2):
        if t < j:
            images[f"z{t}"] = src.z[t - 1]
        elif t == j:
            images[f"z{t}"] = ScalarExpr.constant(src.chart, inserted)
        else:
            images[f"z{t}"] = src.z[t - 2]
    return ChartMap(src.chart, tgt, images, radical_image=src.rho)


def verify_embedding_chain(k: int, j: int, inserted=0,
                           cap: int | None = DEFAULT_CAPS["embedding-chain"]) -> VerificationResult:
    _check_n(k, 2, cap, "embedding-chain")
    if not 1 <= j <= k + 1:
        raise ParameterError(f"insertion slot j={j} outside 1..{k + 1}")
    params = {"k": k, "j": j} | ({"inserted": str(inserted)} if inserted != 0 else {})
    rec = Recorder("embedding-chain", params)
    lo, hi = sphere_context(k), sphere_context(k + 1)
    try:
        m = inclusion_map(k, j, inserted)
    except ChartError as exc:
        rec.truth("radical image valid", False, str(exc))
        m = None
    else:
        rec.truth("radical image valid", True)
        rec.zero("pullback alpha_tilde", pullback(m, hi.alpha_minus_tilde) - lo.alpha_minus_tilde)
    # the rho-free alpha_minus needs no radical image, so the mutated map is still testable
    images = [ScalarExpr.constant(lo.chart, inserted) if t == j else lo.z[t - 1 if t < j else t - 2]
              for t in range(1, k + 2)]
    flat_target = Chart.complex(f"C{k + 1}flat", k + 1)
    flat = ChartMap(lo.chart, flat_target,
                    {f"z{t}": images[t - 1] for t in range(1, k + 2)})
    alpha_flat = _retarget(hi.alpha_minus, flat_target)
    rec.zero("pullback alpha_minus", pullback(flat, alpha_flat) - lo.alpha_minus)
    return rec.result()


def _retarget(a: DiffForm, chart: Chart) -> DiffForm:
    """Move a rho-free form to a chart with the same variables."""
    terms = {}
    for idx, c in a.terms.items():
        if c.has_radical_part():
            raise ChartError("form depends on rho")
        terms[idx] = ScalarExpr(chart, c.p0, None, dict(c.den), reduce=False)
    return DiffForm(chart, terms)


# stereographic disk in S^3


def disk_chart() -> Chart:
    return Chart.real("disk", ["x", "y"])


def stereographic_components(scale=SQRT2) -> list[ScalarExpr]:
    R = disk_chart()
    x, y = ScalarExpr.variable(R, "x"), ScalarExpr.variable(R, "y")
    den = (1 + x * x + y * y) * scale
    return [((x + 1) ** 2 + y * y - 2) / den, 2 * y / den, 2 * y / den,
            ((x - 1) ** 2 + y * y - 2) / den]


def build_stereographic() -> ChartMap:
    """Map from the (x, y) plane onto the sphere in C^2 (radical image 1)."""
    c = stereographic_components()
    return ChartMap(disk_chart(), sphere_chart(2),
                    {"z1": c[0] + c[1] * I, "z2": c[2] + c[3] * I}, radical_image=1)


def verify_stereographic_image(scale=SQRT2) -> VerificationResult:
    """``scale`` is the constant in the denominator; anything but sqrt(2) must fail."""
    rec = Recorder("stereographic", {} if scale == SQRT2 else {"scale": str(scale)})
    c = stereographic_components(scale)
    rec.zero("|Phi|^2 - 1", ScalarExpr.sum([t * t for t in c]) - 1)
    rec.zero("component 2 - component 3", c[1] - c[2])
    try:
        ChartMap(disk_chart(), sphere_chart(2),
                 {"z1": c[0] + c[1] * I, "z2": c[2] + c[3] * I}, radical_image=1)
    except ChartError as exc:
        rec.truth("radical image 1 accepted", False, str(exc))
    else:
        rec.truth("radical image 1 accepted", True)
    origin = {"x": 0, "y": 0}
    rec.details["Phi(0,0)"] = [str(t.evaluate(origin)) for t in c]
    return rec.result()


def verify_disk_pullback(prefactor=4) -> VerificationResult:
    """Pull alpha_tilde back along the stereographic map and compare with
    ``prefactor * (3r^4 - 10r^2 + 3) / (1 + r^2)^4 * (y dx - x dy)``."""
    rec = Recorder("disk-pullback", {"prefactor": str(prefactor)})
    R = disk_chart()
    x, y = ScalarExpr.variable(R, "x"), ScalarExpr.variable(R, "y")
    r2 = x * x + y * y
    quartic = 3 * r2 * r2 - 10 * r2 + 3
    rot = DiffForm.differential(R, "x") * y - DiffForm.differential(R, "y") * x
    pb = pullback(build_stereographic(), sphere_context(2).alpha_minus_tilde)
    claimed = rot * (quartic * (1 + r2) ** -4 * prefactor)
    rec.zero("pullback - claimed", pb - claimed)

    # shape of the computed pullback: g(x, y) * (y dx - x dy)
    g = pb.coefficient(["x"]) / y
    rec.zero("dy coefficient + x*g", pb.coefficient(["y"]) + x * g)
    ratio = g * (1 + r2) ** 4 * quartic ** -1
    if ratio.is_constant():
        rec.details["derived_prefactor"] = str(ratio.constant_value())
    rec.zero("3r^4 - 10r^2 + 3 - (3r^2 - 1)(r^2 - 3)", quartic - (3 * r2 - 1) * (r2 - 3))

    # the claimed coefficient as a function of s = r^2
    S = Chart.real("radius", ["s"])
    s = ScalarExpr.variable(S, "s")
    coeff = prefactor * (3 * s * s - 10 * s + 3) / (1 + s) ** 4
    zeros = {str(v): str(coeff.evaluate({"s": v})) for v in (Fraction(1, 3), Fraction(3))}
    rec.details["coefficient_at_r2"] = zeros | {"1": str(coeff.evaluate({"s": 1}))}
    rec.truth("vanishing at r^2 = 1/3 and 3",
              all(coeff.evaluate({"s": v}).is_zero() for v in (Fraction(1, 3), Fraction(3))),
              str(zeros))
    origin = pb.evaluate({"x": 0, "y": 0})
    rec.truth("vanishing at the origin", all(v.is_zero() for v in origin.values()), str(origin))
    return rec.result()


# Weinstein surgery model


@dataclass(frozen=True, eq=False)
class WeinsteinContext:
    a: int
    b: int
    chart: Chart
    omega: DiffForm
    X: VectorField
    f_W: ScalarExpr
    sos_weights: tuple[tuple[Fraction, str], ...]

    def var(self, name: str) -> ScalarExpr:
        return ScalarExpr.variable(self.chart, name)


def weinstein_context(a: int, b: int = 2, z_coefficient=2) -> WeinsteinContext:
    if a < 1 or b < 1:
        raise ParameterError("weinstein: a and b must be >= 1")
    xs = [f"x{i}" for i in range(1, a + 1)]
    ys = [f"y{i}" for i in range(1, a + 1)]
    zs = [f"z{i}" for i in range(1, b + 1)]
    ws = [f"w{i}" for i in range(1, b + 1)]
    chart = Chart.real(f"R{2 * a + 2 * b}", xs + ys + zs + ws)
    v = {name: ScalarExpr.variable(chart, name) for name in chart.variables}
    dv = {name: DiffForm.differential(chart, name) for name in chart.variables}
    omega = DiffForm.sum([wedge(dv[p], dv[q]) for p, q in zip(xs + zs, ys + ws)], chart)
    half, quarter = Fraction(1, 2), Fraction(1, 4)
    comps = {p: v[p] * half for p in xs + ys}
    comps.update({p: v[p] * z_coefficient for p in zs})
    comps.update({p: -v[p] for p in ws})
    X = VectorField(chart, comps)
    f = ScalarExpr.sum([v[p] * v[p] * quarter for p in xs + ys]
                       + [v[p] * v[p] for p in zs] + [v[p] * v[p] * -half for p in ws], chart)
    weights = tuple([(quarter, p) for p in xs + ys] + [(Fraction(4), p) for p in zs]
                    + [(Fraction(1), p) for p in ws])
    return WeinsteinContext(a, b, chart, omega, X, f, weights)


def verify_weinstein(a: int, b: int = 2, z_coefficient=2) -> VerificationResult:
    params = {"a": a, "b": b} | ({"z_coefficient": str(z_coefficient)} if z_coefficient != 2 else {})
    rec = Recorder("weinstein", params)
    ctx = weinstein_context(a, b, z_coefficient)
    rec.zero("L_X omega - omega", lie_derivative(ctx.X, ctx.omega) - ctx.omega)
    lam = interior_product(ctx.X, ctx.omega)
    rec.zero("d(i_X omega) - omega", exterior_derivative(lam) - ctx.omega)
    sos = ScalarExpr.sum([ctx.var(p) * ctx.var(p) * w for w, p in ctx.sos_weights], ctx.chart)
    rec.zero("df(X) - weighted squares", ctx.X(ctx.f_W) - sos)
    rec.truth("all weights positive", all(w > 0 for w, _ in ctx.sos_weights))
    rec.details["df(X)"] = str(ctx.X(ctx.f_W))
    return rec.result()


def model_curve_map(ctx: WeinsteinContext, plane: Sequence[str] = ("w1", "w2")) -> ChartMap:
    """Rational parametrization of ``{p^2 + q^2 = 2}`` in the given coordinate plane."""
    T = Chart.real("circle", ["t"])
    t = ScalarExpr.variable(T, "t")
    p = (1 - t * t) / (1 + t * t) * SQRT2
    q = 2 * t / (1 + t * t) * SQRT2
    images = {name: 0 for name in ctx.chart.variables}
    images[plane[0]] = p
    images[plane[1]] = q
    return ChartMap(T, ctx.chart, images)


def verify_model_curve_isotropic(plane: Sequence[str] = ("w1", "w2")) -> VerificationResult:
    params = {} if tuple(plane) == ("w1", "w2") else {"plane": ",".join(plane)}
    rec = Recorder("model-curve", params)
    ctx = weinstein_context(1, 2)
    m = model_curve_map(ctx, plane)
    lam = interior_product(ctx.X, ctx.omega)
    rec.zero("pullback of lambda", pullback(m, lam))
    rec.zero("f_W + 1 along the curve", m.pull_scalar(ctx.f_W) + 1)
    w1, w2 = m.pull_scalar(ctx.var(plane[0])), m.pull_scalar(ctx.var(plane[1]))
    rec.zero("p^2 + q^2 - 2 along the curve", w1 * w1 + w2 * w2 - 2)
    return rec.result()
