"""Named scenarios with their parameter schemas and negative controls."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable

from . import contactlab as cl
from . import grouppres as gp
from .abelian.groups import Z
from .abelian.replays import replay_handlebody, replay_surgered_sphere
from .results import Check, ParameterError, VerificationResult


@dataclass(frozen=True)
class ParamSpec:
    name: str
    default: int
    lo: int
    cap: int | None  # None: no upper bound
    help: str = ""

    def check(self, value: int, unsafe: bool = False) -> int:
        if value < self.lo:
            raise ParameterError(f"{self.name}={value} is below the minimum {self.lo}")
        if self.cap is not None and value > self.cap and not unsafe:
            raise ParameterError(f"{self.name}={value} exceeds the cap {self.cap} "
                                 f"(use --unsafe-n to override)")
        return value


@dataclass(frozen=True)
class ScenarioDescriptor:
    name: str
    module: str
    description: str
    run: Callable[..., VerificationResult]
    negative: Callable[..., VerificationResult]
    params: tuple[ParamSpec, ...] = field(default_factory=tuple)
    negative_note: str = ""

    @property
    def n_param(self) -> ParamSpec | None:
        return self.params[0] if self.params else None

    def resolve(self, given: dict[str, int], unsafe: bool = False) -> dict[str, int]:
        known = {p.name: p for p in self.params}
        for key in given:
            if key not in known:
                raise ParameterError(f"scenario {self.name!r} has no parameter {key!r}")
        return {p.name: p.check(given.get(p.name, p.default), unsafe) for p in self.params}

    def execute(self, given: dict[str, int] | None = None, negative: bool = False,
                unsafe: bool = False) -> VerificationResult:
        kw = self.resolve(given or {}, unsafe)
        return (self.negative if negative else self.run)(**kw)


def merge_results(name: str, params: dict[str, Any], parts: list[VerificationResult]) -> VerificationResult:
    """Fold several runs into one result; sub-check labels get the run's params."""
    checks, axioms, witnesses = [], [], []
    for r in parts:
        tag = ",".join(f"{k}={v}" for k, v in r.params.items())
        checks += [Check(f"[{tag}] {c.label}", c.passed, c.witness) for c in r.checks]
        axioms += [a for a in r.axioms_used if a not in axioms]
        if not r.passed:
            witnesses.append(f"[{tag}] {r.witness}")
    ok = bool(parts) and all(r.passed for r in parts)
    return VerificationResult(name, params, "pass" if ok else "fail", "; ".join(witnesses),
                              sum(r.elapsed for r in parts), axioms, checks, {})


def _embedding(n: int, inserted=0) -> VerificationResult:
    parts = [cl.verify_embedding_chain(n, j, inserted, cap=None) for j in range(1, n + 2)]
    params = {"k": n} | ({"inserted": str(inserted)} if inserted else {})
    return merge_results("embedding-chain", params, parts)


def _drop_last_relator(P: gp.Presentation) -> gp.Presentation:
    return gp.Presentation(P.generators, P.relators[:-1])


def _pi1(name: str, note: str, description: str) -> ScenarioDescriptor:
    build = gp.PI1_EXPECTED[name][0]
    return ScenarioDescriptor(
        name, "grouppres", description,
        run=lambda: gp.verify_pi1(name),
        negative=lambda: gp.verify_pi1(name, _drop_last_relator(build())),
        negative_note=note)


def _n(default: int, lo: int, cap: int | None, help: str = "") -> tuple[ParamSpec, ...]:
    return (ParamSpec("n", default, lo, cap, help),)


CAPS = dict(cl.DEFAULT_CAPS, handlebody=8)

SCENARIOS: tuple[ScenarioDescriptor, ...] = (
    ScenarioDescriptor(
        "liouville", "contactlab",
        "i_{X_L} omega_- equals alpha_tilde_- on C^n minus 0",
        run=lambda n: cl.verify_liouville_pairing(n, cap=None),
        negative=lambda n: cl.verify_liouville_pairing(n, field_scale=2, cap=None),
        params=_n(2, 2, CAPS["liouville"], "complex dimension"),
        negative_note="X_L doubled"),
    ScenarioDescriptor(
        "top-power", "contactlab",
        "omega_-^n closed form with factor 3|z|^4 - 2|f|^2",
        run=lambda n: cl.verify_top_power(n, cap=None),
        negative=lambda n: cl.verify_top_power(n, sign=1, cap=None),
        params=_n(2, 2, CAPS["top-power"], "complex dimension"),
        negative_note="sign of the closed form flipped"),
    ScenarioDescriptor(
        "lagrange", "contactlab",
        "Lagrange identity certificate for |<z_bar, z>|^2 <= |z|^4",
        run=lambda n: cl.verify_lagrange_certificate(n, cap=None),
        negative=lambda n: cl.verify_lagrange_certificate(n, drop_term=True, cap=None),
        params=_n(2, 2, CAPS["lagrange"], "complex dimension"),
        negative_note="one square dropped"),
    ScenarioDescriptor(
        "embedding-chain", "contactlab",
        "coordinate inclusions pull alpha_tilde_- back to itself, all slots",
        run=lambda n: _embedding(n),
        negative=lambda n: _embedding(n, inserted=1),
        params=_n(2, 2, CAPS["embedding-chain"], "source dimension k"),
        negative_note="inserted coordinate 1 instead of 0"),
    ScenarioDescriptor(
        "stereographic", "contactlab",
        "stereographic disk lies on the unit sphere and in the hyperplane",
        run=lambda: cl.verify_stereographic_image(),
        negative=lambda: cl.verify_stereographic_image(scale=1),
        negative_note="denominator without sqrt(2)"),
    ScenarioDescriptor(
        "disk-pullback", "contactlab",
        "pullback of alpha_- to the disk, 4(3r^4-10r^2+3)/(1+r^2)^4",
        run=lambda: cl.verify_disk_pullback(),
        negative=lambda: cl.verify_disk_pullback(prefactor=-4),
        negative_note="prefactor -4"),
    ScenarioDescriptor(
        "weinstein", "contactlab",
        "Weinstein model: Liouville field, primitive, transversality certificate",
        run=lambda n: cl.verify_weinstein(n),
        negative=lambda n: cl.verify_weinstein(n, z_coefficient=1),
        params=_n(1, 1, CAPS["weinstein"], "number of (x, y) pairs a"),
        negative_note="z-component of X is z instead of 2z"),
    ScenarioDescriptor(
        "model-curve", "contactlab",
        "model attaching circle is isotropic and lies in f^-1(-1)",
        run=lambda: cl.verify_model_curve_isotropic(),
        negative=lambda: cl.verify_model_curve_isotropic(plane=("z1", "w1")),
        negative_note="circle placed in the (z1, w1) plane"),
    ScenarioDescriptor(
        "surgered-sphere", "abelian",
        "Mayer-Vietoris replay: the surgered 5-manifold is a homology sphere",
        run=lambda: replay_surgered_sphere(),
        negative=lambda: replay_surgered_sphere(h2_m0=Z),
        negative_note="H2(M0) mutated to Z"),
    ScenarioDescriptor(
        "handlebody", "abelian",
        "Mayer-Vietoris replay: the handlebody has the homology of a point",
        run=lambda n: replay_handlebody(n),
        negative=lambda n: replay_handlebody(n, drop_fact="delta-2n"),
        params=_n(2, 2, CAPS["handlebody"], "half the dimension"),
        negative_note="connecting map fact in degree 2n dropped"),
    _pi1("pi1-m0", "relator dropped",
         "pi1 of the complement of the two circles in S^5 is Z * Z"),
    _pi1("pi1-m0-surgered", "relator b dropped",
         "surgery along a and b kills pi1"),
    _pi1("pi1-complement", "relator b = c dropped",
         "van Kampen presentation simplifies to <c,d,e | [c,d], [c,e]>"),
    _pi1("pi1-handlebody", "relator b dropped",
         "the final two 2-handles kill pi1 of the handlebody"),
    ScenarioDescriptor(
        "levine", "grouppres",
        "one generator and H1 = Z give pi1 = Z for the complement",
        run=lambda: gp.replay_levine_criterion(),
        negative=lambda: gp.replay_levine_criterion(gp.Presentation.from_strings("c", ["c^3"])),
        negative_note="presentation <c | c^3>"),
)

BY_NAME = {s.name: s for s in SCENARIOS}


def get(name: str) -> ScenarioDescriptor:
    try:
        return BY_NAME[name]
    except KeyError:
        raise KeyError(f"unknown scenario {name!r}; run 'list' for the registered names") from None


def report_grid(desc: ScenarioDescriptor, n_max: int) -> list[dict[str, int]]:
    """Parameter sets used by ``report --all``: every allowed n up to ``n_max``."""
    p = desc.n_param
    if p is None:
        return [{}]
    hi = n_max if p.cap is None else min(p.cap, n_max)
    return [{p.name: n} for n in range(p.lo, hi + 1)] or [{p.name: p.lo}]
