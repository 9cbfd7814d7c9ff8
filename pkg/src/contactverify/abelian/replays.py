"""Replays of the homology deductions for the surgered 5-manifold and the handlebody."""

from __future__ import annotations

from typing import Callable, Mapping

from ..results import ParameterError, Recorder, VerificationResult
from .exactseq import ContradictionError, ExactSeqProblem, Solution, chain, solve_exact
from .groups import ZERO, Z, FGAbelian

GroupSpec = Mapping[int, "FGAbelian | str | tuple"]


class MayerVietoris:
    """Reduced Mayer-Vietoris sequence of ``X = A u B`` from degree ``top`` down to 0.

    Group specs map a degree to a known group, an unknown name, or a tuple
    of those (a direct sum); missing degrees are 0.  ``union`` may also be a
    callable producing the unknown name for each degree.  Arrows are named
    ``("i", k)`` for ``H_k(A n B) -> H_k(A) + H_k(B)``, ``("j", k)`` for
    ``H_k(A) + H_k(B) -> H_k(X)`` and ``("delta", k)`` for ``H_k(X) -> H_(k-1)(A n B)``.
    """

    def __init__(self, names: tuple[str, str, str, str], top: int, inter: GroupSpec,
                 left: GroupSpec, right: GroupSpec, union: GroupSpec | Callable[[int], object],
                 facts: Mapping[tuple[str, int], set[str]] | None = None):
        n_ab, n_a, n_b, n_x = names
        self.top = top
        slots, labels, self.arrow_index = [(ZERO,)], ["0"], {}

        def spec(d, k):
            v = d(k) if callable(d) else d.get(k, ZERO)
            return v if isinstance(v, tuple) else (v,)

        for k in range(top, -1, -1):
            for kind, terms, label in (
                    ("i", spec(inter, k), f"H{k}({n_ab})"),
                    ("j", spec(left, k) + spec(right, k), f"H{k}({n_a})+H{k}({n_b})"),
                    ("delta", spec(union, k), f"H{k}({n_x})")):
                slots.append(terms)
                labels.append(label)
                self.arrow_index[(kind, k)] = len(slots) - 1
        slots.append((ZERO,))
        labels.append("0")
        del self.arrow_index[("delta", 0)]
        fact_map = {}
        for key, fs in (facts or {}).items():
            if key not in self.arrow_index:
                raise ValueError(f"no arrow {key} in this sequence")
            fact_map[self.arrow_index[key]] = set(fs)
        self.problem = ExactSeqProblem(slots, fact_map, labels)


def _solve(rec: Recorder, P: ExactSeqProblem, known: Mapping[str, FGAbelian], step: str,
           rule_order=None) -> Solution | None:
    for f in P.declared_facts():
        rec.axiom(f"map fact ({step}): {f}")
    try:
        sol = solve_exact(P, known, rule_order=rule_order)
    except ContradictionError as exc:
        rec.truth(f"{step}: consistent", False, str(exc))
        return None
    rec.details.setdefault("trace", {})[step] = sol.trace
    rec.truth(f"{step}: solved", not sol.unresolved, f"unresolved {sol.unresolved}")
    return sol


def _expect(rec: Recorder, label: str, got: FGAbelian | None, want: FGAbelian):
    rec.truth(label, got == want, f"got {got}, expected {want}")


def poincare_uct(h1: FGAbelian, h2: FGAbelian) -> tuple[FGAbelian, FGAbelian]:
    """``(H_3, H_4)`` of a closed oriented 5-manifold from ``H_1, H_2``.

    ``H_3 = H^2 = Hom(H_2) + Ext(H_1)`` and ``H_4 = H^1 = Hom(H_1)``.
    """
    return FGAbelian(h2.rank, h1.torsion), FGAbelian(h1.rank)


def surgered_sphere_problems(h2_m0: FGAbelian = ZERO) -> tuple[ExactSeqProblem, ExactSeqProblem]:
    Z2 = FGAbelian(2)
    # H_*(B) for two copies of S^1 x D^4, H_*(A n B) for two copies of S^1 x S^3,
    # H_*(B~) for two copies of D^2 x S^3
    first = chain([("H2(A)", ZERO), h2_m0, Z2, ("H1(A)", Z2), Z2],
                  name="pair (A, B) for M0")
    first.labels = ["0", "H2(A)+H2(B)", "H2(M0)", "H1(AnB)", "H1(A)+H1(B)", "H1(M0)", "0"]
    second = chain([("H2(A)", ZERO), "H2(M0~)", Z2, ("H1(A)", ZERO), "H1(M0~)"],
                   name="pair (A, B~) for M0~")
    second.labels = ["0", "H2(A)+H2(B~)", "H2(M0~)", "H1(AnB~)", "H1(A)+H1(B~)", "H1(M0~)", "0"]
    return first, second


def replay_surgered_sphere(h2_m0: FGAbelian = ZERO, h1_surgered: FGAbelian | None = None,
                           rule_order=None) -> VerificationResult:
    """Homology of the surgered 5-manifold from the two truncated sequences."""
    params = {} if h2_m0 == ZERO else {"h2_m0": str(h2_m0)}
    rec = Recorder("surgered-sphere", params)
    rec.axiom("input: H_*(M0) = (Z, Z^2, %s, 0, Z^2, Z)" % h2_m0)
    rec.axiom("input: H_*(A n B) for two copies of S^1 x S^3; H_*(B), H_*(B~) for "
              "S^1 x D^4 and D^2 x S^3 pairs")
    rec.axiom("truncation: both Mayer-Vietoris sequences start at H2(A n B) = 0 and end at H1")
    if h1_surgered is None:
        from ..grouppres import surgered_m0_h1
        h1_surgered = surgered_m0_h1()
        rec.axiom("H1(M0~) = abelianization of the simplified surgered pi1 presentation "
                  "(Hurewicz)")
    first, second = surgered_sphere_problems(h2_m0)
    s1 = _solve(rec, first, {}, "pair (A, B)", rule_order)
    if s1 is None:
        return rec.result()
    known = {k: v for k, v in s1.assignment.items()}
    known["H1(M0~)"] = h1_surgered
    s2 = _solve(rec, second, known, "pair (A, B~)", rule_order)
    h1a, h2a = s1.assignment.get("H1(A)"), s1.assignment.get("H2(A)")
    rec.details["H1(A)"], rec.details["H2(A)"] = str(h1a), str(h2a)
    _expect(rec, "H1(A) = Z^2", h1a, FGAbelian(2))
    if s2 is None:
        return rec.result()
    h2t = s2.assignment.get("H2(M0~)")
    _expect(rec, "H2(M0~) = 0", h2t, ZERO)
    if h2t is not None:
        rec.axiom("Poincare duality + universal coefficients: H3 = Hom(H2) + Ext(H1), H4 = Hom(H1)")
        rec.axiom("M0~ closed, connected and oriented: H0 = H5 = Z")
        h3, h4 = poincare_uct(h1_surgered, h2t)
        final = [Z, h1_surgered, h2t, h3, h4, Z]
        rec.details["H_*(M0~)"] = [str(g) for g in final]
        rec.truth("H_*(M0~) = (Z, 0, 0, 0, 0, Z)", final == [Z, ZERO, ZERO, ZERO, ZERO, Z],
                  str([str(g) for g in final]))
    return rec.result()


HANDLEBODY_FACTS = ("delta-2n", "i-2n+1", "i-2n-1", "i-2")


def handlebody_problems(n: int, drop_fact: str | None = None):
    """The three sequences: H = A u B, H = A' u B', H~ = A' u B~."""
    top = 2 * n + 2

    def sphere(*degs):
        out = {}
        for d in degs:
            out[d] = out.get(d, ZERO).direct_sum(Z)
        return out

    facts = {k: v for k, v in {
        "delta-2n": {("delta", 2 * n): {"iso"}},
        "i-2n+1": {("i", 2 * n + 1): {"iso"}},
        "i-2n-1": {("i", 2 * n - 1): {"iso"}},
        "i-2": {("i", 2): {"iso"}},
    }.items() if k != drop_fact}

    step1 = MayerVietoris(("AnB", "A", "B", "H"), top,
                          inter={0: FGAbelian(2), 1: FGAbelian(2)} | sphere(2 * n - 1),
                          left={1: FGAbelian(2), 2: Z}, right={0: FGAbelian(2)},
                          union=lambda k: f"H{k}(H)")
    step2 = MayerVietoris(("AnB'", "A'", "B'", "H"), top,
                          inter=sphere(2, 2 * n - 1, 2 * n + 1), left=lambda k: f"H{k}(A')",
                          right={2: Z}, union=lambda k: f"H{k}(H)",
                          facts=facts.get("delta-2n", {}))
    f3 = {}
    for key in ("i-2n+1", "i-2n-1", "i-2"):
        f3.update(facts.get(key, {}))
    step3 = MayerVietoris(("AnB~", "A'", "B~", "H~"), top,
                          inter=sphere(2, 2 * n - 1, 2 * n + 1), left=lambda k: f"H{k}(A')",
                          right={2 * n - 1: Z}, union=lambda k: f"H{k}(H~)", facts=f3)
    return step1, step2, step3


def replay_handlebody(n: int, drop_fact: str | None = None, rule_order=None) -> VerificationResult:
    if n < 2:
        raise ParameterError("handlebody: n must be >= 2")
    if drop_fact is not None and drop_fact not in HANDLEBODY_FACTS:
        raise ParameterError(f"handlebody: unknown fact {drop_fact!r}, choose from {HANDLEBODY_FACTS}")
    rec = Recorder("handlebody", {"n": n} | ({"drop_fact": drop_fact} if drop_fact else {}))
    from ..grouppres import handlebody_h1
    h1_h = handlebody_h1()
    rec.axiom("H1(H) = abelianization of pi1(H) after the 2-handles kill it (Hurewicz)")
    rec.axiom("connectivity: reduced H0 vanishes for H, A' and H~")
    rec.axiom("dimension: all groups above degree 2n+2 vanish")
    rec.axiom("input: reduced homology of D^2n x T^2, of three disks, of S^(2n-1) + S^1 + S^1, "
              "of S^2 x D^2n, D^3 x S^(2n-1) and S^2 x S^(2n-1)")
    step1, step2, step3 = handlebody_problems(n, drop_fact)
    top = 2 * n + 2

    s1 = _solve(rec, step1.problem, {"H0(H)": ZERO, "H1(H)": h1_h}, "H = A u B", rule_order)
    if s1 is None:
        return rec.result()
    want_h = {k: ZERO for k in range(top + 1)} | {2: Z, 2 * n: Z}
    got_h = {k: s1.assignment.get(f"H{k}(H)") for k in range(top + 1)}
    rec.details["H_*(H)"] = [str(got_h[k]) for k in range(top + 1)]
    _expect(rec, "H2(H) = Z", got_h[2], Z)
    _expect(rec, f"H{2 * n}(H) = Z", got_h[2 * n], Z)
    rec.truth("other reduced H_k(H) = 0",
              all(got_h[k] == want_h[k] for k in range(top + 1) if k not in (2, 2 * n)),
              str(rec.details["H_*(H)"]))
    if any(v is None for v in got_h.values()):
        return rec.result()

    known_h = {f"H{k}(H)": g for k, g in got_h.items()}
    s2 = _solve(rec, step2.problem, known_h | {"H0(A')": ZERO}, "H = A' u B'", rule_order)
    if s2 is None:
        return rec.result()
    got_a = {k: s2.assignment.get(f"H{k}(A')") for k in range(top + 1)}
    rec.details["H_*(A')"] = [str(got_a[k]) for k in range(top + 1)]
    for k, want in ((2, Z), (2 * n + 1, Z), (2 * n, ZERO), (2 * n - 1, ZERO)):
        _expect(rec, f"H{k}(A') = {want}", got_a[k], want)
    if any(v is None for v in got_a.values()):
        return rec.result()

    known_a = {f"H{k}(A')": g for k, g in got_a.items()}
    s3 = _solve(rec, step3.problem, known_a | {"H0(H~)": ZERO}, "H~ = A' u B~", rule_order)
    if s3 is None:
        return rec.result()
    got_t = [s3.assignment.get(f"H{k}(H~)") for k in range(top + 1)]
    rec.details["H_*(H~)"] = [str(g) for g in got_t]
    rec.truth("reduced H_*(H~) = 0", all(g == ZERO for g in got_t), str(rec.details["H_*(H~)"]))
    return rec.result()
