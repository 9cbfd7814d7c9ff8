"""Finitely presented groups: free reduction, Tietze moves, abelianization."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .abelian.groups import ZERO, Z, FGAbelian
from .abelian.matrix import IntMatrix
from .abelian.snf import invariant_factors
from .results import Recorder, VerificationResult

Letter = tuple[str, int]
Word = tuple[Letter, ...]


class PresentationError(ValueError):
    pass


def free_reduce(w: Iterable[Letter]) -> Word:
    out: list[Letter] = []
    for g, e in w:
        if out and out[-1][0] == g and out[-1][1] == -e:
            out.pop()
        else:
            out.append((g, e))
    return tuple(out)


def cyclic_reduce(w: Iterable[Letter]) -> Word:
    w = free_reduce(w)
    i, j = 0, len(w)
    while j - i >= 2 and w[i][0] == w[j - 1][0] and w[i][1] == -w[j - 1][1]:
        i += 1
        j -= 1
    return w[i:j]


def invert(w: Sequence[Letter]) -> Word:
    return tuple((g, -e) for g, e in reversed(w))


def commutator(x: str, y: str) -> Word:
    return ((x, 1), (y, 1), (x, -1), (y, -1))


def word_from_string(text: str) -> Word:
    """Parse ``a b a^-1 b^-1`` (``x^k`` for any integer k is expanded)."""
    out = []
    for tok in text.split():
        if "^" in tok:
            name, exp = tok.split("^", 1)
            try:
                k = int(exp)
            except ValueError:
                raise PresentationError(f"bad exponent in token {tok!r}") from None
        else:
            name, k = tok, 1
        if not name:
            raise PresentationError(f"empty generator name in token {tok!r}")
        out += [(name, 1 if k > 0 else -1)] * abs(k)
    return free_reduce(out)


def word_to_string(w: Sequence[Letter]) -> str:
    return " ".join(g if e == 1 else f"{g}^-1" for g, e in w)


def _cyclic_variants(w: Word) -> set[Word]:
    out = set()
    for v in (w, invert(w)):
        for k in range(max(len(v), 1)):
            out.add(v[k:] + v[:k])
    return out


@dataclass(frozen=True)
class Presentation:
    generators: tuple[str, ...]
    relators: tuple[Word, ...] = field(default_factory=tuple)

    def __post_init__(self):
        gens = tuple(self.generators)
        if len(set(gens)) != len(gens):
            raise PresentationError("duplicate generator names")
        rels = tuple(free_reduce(r) for r in self.relators)
        known = set(gens)
        for r in rels:
            for g, e in r:
                if g not in known:
                    raise PresentationError(f"relator uses undeclared generator {g!r}")
                if e not in (1, -1):
                    raise PresentationError("letters carry exponent +1 or -1")
        object.__setattr__(self, "generators", gens)
        object.__setattr__(self, "relators", rels)

    @classmethod
    def from_strings(cls, generators: str | Sequence[str], relators: Sequence[str] = ()) -> "Presentation":
        gens = generators.split() if isinstance(generators, str) else list(generators)
        return cls(tuple(gens), tuple(word_from_string(r) for r in relators))

    def is_relator_free(self) -> bool:
        return not self.relators

    def is_trivial_presentation(self) -> bool:
        return not self.generators and not self.relators

    def __str__(self):
        rels = ", ".join(word_to_string(r) or "1" for r in self.relators)
        return f"< {' '.join(self.generators)} | {rels} >"


def _eliminating_occurrence(r: Word, g: str) -> tuple[int, Word] | None:
    """``(e, u)`` with ``r`` a cyclic permutation of ``g^e u`` and no ``g`` in ``u``."""
    r = cyclic_reduce(r)
    pos = [k for k, (x, _) in enumerate(r) if x == g]
    if len(pos) != 1:
        return None
    k = pos[0]
    rot = r[k:] + r[:k]
    return rot[0][1], rot[1:]


def eliminate_generator(P: Presentation, g: str) -> Presentation:
    """Tietze elimination of ``g`` using the shortest relator that expresses it."""
    if g not in P.generators:
        raise PresentationError(f"{g!r} is not a generator")
    best = None
    for idx, r in enumerate(P.relators):
        occ = _eliminating_occurrence(r, g)
        if occ is not None and (best is None or len(cyclic_reduce(r)) < best[0]):
            best = (len(cyclic_reduce(r)), idx, occ)
    if best is None:
        raise PresentationError(f"no relator eliminates {g!r}")
    _, idx, (e, u) = best
    # g^e u = 1  =>  g = u^-1 (e = 1) or g = u (e = -1)
    w = invert(u) if e == 1 else u
    w_inv = invert(w)
    rels = []
    for k, r in enumerate(P.relators):
        if k == idx:
            continue
        new = []
        for x, s in r:
            if x == g:
                new.extend(w if s == 1 else w_inv)
            else:
                new.append((x, s))
        rels.append(free_reduce(new))
    return Presentation(tuple(x for x in P.generators if x != g), tuple(rels))


def _commuting_pair(r: Word) -> frozenset[str] | None:
    r = cyclic_reduce(r)
    if len(r) != 4:
        return None
    for v in _cyclic_variants(r):
        (a, e1), (b, e2), (c, e3), (d, e4) = v
        if a == c and b == d and a != b and (e1, e2, e3, e4) == (1, 1, -1, -1):
            return frozenset((a, b))
    return None


def trivial_in_raag(w: Word, commuting: set[frozenset[str]]) -> bool:
    """Word problem in the right-angled Artin group with the given commuting pairs."""
    w = list(free_reduce(w))
    changed = True
    while changed and w:
        changed = False
        for i, (x, e) in enumerate(w):
            for j in range(i + 1, len(w)):
                y, s = w[j]
                if y == x:
                    if s == -e:
                        del w[j]
                        del w[i]
                        changed = True
                    break
                if frozenset((x, y)) not in commuting:
                    break
            if changed:
                break
    return not w


@dataclass
class SimplifyReport:
    presentation: Presentation
    steps: list[str]

    @property
    def relator_free(self) -> bool:
        return self.presentation.is_relator_free()

    @property
    def free_rank(self) -> int | None:
        return len(self.presentation.generators) if self.relator_free else None


def _tidy(rels: Iterable[Word], steps: list[str]) -> tuple[Word, ...]:
    out: list[Word] = []
    seen: set[Word] = set()
    for r in rels:
        r = cyclic_reduce(r)
        if not r:
            steps.append("drop trivial relator")
            continue
        if r in seen:
            steps.append(f"drop duplicate relator {word_to_string(r)}")
            continue
        seen.update(_cyclic_variants(r))
        out.append(r)
    return tuple(out)


def simplify_with_report(P: Presentation) -> SimplifyReport:
    steps: list[str] = []
    P = Presentation(P.generators, _tidy(P.relators, steps))
    while True:
        best = None
        for gi, g in enumerate(P.generators):
            for ri, r in enumerate(P.relators):
                if _eliminating_occurrence(r, g) is not None:
                    key = (len(r), gi, ri)
                    if best is None or key < best[0]:
                        best = (key, g)
        if best is None:
            break
        g = best[1]
        P = eliminate_generator(P, g)
        steps.append(f"eliminate {g}")
        P = Presentation(P.generators, _tidy(P.relators, steps))
    # relators implied by the commutation relators among the others
    rels = list(P.relators)
    for k in sorted(range(len(rels)), key=lambda k: -len(rels[k])):
        others = [r for j, r in enumerate(rels) if j != k and r is not None]
        pairs = [_commuting_pair(r) for r in others]
        if others and all(p is not None for p in pairs) and trivial_in_raag(rels[k], set(pairs)):
            steps.append(f"drop relator {word_to_string(rels[k])} (consequence of commutators)")
            rels[k] = None
    P = Presentation(P.generators, tuple(r for r in rels if r is not None))
    return SimplifyReport(P, steps)


def simplify(P: Presentation) -> Presentation:
    return simplify_with_report(P).presentation


def exponent_matrix(P: Presentation) -> IntMatrix:
    idx = {g: k for k, g in enumerate(P.generators)}
    rows = []
    for r in P.relators:
        row = [0] * len(P.generators)
        for g, e in r:
            row[idx[g]] += e
        rows.append(row)
    return IntMatrix(len(rows), len(P.generators), rows)


def abelianization(P: Presentation) -> FGAbelian:
    factors = invariant_factors(exponent_matrix(P))
    return FGAbelian.from_cyclic(len(P.generators) - len(factors), factors)


# van Kampen presentations used as fixtures

def pi1_m0() -> Presentation:
    return Presentation.from_strings("a b c", ["a b a^-1 b^-1 c^-1"])


def pi1_m0_surgered() -> Presentation:
    """The same group after surgery kills the loops a and b."""
    return Presentation.from_strings("a b c", ["a b a^-1 b^-1 c^-1", "a", "b"])


def pi1_complement() -> Presentation:
    return Presentation.from_strings("a b c d e", [
        "a b a^-1 b^-1",  # ab = ba
        "c d c^-1 d^-1",  # cd = dc
        "c e c^-1 e^-1",  # ce = ec
        "d e d^-1 e^-1 a^-1",  # ded^-1e^-1 = a
        "b c^-1",  # b = c
    ])


def pi1_handlebody() -> Presentation:
    return Presentation.from_strings("a b", ["a b a^-1 b^-1", "a", "b"])


def surgered_m0_h1() -> FGAbelian:
    return abelianization(simplify(pi1_m0_surgered()))


def handlebody_h1() -> FGAbelian:
    return abelianization(simplify(pi1_handlebody()))


PI1_EXPECTED = {
    "pi1-m0": (pi1_m0, Presentation.from_strings("a b"), FGAbelian(2)),
    "pi1-complement": (pi1_complement,
                       Presentation.from_strings("c d e", ["c d c^-1 d^-1", "c e c^-1 e^-1"]),
                       FGAbelian(3)),
    "pi1-handlebody": (pi1_handlebody, Presentation(()), ZERO),
    "pi1-m0-surgered": (pi1_m0_surgered, Presentation(()), ZERO),
}


def verify_pi1(name: str, presentation: Presentation | None = None) -> VerificationResult:
    """Simplify a fixture presentation and compare with the expected one."""
    if name not in PI1_EXPECTED:
        raise KeyError(name)
    build, want, want_ab = PI1_EXPECTED[name]
    P = presentation if presentation is not None else build()
    rec = Recorder(name, {} if presentation is None else {"input": str(P)})
    rec.axiom("presentation from Seifert-van Kampen (fixture)")
    report = simplify_with_report(P)
    got = report.presentation
    rec.details["simplified"] = str(got)
    rec.details["steps"] = report.steps
    rec.truth("simplified presentation", got == want, f"got {got}, expected {want}")
    ab = abelianization(got)
    rec.details["abelianization"] = str(ab)
    rec.truth("abelianization", ab == want_ab, f"got {ab}, expected {want_ab}")
    rec.truth("abelianization preserved by simplification", abelianization(P) == ab,
              f"{abelianization(P)} before, {ab} after")
    return rec.result()


def replay_levine_criterion(presentation: Presentation | None = None,
                            h1: FGAbelian = Z) -> VerificationResult:
    """A group with one generator whose abelianization is Z is Z itself."""
    P = presentation if presentation is not None else Presentation(("c",))
    rec = Recorder("levine", {} if presentation is None else {"input": str(P)})
    rec.axiom(f"declared: H1 of the knot complement is {h1}")
    rec.axiom("declared: after surgery the complement's pi1 is generated by one element")
    S = simplify(P)
    rec.details["simplified"] = str(S)
    rec.truth("at most one generator", len(S.generators) <= 1,
              f"{len(S.generators)} generators remain: {S}")
    ab = abelianization(S)
    rec.details["abelianization"] = str(ab)
    rec.truth("abelianization matches H1", ab == h1, f"got {ab}, expected {h1}")
    return rec.result()
