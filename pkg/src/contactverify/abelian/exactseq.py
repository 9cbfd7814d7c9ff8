"""Rule-based inference on exact sequences of finitely generated abelian groups.

A problem is a row of slots ``S_0 -> S_1 -> ... -> S_m`` (exact at every
inner slot, with ``S_0 = S_m = 0``).  A slot is a direct sum of terms, each a
known :class:`FGAbelian` or the name of an unknown group.  Arrow ``i`` goes
from ``S_i`` to ``S_(i+1)`` and may carry the facts ``zero``, ``injective``,
``surjective`` and ``iso``.

Rules, applied until nothing changes:

* exactness: a zero slot makes its arrows zero; ``in`` zero iff ``out``
  injective; ``out`` zero iff ``in`` surjective; iso iff injective and
  surjective.
* R1: an injective zero arrow has zero source, a surjective zero arrow has
  zero target.
* R2: ``0 -> A -> G -> C -> 0`` with ``C`` known and free gives ``G = A + C``
  from ``A``, or ``A`` from ``G`` by cancellation.
* R3/R4: an iso arrow identifies its two ends.
* Hopf: a surjection between known isomorphic groups is an iso; so is an
  injection between isomorphic finite groups.
* R5: on a stretch between two zero arrows the alternating rank sum
  vanishes.  It is checked when all ranks are known, and it solves the first
  slot of the stretch when that slot injects into a known free group.

Unknowns inside a sum are recovered by cancelling the known summands.
Conflicting conclusions raise :class:`ContradictionError`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping, Sequence, Union

from .groups import ZERO, FGAbelian, GroupError, direct_sum

Term = Union[FGAbelian, str]
FACTS = ("zero", "injective", "surjective", "iso")


class ContradictionError(ValueError):
    pass


@dataclass
class ExactSeqProblem:
    slots: list[tuple[Term, ...]]
    facts: dict[int, set[str]] = field(default_factory=dict)
    labels: list[str] = field(default_factory=list)
    name: str = ""

    def __post_init__(self):
        norm = []
        for s in self.slots:
            if isinstance(s, (FGAbelian, str)):
                s = (s,)
            norm.append(tuple(s))
        self.slots = norm
        if len(self.slots) < 2:
            raise ValueError("an exact sequence needs at least two slots")
        for end in (self.slots[0], self.slots[-1]):
            if not all(isinstance(t, FGAbelian) and t.is_zero() for t in end):
                raise ValueError("first and last slots must be the zero group")
        facts = {}
        for i, fs in self.facts.items():
            if not 0 <= i < len(self.slots) - 1:
                raise ValueError(f"arrow {i} out of range")
            fs = set(fs)
            unknown = fs - set(FACTS)
            if unknown:
                raise ValueError(f"unknown map facts {sorted(unknown)}")
            facts[i] = fs
        self.facts = facts
        if not self.labels:
            self.labels = [" + ".join(str(t) for t in s) for s in self.slots]

    def unknowns(self) -> list[str]:
        seen = []
        for s in self.slots:
            for t in s:
                if isinstance(t, str) and t not in seen:
                    seen.append(t)
        return seen

    def declared_facts(self) -> list[str]:
        out = []
        for i in sorted(self.facts):
            for f in sorted(self.facts[i]):
                out.append(f"{self.labels[i]} -> {self.labels[i + 1]} is {f}")
        return out


@dataclass
class Solution:
    assignment: dict[str, FGAbelian]
    slot_values: list[FGAbelian | None]
    facts: dict[int, set[str]]
    unresolved: list[str]
    trace: list[str]

    @property
    def status(self) -> str:
        return "underdetermined" if self.unresolved else "solved"


class _State:
    def __init__(self, P: ExactSeqProblem, known: Mapping[str, FGAbelian]):
        self.P = P
        self.values: dict[str, FGAbelian] = {k: v for k, v in known.items() if k in P.unknowns()}
        self.slot_value: list[FGAbelian | None] = [None] * len(P.slots)
        self.facts = {i: set(P.facts.get(i, ())) for i in range(len(P.slots) - 1)}
        self.trace: list[str] = []
        self.changed = False
        for i in range(len(P.slots)):
            self._refresh_slot(i)

    # bookkeeping

    def label(self, i: int) -> str:
        return self.P.labels[i]

    def arrow(self, i: int) -> str:
        return f"{self.label(i)} -> {self.label(i + 1)}"

    def _refresh_slot(self, i: int):
        terms = self.P.slots[i]
        vals = [t if isinstance(t, FGAbelian) else self.values.get(t) for t in terms]
        if all(v is not None for v in vals):
            self.set_slot(i, direct_sum(*vals), "sum of known terms", quiet=True)

    def set_value(self, name: str, g: FGAbelian, why: str):
        old = self.values.get(name)
        if old is not None:
            if old != g:
                raise ContradictionError(f"{name}: derived {g} ({why}) but already {old}")
            return
        self.values[name] = g
        self.trace.append(f"{name} = {g}  [{why}]")
        self.changed = True
        for i, s in enumerate(self.P.slots):
            if name in s:
                self._refresh_slot(i)

    def set_slot(self, i: int, g: FGAbelian, why: str, quiet: bool = False):
        old = self.slot_value[i]
        if old is not None:
            if old != g:
                raise ContradictionError(f"slot {self.label(i)}: derived {g} ({why}) but already {old}")
            return
        self.slot_value[i] = g
        if not quiet:
            self.trace.append(f"{self.label(i)} = {g}  [{why}]")
        self.changed = True
        self._check_arrows_at(i)
        # recover unknown summands
        terms = self.P.slots[i]
        unknown = [t for t in terms if isinstance(t, str) and t not in self.values]
        if not unknown:
            return
        if g.is_zero():
            for t in unknown:
                self.set_value(t, ZERO, f"summand of zero slot {self.label(i)}")
            return
        if len(unknown) == 1:
            known = [t if isinstance(t, FGAbelian) else self.values[t]
                     for t in terms if t != unknown[0]]
            try:
                rest = g.cancel(direct_sum(*known))
            except GroupError as exc:
                raise ContradictionError(f"slot {self.label(i)} = {g}: {exc}") from None
            self.set_value(unknown[0], rest, f"cancel known summands in {self.label(i)}")

    def add_fact(self, i: int, fact: str, why: str):
        if fact in self.facts[i]:
            return
        self.facts[i].add(fact)
        self.trace.append(f"{self.arrow(i)} is {fact}  [{why}]")
        self.changed = True
        self._check_arrow(i)

    def _check_arrows_at(self, i: int):
        if i > 0:
            self._check_arrow(i - 1)
        if i < len(self.P.slots) - 1:
            self._check_arrow(i)

    def _check_arrow(self, i: int):
        fs = self.facts[i]
        src, tgt = self.slot_value[i], self.slot_value[i + 1]
        where = self.arrow(i)
        if "injective" in fs and "zero" in fs and src is not None and not src.is_zero():
            raise ContradictionError(f"{where} is injective and zero but the source is {src}")
        if "surjective" in fs and "zero" in fs and tgt is not None and not tgt.is_zero():
            raise ContradictionError(f"{where} is surjective and zero but the target is {tgt}")
        if "injective" in fs and src is not None and tgt is not None:
            if src.rank > tgt.rank:
                raise ContradictionError(f"{where} is injective but rank {src.rank} > {tgt.rank}")
            if tgt.is_zero() and not src.is_zero():
                raise ContradictionError(f"{where} is injective into 0 from {src}")
        if "surjective" in fs and src is not None and tgt is not None:
            if tgt.rank > src.rank:
                raise ContradictionError(f"{where} is surjective but rank {tgt.rank} > {src.rank}")
            if src.is_zero() and not tgt.is_zero():
                raise ContradictionError(f"{where} is surjective from 0 onto {tgt}")
        if "iso" in fs and src is not None and tgt is not None and src != tgt:
            raise ContradictionError(f"{where} is an isomorphism between {src} and {tgt}")

    # rules

    def rule_zero_slot(self):
        for i, g in enumerate(self.slot_value):
            if g is not None and g.is_zero():
                if i > 0:
                    self.add_fact(i - 1, "zero", f"target {self.label(i)} is 0")
                if i < len(self.slot_value) - 1:
                    self.add_fact(i, "zero", f"source {self.label(i)} is 0")

    def rule_exactness(self):
        for i in range(1, len(self.P.slots) - 1):
            a_in, a_out = i - 1, i
            at = f"exactness at {self.label(i)}"
            if "zero" in self.facts[a_in]:
                self.add_fact(a_out, "injective", at)
            if "injective" in self.facts[a_out]:
                self.add_fact(a_in, "zero", at)
            if "zero" in self.facts[a_out]:
                self.add_fact(a_in, "surjective", at)
            if "surjective" in self.facts[a_in]:
                self.add_fact(a_out, "zero", at)

    def rule_iso(self):
        for i, fs in self.facts.items():
            if "iso" in fs:
                self.add_fact(i, "injective", "iso")
                self.add_fact(i, "surjective", "iso")
            elif "injective" in fs and "surjective" in fs:
                self.add_fact(i, "iso", "injective and surjective")

    def rule_r1(self):
        for i, fs in self.facts.items():
            if "zero" in fs and "injective" in fs:
                self.set_slot(i, ZERO, f"R1: {self.arrow(i)} is injective and zero")
            if "zero" in fs and "surjective" in fs:
                self.set_slot(i + 1, ZERO, f"R1: {self.arrow(i)} is surjective and zero")

    def rule_r2(self):
        for i in range(1, len(self.P.slots) - 1):
            if "injective" not in self.facts[i - 1] or "surjective" not in self.facts[i]:
                continue
            A, G, C = self.slot_value[i - 1], self.slot_value[i], self.slot_value[i + 1]
            if C is None or not C.is_free():
                continue
            why = f"R2: 0 -> {self.label(i - 1)} -> {self.label(i)} -> {self.label(i + 1)} -> 0, free quotient"
            if A is not None:
                self.set_slot(i, A.direct_sum(C), why)
            elif G is not None:
                try:
                    self.set_slot(i - 1, G.cancel_free(C), why)
                except GroupError as exc:
                    raise ContradictionError(f"{why}: {exc}") from None

    def rule_r34(self):
        for i, fs in self.facts.items():
            if "iso" not in fs:
                continue
            src, tgt = self.slot_value[i], self.slot_value[i + 1]
            why = f"R3/R4: {self.arrow(i)} is an isomorphism"
            if src is not None:
                self.set_slot(i + 1, src, why)
            elif tgt is not None:
                self.set_slot(i, tgt, why)

    def rule_hopf(self):
        for i, fs in self.facts.items():
            src, tgt = self.slot_value[i], self.slot_value[i + 1]
            if src is None or tgt is None or src != tgt:
                continue
            if "surjective" in fs:
                self.add_fact(i, "iso", "Hopf: surjection between isomorphic f.g. groups")
            elif "injective" in fs and src.is_finite():
                self.add_fact(i, "iso", "injection between isomorphic finite groups")

    def rule_r5(self):
        zeros = [i for i, fs in self.facts.items() if "zero" in fs]
        for a, b in zip(zeros, zeros[1:]):
            seg = list(range(a + 1, b + 1))
            if len(seg) < 2:
                continue
            vals = [self.slot_value[i] for i in seg]
            if all(v is not None for v in vals):
                total = sum((-1) ** k * v.rank for k, v in enumerate(vals))
                if total:
                    names = ", ".join(self.label(i) for i in seg)
                    raise ContradictionError(f"R5: alternating rank sum over [{names}] is {total}")
                continue
            missing = [k for k, v in enumerate(vals) if v is None]
            if missing == [0] and vals[1].is_free():
                r = -sum((-1) ** k * v.rank for k, v in enumerate(vals) if k)
                if r < 0:
                    raise ContradictionError(f"R5: negative rank for {self.label(seg[0])}")
                self.set_slot(seg[0], FGAbelian(r),
                              f"R5: rank count, injects into free {self.label(seg[1])}")


RULES: dict[str, Callable[[_State], None]] = {
    "zero-slot": _State.rule_zero_slot,
    "exactness": _State.rule_exactness,
    "iso": _State.rule_iso,
    "R1": _State.rule_r1,
    "R2": _State.rule_r2,
    "R3/R4": _State.rule_r34,
    "hopf": _State.rule_hopf,
    "R5": _State.rule_r5,
}


def solve_exact(P: ExactSeqProblem, known: Mapping[str, FGAbelian] | None = None,
                rule_order: Sequence[str] | None = None, max_rounds: int = 1000) -> Solution:
    """Saturate ``P`` under the rule set; ``known`` seeds values of unknowns."""
    state = _State(P, known or {})
    order = list(rule_order) if rule_order is not None else list(RULES)
    if sorted(order) != sorted(RULES):
        raise ValueError(f"rule_order must be a permutation of {list(RULES)}")
    for arrow in range(len(P.slots) - 1):
        state._check_arrow(arrow)
    for _ in range(max_rounds):
        state.changed = False
        for name in order:
            RULES[name](state)
        if not state.changed:
            break
    unresolved = [u for u in P.unknowns() if u not in state.values]
    return Solution(dict(state.values), list(state.slot_value),
                    {i: set(fs) for i, fs in state.facts.items()}, unresolved, state.trace)


def chain(slots: Iterable[Term | Sequence[Term]], facts: Mapping[int, Iterable[str]] | None = None,
          name: str = "") -> ExactSeqProblem:
    """Build a problem, padding with zero groups on both ends."""
    body = [s if isinstance(s, (list, tuple)) else (s,) for s in slots]
    facts = {i + 1: set(fs) for i, fs in (facts or {}).items()}
    return ExactSeqProblem([(ZERO,)] + [tuple(s) for s in body] + [(ZERO,)], facts, name=name)
