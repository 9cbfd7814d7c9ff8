from __future__ import annotations

import math
import re
from collections import Counter
from dataclasses import dataclass
from typing import Iterable


class GroupError(ValueError):
    pass


def _prime_powers(n: int) -> list[int]:
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            q = 1
            while n % p == 0:
                n //= p
                q *= p
            out.append(q)
        p += 1
    if n > 1:
        out.append(n)
    return out


def _base_prime(q: int) -> int:
    p = 2
    while q % p:
        p += 1
    return p


def _from_elementary(divisors: Iterable[int]) -> tuple[int, ...]:
    by_prime: dict[int, list[int]] = {}
    for q in divisors:
        by_prime.setdefault(_base_prime(q), []).append(q)
    length = max((len(v) for v in by_prime.values()), default=0)
    factors = [1] * length
    for qs in by_prime.values():
        qs.sort(reverse=True)
        for k, q in enumerate(qs):
            factors[length - 1 - k] *= q
    return tuple(factors)


@dataclass(frozen=True)
class FGAbelian:
    """``Z^rank + Z/t1 + ... + Z/tk`` with ``t1 | t2 | ... | tk`` and each ``ti >= 2``."""

    rank: int = 0
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        if self.rank < 0:
            raise GroupError("negative rank")
        t = tuple(int(x) for x in self.torsion)
        if any(x < 2 for x in t) or any(b % a for a, b in zip(t, t[1:])):
            raise GroupError(f"torsion {t} is not an invariant-factor list")
        object.__setattr__(self, "torsion", t)

    @classmethod
    def from_cyclic(cls, rank: int = 0, orders: Iterable[int] = ()) -> "FGAbelian":
        """Group ``Z^rank + sum Z/n`` for arbitrary orders (0 means Z, 1 is dropped)."""
        elementary = []
        for n in orders:
            n = abs(int(n))
            if n == 0:
                rank += 1
            elif n > 1:
                elementary += _prime_powers(n)
        return cls(rank, _from_elementary(elementary))

    @classmethod
    def free(cls, rank: int) -> "FGAbelian":
        return cls(rank)

    @classmethod
    def parse(cls, text: str) -> "FGAbelian":
        """Parse ``0``, ``Z``, ``Z^2 + Z/2 + Z/4`` style notation."""
        text = text.strip()
        if text in ("0", ""):
            return cls()
        rank, orders = 0, []
        for part in text.split("+"):
            part = part.strip()
            m = re.fullmatch(r"Z(?:\^(\d+))?", part)
            if m:
                rank += int(m.group(1) or 1)
                continue
            m = re.fullmatch(r"Z/(\d+)", part)
            if m:
                orders.append(int(m.group(1)))
                continue
            if part == "0":
                continue
            raise GroupError(f"cannot parse group summand {part!r}")
        return cls.from_cyclic(rank, orders)

    def is_zero(self) -> bool:
        return self.rank == 0 and not self.torsion

    def is_free(self) -> bool:
        return not self.torsion

    def is_finite(self) -> bool:
        return self.rank == 0

    def order(self) -> int | None:
        return math.prod(self.torsion) if self.rank == 0 else None

    def elementary_divisors(self) -> list[int]:
        return sorted(q for t in self.torsion for q in _prime_powers(t))

    def direct_sum(self, other: "FGAbelian") -> "FGAbelian":
        return FGAbelian(self.rank + other.rank,
                         _from_elementary(self.elementary_divisors() + other.elementary_divisors()))

    __add__ = direct_sum

    def cancel_free(self, other: "FGAbelian") -> "FGAbelian":
        """``X`` with ``X + other == self`` for a free ``other``."""
        if not other.is_free():
            raise GroupError(f"cancel_free needs a free summand, got {other}")
        if other.rank > self.rank:
            raise GroupError(f"cannot cancel {other} from {self}: rank would be negative")
        return FGAbelian(self.rank - other.rank, self.torsion)

    def cancel(self, other: "FGAbelian") -> "FGAbelian":
        """``X`` with ``X + other == self`` (unique for finitely generated groups)."""
        if other.rank > self.rank:
            raise GroupError(f"cannot cancel {other} from {self}: rank would be negative")
        mine = Counter(self.elementary_divisors())
        theirs = Counter(other.elementary_divisors())
        if theirs - mine:
            raise GroupError(f"{other} is not a direct summand of {self}")
        return FGAbelian(self.rank - other.rank, _from_elementary((mine - theirs).elements()))

    def __str__(self):
        parts = []
        if self.rank:
            parts.append("Z" if self.rank == 1 else f"Z^{self.rank}")
        parts += [f"Z/{t}" for t in self.torsion]
        return " + ".join(parts) if parts else "0"


ZERO = FGAbelian()
Z = FGAbelian(1)


def direct_sum(*groups: FGAbelian) -> FGAbelian:
    out = ZERO
    for g in groups:
        out = out.direct_sum(g)
    return out
