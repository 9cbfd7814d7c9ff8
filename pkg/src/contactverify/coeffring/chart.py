from __future__ import annotations

from dataclasses import dataclass, field
from typing import Literal, Sequence

# Variables of one chart are packed into a single int per monomial.
# Field k (BITS wide) holds the exponent of variable k; the total degree
# sits above all fields so that integer order is degree-lexicographic with
# later variables weighing more.
BITS = 8
MAX_VARS = 32
DEG_SHIFT = BITS * MAX_VARS
FIELD_MASK = (1 << BITS) - 1
# Top bit of each field is a guard bit; exponents stay below 2**(BITS-1).
MAX_DEGREE = (1 << (BITS - 1)) - 1
GUARD = sum(1 << (BITS * k + BITS - 1) for k in range(MAX_VARS))


class ChartError(ValueError):
    pass


@dataclass(frozen=True)
class Chart:
    """A coordinate chart: ordered variables plus an optional radical.

    Complex charts list conjugate pairs ``(z_j, zbar_j)`` next to each other;
    ``conj_index[k]`` gives the partner of variable ``k`` (itself for real
    charts).  When ``has_radical`` is set a symbol ``rho`` with
    ``rho**2 = sum_j z_j*zbar_j`` is adjoined.
    """

    name: str
    kind: Literal["real", "complex"]
    variables: tuple[str, ...]
    has_radical: bool = False
    conj_index: tuple[int, ...] = field(default=(), compare=False, repr=False)

    def __post_init__(self):
        if self.kind not in ("real", "complex"):
            raise ChartError(f"unknown chart kind {self.kind!r}")
        if len(set(self.variables)) != len(self.variables):
            raise ChartError(f"duplicate variable names in chart {self.name!r}")
        if len(self.variables) > MAX_VARS:
            raise ChartError(f"at most {MAX_VARS} variables per chart")
        if self.has_radical and self.kind != "complex":
            raise ChartError("a radical can only be adjoined to a complex chart")
        if self.kind == "complex":
            if len(self.variables) % 2:
                raise ChartError("complex charts need conjugate pairs of variables")
            conj = []
            for k in range(len(self.variables)):
                conj.append(k + 1 if k % 2 == 0 else k - 1)
            object.__setattr__(self, "conj_index", tuple(conj))
        else:
            object.__setattr__(self, "conj_index", tuple(range(len(self.variables))))

    @classmethod
    def real(cls, name: str, variables: Sequence[str]) -> "Chart":
        return cls(name, "real", tuple(variables))

    @classmethod
    def complex(cls, name: str, n: int, radical: bool = False,
                symbol: str = "z", bar: str = "zb") -> "Chart":
        """Chart on C^n with variables ``z1, zb1, ..., zn, zbn``."""
        names = []
        for j in range(1, n + 1):
            names += [f"{symbol}{j}", f"{bar}{j}"]
        return cls(name, "complex", tuple(names), radical)

    @classmethod
    def complex_pairs(cls, name: str, pairs: Sequence[tuple[str, str]],
                      radical: bool = False) -> "Chart":
        names = [v for pair in pairs for v in pair]
        return cls(name, "complex", tuple(names), radical)

    @property
    def nvars(self) -> int:
        return len(self.variables)

    @property
    def n_complex(self) -> int:
        return self.nvars // 2 if self.kind == "complex" else 0

    def index(self, var: str | int) -> int:
        if isinstance(var, int):
            if not 0 <= var < self.nvars:
                raise ChartError(f"variable index {var} out of range for chart {self.name!r}")
            return var
        try:
            return self.variables.index(var)
        except ValueError:
            raise ChartError(f"{var!r} is not a variable of chart {self.name!r}") from None

    def holomorphic_indices(self) -> list[int]:
        """Indices of ``z_j`` (complex) or of all variables (real)."""
        if self.kind == "complex":
            return list(range(0, self.nvars, 2))
        return list(range(self.nvars))

    # monomial packing helpers

    def var_monomial(self, k: int) -> int:
        return (1 << DEG_SHIFT) | (1 << (BITS * k))

    def pack(self, exps: Sequence[int]) -> int:
        if len(exps) != self.nvars:
            raise ChartError("exponent vector has wrong length")
        m = sum(exps) << DEG_SHIFT
        for k, e in enumerate(exps):
            if e < 0 or e > MAX_DEGREE:
                raise ChartError(f"exponent {e} out of supported range")
            m |= e << (BITS * k)
        return m

    def unpack(self, m: int) -> tuple[int, ...]:
        return tuple((m >> (BITS * k)) & FIELD_MASK for k in range(self.nvars))

    def __str__(self):
        return self.name


def degree(m: int) -> int:
    return m >> DEG_SHIFT


def exponent(m: int, k: int) -> int:
    return (m >> (BITS * k)) & FIELD_MASK


def divides(m1: int, m2: int) -> bool:
    """True iff monomial ``m1`` divides ``m2``."""
    low = (1 << DEG_SHIFT) - 1
    return (((m2 & low) | GUARD) - (m1 & low)) & GUARD == GUARD
