from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .groups import FGAbelian
from .matrix import IntMatrix
from .snf import invariant_factors


class ComplexError(ValueError):
    pass


@dataclass(frozen=True)
class ChainComplex:
    """Free chain complex ``C_top -> ... -> C_0``.

    ``boundaries[k - 1]`` is the matrix of ``d_k: C_k -> C_(k-1)`` with shape
    ``(dims[k-1], dims[k])``, for ``k = 1 .. len(dims) - 1``.
    """

    dims: tuple[int, ...]
    boundaries: tuple[IntMatrix, ...]

    def __post_init__(self):
        dims = tuple(int(d) for d in self.dims)
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "boundaries", tuple(self.boundaries))
        if any(d < 0 for d in dims):
            raise ComplexError("chain group ranks must be nonnegative")
        if len(self.boundaries) != max(len(dims) - 1, 0):
            raise ComplexError(f"expected {max(len(dims) - 1, 0)} boundary matrices, "
                               f"got {len(self.boundaries)}")
        for k in range(1, len(dims)):
            b = self.boundaries[k - 1]
            if b.shape != (dims[k - 1], dims[k]):
                raise ComplexError(f"boundary in degree {k} has shape {b.shape}, "
                                   f"expected {(dims[k - 1], dims[k])}")
        for k in range(2, len(dims)):
            if not (self.boundaries[k - 2] @ self.boundaries[k - 1]).is_zero():
                raise ComplexError(f"boundary composition d_{k - 1} d_{k} is nonzero "
                                   f"(degree {k})")

    @classmethod
    def from_lists(cls, dims: Sequence[int], boundaries: Sequence[Sequence[Sequence[int]]]
                   ) -> "ChainComplex":
        mats = []
        for k in range(1, len(dims)):
            rows = boundaries[k - 1]
            if dims[k - 1] == 0:
                mats.append(IntMatrix(0, dims[k]))
            else:
                if len(rows) != dims[k - 1]:
                    raise ComplexError(f"boundary in degree {k} has {len(rows)} rows, "
                                       f"expected {dims[k - 1]}")
                if any(len(r) != dims[k] for r in rows):
                    raise ComplexError(f"boundary in degree {k} has rows of the wrong length, "
                                       f"expected {dims[k]}")
                mats.append(IntMatrix(dims[k - 1], dims[k], rows))
        return cls(tuple(dims), tuple(mats))

    def boundary(self, k: int) -> IntMatrix:
        """``d_k``; zero maps outside the stored range."""
        if 1 <= k < len(self.dims):
            return self.boundaries[k - 1]
        lo = self.dims[k - 1] if 1 <= k <= len(self.dims) else 0
        hi = self.dims[k] if 0 <= k < len(self.dims) else 0
        return IntMatrix(lo, hi)

    def shifted(self, s: int) -> "ChainComplex":
        """Same complex with degrees raised by ``s >= 0``."""
        dims = (0,) * s + self.dims
        mats = [IntMatrix(0, 0)] * max(s - 1, 0)
        if s and self.dims:
            mats.append(IntMatrix(0, self.dims[0]))
        return ChainComplex(dims, tuple(mats) + self.boundaries)

    def direct_sum(self, other: "ChainComplex") -> "ChainComplex":
        n = max(len(self.dims), len(other.dims))
        a = self.dims + (0,) * (n - len(self.dims))
        b = other.dims + (0,) * (n - len(other.dims))
        mats = []
        for k in range(1, n):
            m1, m2 = self.boundary(k), other.boundary(k)
            rows = [r + [0] * b[k] for r in m1.to_rows()]
            rows += [[0] * a[k] + r for r in m2.to_rows()]
            mats.append(IntMatrix(a[k - 1] + b[k - 1], a[k] + b[k], rows))
        return ChainComplex(tuple(x + y for x, y in zip(a, b)), tuple(mats))


def homology(C: ChainComplex) -> list[FGAbelian]:
    """``H_k = ker d_k / im d_(k+1)`` for every degree of ``C``."""
    out = []
    for k, dim in enumerate(C.dims):
        rank_out = len(invariant_factors(C.boundary(k)))
        incoming = invariant_factors(C.boundary(k + 1))
        free = dim - rank_out - len(incoming)
        out.append(FGAbelian.from_cyclic(free, [d for d in incoming if d > 1]))
    return out
