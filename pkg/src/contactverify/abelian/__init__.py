"""Integer linear algebra, homology and exact-sequence bookkeeping."""

from .exactseq import ContradictionError, ExactSeqProblem, Solution, chain, solve_exact
from .groups import FGAbelian, GroupError, direct_sum
from .homology import ChainComplex, ComplexError, homology
from .matrix import IntMatrix
from .replays import MayerVietoris, replay_handlebody, replay_surgered_sphere
from .snf import invariant_factors, smith_normal_form

__all__ = [
    "IntMatrix", "smith_normal_form", "invariant_factors", "FGAbelian", "GroupError",
    "direct_sum", "ChainComplex", "ComplexError", "homology", "ExactSeqProblem", "Solution",
    "ContradictionError", "chain", "solve_exact", "MayerVietoris", "replay_surgered_sphere",
    "replay_handlebody",
]
