"""
Min-rank Models
Fitting patterns and search results
"""

from dataclasses import dataclass
from typing import Dict, FrozenSet, Tuple

from icbound.models.matrix import FqMatrix

Position = Tuple[int, int]


@dataclass(frozen=True)
class FittingPattern:
    """
    Shape of the matrices fitting a (hyper)graph (0-based positions)

    fixed_one, fixed_zero and free partition [m] x [n]; `free` is in row-major order.
    """

    m: int
    n: int
    fixed_one: FrozenSet[Position]
    fixed_zero: FrozenSet[Position]
    free: Tuple[Position, ...]

    def __post_init__(self):
        cells = len(self.fixed_one) + len(self.fixed_zero) + len(self.free)
        union = self.fixed_one | self.fixed_zero | frozenset(self.free)
        if cells != self.m * self.n or len(union) != cells:
            raise ValueError("Pattern positions must partition the m x n grid")

    def free_in_row(self, i: int) -> Tuple[int, ...]:
        return tuple(c for r, c in self.free if r == i)


@dataclass(frozen=True)
class MinrankResult:
    value: int
    certificate: FqMatrix
    nodes: int


@dataclass(frozen=True)
class KappaResult:
    """
    kappa with A (rows in X^(i) and the sender space), encoder in sender coordinates
    and the transmitted rows of F_q^n
    """

    value: int
    A: FqMatrix
    encoder: FqMatrix
    code_rows: FqMatrix
    nodes: int


RankDistribution = Dict[int, int]
