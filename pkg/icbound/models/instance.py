"""
Instance Models
Index-coding instances with uncoded (ICSI) and coded (ICCSI) side information
"""

from dataclasses import dataclass
from functools import cached_property
from typing import FrozenSet, List, Optional, Tuple

from icbound.core.exceptions import DimensionMismatch, PreconditionViolated
from icbound.models.field import FieldSpec
from icbound.models.matrix import FqMatrix, Subspace


@dataclass(frozen=True)
class IcsiInstance:
    """
    n messages, m receivers; receiver i holds side_info[i] and demands message f[i]

    Labels are 1-based as in the instance files; receiver i is stored at index i-1.
    """

    n: int
    f: Tuple[int, ...]
    side_info: Tuple[FrozenSet[int], ...]
    t: int = 1

    def __post_init__(self):
        f = tuple(int(x) for x in self.f)
        side = tuple(frozenset(int(x) for x in s) for s in self.side_info)
        if len(f) != len(side):
            raise DimensionMismatch(f"{len(f)} demands but {len(side)} side-information sets")
        if self.t < 1:
            raise PreconditionViolated(f"Block length must be positive, got {self.t}")
        for i, (demand, known) in enumerate(zip(f, side), start=1):
            if not 1 <= demand <= self.n:
                raise PreconditionViolated(f"Receiver {i} demands unknown message {demand}")
            if not all(1 <= j <= self.n for j in known):
                raise PreconditionViolated(f"Receiver {i} side information outside 1..{self.n}")
            if demand in known:
                raise PreconditionViolated(f"Receiver {i} already knows its demand {demand}")
        object.__setattr__(self, "f", f)
        object.__setattr__(self, "side_info", side)

    @property
    def m(self) -> int:
        return len(self.f)

    @property
    def is_canonical(self) -> bool:
        """m = n and receiver i demands message i"""
        return self.m == self.n and all(d == i for i, d in enumerate(self.f, start=1))


@dataclass(frozen=True, eq=True)
class IccsiInstance:
    """
    Coded side information: receiver i holds V[i] X, demands R_i X; the sender can form V_S X

    Each R_i must lie in the sender space and outside the receiver's side space.
    """

    field: FieldSpec
    VS: FqMatrix
    V: Tuple[FqMatrix, ...]
    R: FqMatrix
    t: int = 1

    def __post_init__(self):
        from icbound.services import linalg

        n = self.VS.cols
        object.__setattr__(self, "V", tuple(self.V))
        if self.R.cols != n or any(v.cols != n for v in self.V):
            raise DimensionMismatch(f"All matrices must have n = {n} columns")
        if len(self.V) != self.R.rows:
            raise DimensionMismatch(f"{self.R.rows} requests but {len(self.V)} side matrices")
        if any(M.field != self.field for M in (self.VS, self.R, *self.V)):
            raise DimensionMismatch(f"All matrices must be over {self.field}")
        if self.t < 1:
            raise PreconditionViolated(f"Block length must be positive, got {self.t}")
        sender = self.sender_space
        for i, side in enumerate(self.side_spaces, start=1):
            request = self.R.row(i - 1)
            if not linalg.contains(sender, request):
                raise PreconditionViolated(f"Request of receiver {i} is not in the sender space")
            if linalg.contains(side, request):
                raise PreconditionViolated(f"Receiver {i} can already compute its request")

    @property
    def n(self) -> int:
        return self.VS.cols

    @property
    def m(self) -> int:
        return self.R.rows

    @cached_property
    def sender_space(self) -> Subspace:
        from icbound.services import linalg

        return linalg.span(self.field, self.n, self.VS)

    @cached_property
    def side_spaces(self) -> List[Subspace]:
        from icbound.services import linalg

        return [linalg.span(self.field, self.n, v) for v in self.V]

    @cached_property
    def known_sender_spaces(self) -> List[Subspace]:
        """X^(i) intersected with the sender space, per receiver"""
        from icbound.services import linalg

        return [linalg.subspace_intersect(s, self.sender_space) for s in self.side_spaces]

    @property
    def d_S(self) -> int:
        return self.sender_space.dim

    def d(self, i: int) -> int:
        """Dimension of the side space of receiver i (0-based)"""
        return self.side_spaces[i].dim

    @property
    def distinct_side_count(self) -> int:
        """Number of distinct side spaces among the receivers"""
        return len(set(self.side_spaces))


@dataclass(frozen=True)
class DecodingWitness:
    """R_i = b . (L V_S) + a . V^(i)"""

    b: Tuple[int, ...]
    a: Tuple[int, ...]


@dataclass(frozen=True)
class CodeValidity:
    """Result of the decodability test; witnesses[i] is None for receivers that cannot decode"""

    valid: bool
    witnesses: Tuple[Optional[DecodingWitness], ...]

    @property
    def failing(self) -> List[int]:
        return [i for i, w in enumerate(self.witnesses) if w is None]
