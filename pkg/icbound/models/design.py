"""
Design Models
Block designs and the reports produced by the design-based checks
"""

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Dict, FrozenSet, Optional, Tuple

from icbound.models.matrix import FqMatrix


@dataclass(frozen=True)
class Design:
    """
    A validated t-(v, k, lam) design on points 1..v

    `order` is r - lambda_2 and only defined for t >= 2.
    """

    v: int
    blocks: Tuple[FrozenSet[int], ...]
    t: int
    k: int
    lam: int
    r: int

    @property
    def b(self) -> int:
        return len(self.blocks)

    @property
    def lambda2(self) -> Optional[int]:
        if self.t < 2:
            return None
        return self.lam * comb(self.v - 2, self.t - 2) // comb(self.k - 2, self.t - 2)

    @property
    def order(self) -> Optional[int]:
        lam2 = self.lambda2
        return None if lam2 is None else self.r - lam2

    @property
    def params(self) -> Tuple[int, int, int, int]:
        return (self.t, self.v, self.k, self.lam)

    @property
    def is_symmetric(self) -> bool:
        return self.b == self.v

    @property
    def is_projective_plane(self) -> bool:
        n = self.order
        return self.t == 2 and self.lam == 1 and n is not None and n >= 2 and self.v == n * n + n + 1

    def sorted_blocks(self) -> list:
        return [sorted(block) for block in self.blocks]

    def __str__(self) -> str:
        return f"{self.t}-({self.v},{self.k},{self.lam}) design"


@dataclass(frozen=True)
class KlemmReport:
    """
    Rank bounds for the p-ary code of a 2-design

    The containment of the dual code and the v/2 lower bound are only claimed when p does
    not divide lambda and p^2 does not divide the order; they are computed either way.
    """

    p: int
    rank: int
    upper_bound: Fraction
    upper_holds: bool
    containment_claimed: bool
    dual_contained: bool
    lower_holds: bool
    dual_witness: Optional[Tuple[int, ...]] = None

    @property
    def passed(self) -> bool:
        if not self.upper_holds:
            return False
        return not self.containment_claimed or (self.dual_contained and self.lower_holds)


@dataclass(frozen=True)
class DesignContainment:
    """Per-receiver witness block (0-based block index, None when missing)"""

    contains: bool
    coincides: bool
    witness: Tuple[Optional[int], ...]


@dataclass(frozen=True)
class DesignBound:
    """rank_p(D) bound with the encoder built from the witness incidence rows"""

    bound: int
    p: int
    encoder: FqMatrix
    receivers_used: Tuple[int, ...]
    half_bound: Fraction


@dataclass(frozen=True)
class WeightReport:
    p: int
    order: int
    min_weight: int
    expected_min_weight: int
    minimal_words: int
    minimal_are_block_multiples: bool
    gap: Optional[Tuple[int, int]]
    gap_empty: Optional[bool]
    distribution: Dict[int, int] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return (
            self.min_weight == self.expected_min_weight
            and self.minimal_are_block_multiples
            and self.gap_empty is not False
        )


@dataclass(frozen=True)
class SecrecyReport:
    """Receiver/message pairs checked and any leak found (1-based labels)"""

    p: int
    pairs_checked: int
    leaks: Tuple[Tuple[int, int], ...]

    @property
    def passed(self) -> bool:
        return not self.leaks


@dataclass(frozen=True)
class AdversaryReport:
    """
    Eavesdropper holding the messages in `known`

    `safe` is asserted only when the hypotheses hold; `recoverable` lists the messages the
    exhaustive search found, `block_recoverable` those the block criterion predicts.
    """

    p: int
    known: FrozenSet[int]
    plane_ok: bool
    size_ok: bool
    blocks_ok: bool
    violating_block: Optional[FrozenSet[int]]
    recoverable: Tuple[int, ...]
    block_recoverable: Tuple[int, ...]

    @property
    def hypotheses_hold(self) -> bool:
        return self.plane_ok and self.size_ok and self.blocks_ok

    @property
    def safe(self) -> Optional[bool]:
        if not self.hypotheses_hold:
            return None
        return not self.recoverable
