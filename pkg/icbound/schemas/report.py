"""
Report Schemas
Pydantic models for the JSON reports written by the command line
Rationals are exact "p/q" strings; receivers, points and messages are 1-based
"""

from typing import Dict, List, Optional, Tuple

from pydantic import BaseModel, Field


class CoverEntrySchema(BaseModel):
    """Clique of a cover certificate with its weight and coding vector"""
    members: List[int]
    weight: str
    vector: Optional[List[int]] = None


class GroupEntrySchema(BaseModel):
    """Multicast group with its weight and cost"""
    members: List[int]
    weight: str
    cost: str


class CertificateSchema(BaseModel):
    cover: List[CoverEntrySchema] = Field(default_factory=list)
    groups: List[GroupEntrySchema] = Field(default_factory=list)
    local: Optional[str] = None
    nodes: int = 0


class BoundReportSchema(BaseModel):
    """Schema for `bounds` output; values keep the requested order"""
    m: int
    n: int
    field: str
    values: Dict[str, str]
    certificates: Optional[Dict[str, CertificateSchema]] = None
    elapsed: Optional[float] = None


class MinrankReportSchema(BaseModel):
    """Schema for `minrank` / `kappa` output"""
    field: str
    value: int
    nodes: int
    certificate: Optional[List[List[int]]] = None
    distribution: Optional[Dict[str, int]] = None
    elapsed: Optional[float] = None


class ReductionStepSchema(BaseModel):
    kind: str
    vertex: int
    target: Optional[int] = None


class ReduceReportSchema(BaseModel):
    """Schema for `reduce` output: the n - 1 decision and the reduction trace"""
    n: int
    field: str
    holds: bool
    tau: Optional[int] = None
    reason: str
    steps: List[ReductionStepSchema] = Field(default_factory=list)
    certificate: Optional[List[List[int]]] = None
    certificate_rank: Optional[int] = None


class ClassifyReportSchema(BaseModel):
    """Schema for `classify` output; value is null when no table row applies"""
    n: int
    field: str
    value: Optional[int] = None
    reason: Optional[str] = None


class KlemmSchema(BaseModel):
    p: int
    rank: int
    upper_bound: str
    upper_holds: bool
    containment_claimed: bool
    dual_contained: bool
    lower_holds: bool
    passed: bool


class DesignReportSchema(BaseModel):
    """Schema for `design` output"""
    design: str
    v: int
    b: int
    k: int
    r: int
    lam: int
    order: int
    symmetric: bool
    projective_plane: bool
    p_rank: Optional[int] = None
    klemm: Optional[KlemmSchema] = None


class DesignBoundSchema(BaseModel):
    """Schema for `design-bound` output"""
    p: int
    bound: int
    half_bound: str
    contains: bool
    coincides: bool
    witness: List[Optional[int]]
    receivers_used: List[int]
    encoder: List[List[int]]


class WeightReportSchema(BaseModel):
    """Schema for `weights` output"""
    p: int
    order: int
    min_weight: int
    expected_min_weight: int
    minimal_words: int
    minimal_are_block_multiples: bool
    gap: Optional[Tuple[int, int]] = None
    gap_empty: Optional[bool] = None
    distribution: Dict[str, int]
    passed: bool


class SecrecyReportSchema(BaseModel):
    """Schema for `secrecy` output"""
    p: int
    pairs_checked: int
    leaks: List[Tuple[int, int]]
    passed: bool


class AdversaryReportSchema(BaseModel):
    """Schema for `adversary` output; safe is null when the hypotheses fail"""
    p: int
    known: List[int]
    plane_ok: bool
    size_ok: bool
    blocks_ok: bool
    violating_block: Optional[List[int]] = None
    recoverable: List[int]
    block_recoverable: List[int]
    hypotheses_hold: bool
    safe: Optional[bool] = None


class SchemeReportSchema(BaseModel):
    """Schema for `simulate` output"""
    scheme: str
    field: str
    extended: bool
    split: int
    transmissions: int
    rate: str
    parameters: Dict[str, object] = Field(default_factory=dict)
    trials: int
    seed: int
    failures: int
    decoded: List[bool]
    words: List[int] = Field(default_factory=list)


class SubpacketReportSchema(BaseModel):
    """One sub-block selection of `simulate --no-mds`"""
    selection: List[int]
    recovered: List[List[int]]
    failing: List[int]


class SubpacketSummarySchema(BaseModel):
    """Schema for `simulate --no-mds` output"""
    groups: List[List[int]]
    weights: List[str]
    selections: List[SubpacketReportSchema]
    always_fails: bool
