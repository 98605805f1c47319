"""
Instance Schemas
Pydantic models for the JSON interchange formats (fields, matrices, graphs, instances)
"""

from typing import List, Literal, Optional, Union

from pydantic import BaseModel, Field, model_validator


class FieldSchema(BaseModel):
    """Finite field GF(p^ell) with its modulus (coefficients low-to-high)"""
    p: int = Field(..., ge=2)
    ell: int = Field(default=1, ge=1)
    modulus: Optional[List[int]] = None


class MatrixSchema(BaseModel):
    """Row-major matrix of canonical element encodings; field keys optional inside an instance"""
    p: Optional[int] = None
    ell: Optional[int] = None
    modulus: Optional[List[int]] = None
    rows: int = Field(..., ge=0)
    cols: int = Field(..., ge=0)
    entries: List[int] = Field(default_factory=list)

    @model_validator(mode="after")
    def check_entry_count(self):
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(
                f"Matrix declares {self.rows}x{self.cols} but has {len(self.entries)} entries"
            )
        return self


class DigraphSchema(BaseModel):
    """Digraph on 1..n"""
    n: int = Field(..., ge=0)
    arcs: List[List[int]] = Field(default_factory=list)

    @model_validator(mode="after")
    def check_arcs(self):
        if any(len(arc) != 2 for arc in self.arcs):
            raise ValueError("Every arc must be a [tail, head] pair")
        return self


class HyperarcSchema(BaseModel):
    tail: int
    head: List[int] = Field(default_factory=list)


class HypergraphSchema(BaseModel):
    """Hypergraph on 1..n with ordered hyperarcs"""
    n: int = Field(..., ge=0)
    hyperarcs: List[HyperarcSchema] = Field(default_factory=list)


class IcsiSchema(BaseModel):
    """Uncoded side information instance"""
    type: Literal["icsi"] = "icsi"
    n: int = Field(..., ge=1)
    m: Optional[int] = None
    t: int = Field(default=1, ge=1)
    f: List[int]
    side_info: List[List[int]]

    @model_validator(mode="after")
    def check_receivers(self):
        if len(self.f) != len(self.side_info):
            raise ValueError("f and side_info must list the same receivers")
        if self.m is not None and self.m != len(self.f):
            raise ValueError(f"m = {self.m} but {len(self.f)} receivers are listed")
        return self


class IccsiSchema(BaseModel):
    """Coded side information instance"""
    type: Literal["iccsi"] = "iccsi"
    field: FieldSchema
    n: Optional[int] = None
    m: Optional[int] = None
    t: int = Field(default=1, ge=1)
    VS: MatrixSchema
    V: List[MatrixSchema]
    R: MatrixSchema

    @model_validator(mode="after")
    def check_shapes(self):
        if self.n is not None and self.VS.cols != self.n:
            raise ValueError(f"n = {self.n} but VS has {self.VS.cols} columns")
        if self.m is not None and self.R.rows != self.m:
            raise ValueError(f"m = {self.m} but R has {self.R.rows} rows")
        return self


InstanceSchema = Union[IcsiSchema, IccsiSchema]


class InstanceDocument(BaseModel):
    """Wrapper used to parse either instance kind by its "type" tag"""
    instance: InstanceSchema = Field(..., discriminator="type")
