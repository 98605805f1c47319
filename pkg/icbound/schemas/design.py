"""
Design Schemas
Incidence structures as exchanged on the command line
"""

from typing import List, Optional

from pydantic import BaseModel, Field, model_validator


class DesignSchema(BaseModel):
    """Points 1..v and a list of blocks"""
    v: int = Field(..., ge=1)
    blocks: List[List[int]]
    t: Optional[int] = Field(default=None, ge=1)

    @model_validator(mode="after")
    def check_blocks(self):
        if not self.blocks:
            raise ValueError("A design needs at least one block")
        for block in self.blocks:
            if not all(1 <= x <= self.v for x in block):
                raise ValueError(f"Block {block} has points outside 1..{self.v}")
            if len(set(block)) != len(block):
                raise ValueError(f"Block {block} repeats a point")
        return self
