"""
Scheme Models
Linear transmission schemes, their decoders and simulation transcripts
"""

import enum
from dataclasses import dataclass, field as dataclass_field
from fractions import Fraction
from typing import Dict, FrozenSet, Optional, Tuple

from icbound.models.field import FieldSpec
from icbound.models.matrix import FqMatrix


class SchemeKind(str, enum.Enum):
    """Transmission scheme family"""
    CLIQUE = "clique"
    LOCAL = "local"
    MULTICAST = "multicast"
    PARTITIONED_LOCAL = "partitioned-local"
    KAPPA = "kappa"
    ENCODER = "encoder"


@dataclass(frozen=True)
class SchemePlan:
    """
    A linear scheme on messages split into `split` sub-blocks

    Messages form an n x split matrix X; the encoder acts on its message-major flattening,
    so column j*split + a carries sub-block a of message j. Each encoder row is one
    transmitted symbol of sub-block size.
    """

    kind: SchemeKind
    field: FieldSpec
    split: int
    encoder: FqMatrix
    extended: bool = False
    parameters: Dict[str, object] = dataclass_field(default_factory=dict, compare=False, hash=False)

    @property
    def transmissions(self) -> int:
        return self.encoder.rows

    @property
    def rate(self) -> Fraction:
        """Transmitted symbols per message symbol"""
        return Fraction(self.transmissions, self.split)


@dataclass(frozen=True)
class DecodeTrace:
    """
    Receiver decoder: `decoder` maps (transmissions, side symbols) to the split request symbols

    `side_rows` is the number of side-information symbols (d_i * split) the decoder reads.
    """

    receiver: int
    decoder: Optional[FqMatrix]
    side_rows: int

    @property
    def decodable(self) -> bool:
        return self.decoder is not None


@dataclass(frozen=True)
class SchemeTranscript:
    """Outcome of a seeded simulation; `words` are the transmissions of the first trial"""

    plan: SchemePlan
    trials: int
    seed: int
    traces: Tuple[DecodeTrace, ...]
    failures: int
    words: Tuple[int, ...] = ()

    @property
    def success(self) -> Tuple[bool, ...]:
        return tuple(t.decodable for t in self.traces)


@dataclass(frozen=True)
class SubpacketReport:
    """
    Sub-packet selection without MDS combination

    `recovered[i]` lists the sub-blocks (0-based) of its request receiver i can rebuild.
    """

    selection: Tuple[int, ...]
    recovered: Tuple[FrozenSet[int], ...]
    split: int

    @property
    def failing(self) -> Tuple[int, ...]:
        return tuple(i for i, got in enumerate(self.recovered) if len(got) < self.split)
