"""
Bound Models
Generalized cliques and the parameter values computed from them (receivers 0-based)
"""

from dataclasses import dataclass, field as dataclass_field
from fractions import Fraction
from typing import Dict, FrozenSet, Iterator, Optional, Tuple

Vector = Tuple[int, ...]


@dataclass(frozen=True)
class CliqueOption:
    """A coding vector for a clique and the receivers that do not know it"""

    vector: Vector
    unknown: FrozenSet[int]


@dataclass(frozen=True)
class GeneralizedClique:
    """
    Receivers served by one transmission

    `options` keeps one normalized vector per inclusion-minimal unknown set.
    """

    members: FrozenSet[int]
    options: Tuple[CliqueOption, ...]

    @property
    def size(self) -> int:
        return len(self.members)

    @property
    def vectors(self) -> Tuple[Vector, ...]:
        return tuple(o.vector for o in self.options)


@dataclass(frozen=True)
class CoverEntry:
    members: FrozenSet[int]
    weight: Fraction
    vector: Optional[Vector] = None


@dataclass(frozen=True)
class GroupEntry:
    """Multicast group with its weight and cost (d_M, or t_M for the partitioned programs)"""

    members: FrozenSet[int]
    weight: Fraction
    cost: Fraction


@dataclass(frozen=True)
class BoundValue:
    """
    One parameter with its certificate

    Clique programs fill `cover`; multicast programs fill `groups`; the partitioned local
    programs fill both. `local` is k for the local programs.
    """

    name: str
    value: Fraction
    cover: Tuple[CoverEntry, ...] = ()
    groups: Tuple[GroupEntry, ...] = ()
    local: Optional[Fraction] = None
    nodes: int = 0


@dataclass
class BoundReport:
    """Computed parameters keyed by name, in the order requested"""

    m: int
    n: int
    field: str
    values: Dict[str, BoundValue] = dataclass_field(default_factory=dict)

    def __getitem__(self, name: str) -> BoundValue:
        return self.values[name]

    def __contains__(self, name: str) -> bool:
        return name in self.values

    def __iter__(self) -> Iterator[BoundValue]:
        return iter(self.values.values())

    def value(self, name: str) -> Fraction:
        return self.values[name].value
