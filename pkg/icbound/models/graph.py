"""
Graph Models
Side-information digraphs and hypergraphs (vertices labelled 1..n)
"""

from dataclasses import dataclass, field
from typing import TYPE_CHECKING, FrozenSet, Iterable, List, Optional, Tuple

import networkx as nx

from icbound.core.exceptions import DimensionMismatch

if TYPE_CHECKING:
    from icbound.models.matrix import FqMatrix

Arc = Tuple[int, int]


@dataclass(frozen=True)
class Digraph:
    """Simple digraph on vertices 1..n without self-loops"""

    n: int
    arcs: FrozenSet[Arc] = field(default_factory=frozenset)

    def __post_init__(self):
        arcs = frozenset((int(u), int(v)) for u, v in self.arcs)
        for u, v in arcs:
            if u == v:
                raise DimensionMismatch(f"Self-loop at vertex {u}")
            if not (1 <= u <= self.n and 1 <= v <= self.n):
                raise DimensionMismatch(f"Arc ({u},{v}) outside vertex set 1..{self.n}")
        object.__setattr__(self, "arcs", arcs)

    @classmethod
    def from_arcs(cls, n: int, arcs: Iterable[Arc]) -> "Digraph":
        return cls(n, frozenset(tuple(a) for a in arcs))

    @classmethod
    def complete(cls, n: int) -> "Digraph":
        return cls(n, frozenset((u, v) for u in range(1, n + 1) for v in range(1, n + 1) if u != v))

    @classmethod
    def cycle(cls, n: int) -> "Digraph":
        return cls(n, frozenset((i, i % n + 1) for i in range(1, n + 1)) if n > 1 else frozenset())

    @property
    def vertices(self) -> range:
        return range(1, self.n + 1)

    def out_neighbors(self, u: int) -> List[int]:
        return sorted(v for a, v in self.arcs if a == u)

    def in_neighbors(self, v: int) -> List[int]:
        return sorted(u for u, b in self.arcs if b == v)

    def has_arc(self, u: int, v: int) -> bool:
        return (u, v) in self.arcs

    def sorted_arcs(self) -> List[Arc]:
        return sorted(self.arcs)

    def to_networkx(self) -> nx.DiGraph:
        graph = nx.DiGraph()
        graph.add_nodes_from(self.vertices)
        graph.add_edges_from(self.arcs)
        return graph

    def __repr__(self) -> str:
        return f"Digraph(n={self.n}, arcs={self.sorted_arcs()})"


@dataclass(frozen=True)
class Hyperarc:
    tail: int
    head: FrozenSet[int]


@dataclass(frozen=True)
class Hypergraph:
    """Hypergraph on 1..n with an ordered list of hyperarcs (tail, head), tail not in head"""

    n: int
    hyperarcs: Tuple[Hyperarc, ...] = ()

    def __post_init__(self):
        arcs = tuple(
            a if isinstance(a, Hyperarc) else Hyperarc(int(a[0]), frozenset(int(h) for h in a[1]))
            for a in self.hyperarcs
        )
        for arc in arcs:
            if arc.tail in arc.head:
                raise DimensionMismatch(f"Tail {arc.tail} lies in its own head")
            if not all(1 <= v <= self.n for v in arc.head | {arc.tail}):
                raise DimensionMismatch(f"Hyperarc {arc} outside vertex set 1..{self.n}")
        object.__setattr__(self, "hyperarcs", arcs)

    @property
    def m(self) -> int:
        return len(self.hyperarcs)

    @classmethod
    def from_digraph(cls, graph: Digraph) -> "Hypergraph":
        """One hyperarc (i, N+(i)) per vertex"""
        return cls(
            graph.n,
            tuple(Hyperarc(i, frozenset(graph.out_neighbors(i))) for i in graph.vertices),
        )


@dataclass(frozen=True)
class ReductionStep:
    """One step of the out-degree reduction: contraction of (i1, i2) or deletion of a sink"""

    kind: str  # "contract" | "delete"
    graph: Digraph  # graph before the step
    i1: int
    i2: int = 0


@dataclass(frozen=True)
class NearExtreme:
    value: int
    reason: str


@dataclass(frozen=True)
class TauTwoReduction:
    """Trace of the rank n-2 construction for a digraph with feedback number 2"""

    steps: Tuple[ReductionStep, ...]
    reduced: Digraph
    reduced_matrix: "FqMatrix"
    certificate: "FqMatrix"
    via_packing: bool = False


@dataclass(frozen=True)
class MinrankDecision:
    """Answer to "is minrk_q(G) = n - 1?" with the certificate that settles it"""

    holds: bool
    tau: Optional[int]
    reason: str
    certificate: Optional["FqMatrix"] = None
