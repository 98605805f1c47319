"""
Digraph Service
Circuit parameters, arc contraction and the near-extreme min-rank procedures
"""

import logging
from itertools import combinations
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple

import networkx as nx
import numpy as np

from icbound.config import settings
from icbound.core.exceptions import FieldTooSmall, PreconditionViolated, TooLarge
from icbound.models.field import FieldSpec
from icbound.models.graph import Digraph, MinrankDecision, NearExtreme, ReductionStep, TauTwoReduction
from icbound.models.matrix import FqMatrix
from icbound.services import linalg
from icbound.services.instance_service import digraph_instance, embed_iccsi
from icbound.services.minrank_service import fitting_matrix_from_code, multicast_matrix

logger = logging.getLogger(__name__)


# ---- structure ----


def out_degree(graph: Digraph, u: int) -> int:
    return sum(1 for a, _ in graph.arcs if a == u)


def is_symmetric(graph: Digraph) -> bool:
    """True iff every arc is reciprocated (an undirected graph)"""
    return all((v, u) in graph.arcs for u, v in graph.arcs)


def is_complete(graph: Digraph) -> bool:
    return len(graph.arcs) == graph.n * (graph.n - 1)


def relabel_map(n: int, removed: Iterable[int]) -> Dict[int, int]:
    """Order-preserving relabelling of the vertices that survive removal"""
    removed = set(removed)
    kept = [v for v in range(1, n + 1) if v not in removed]
    return {old: new for new, old in enumerate(kept, start=1)}


def induced_subgraph(graph: Digraph, keep: Iterable[int]) -> Tuple[Digraph, Dict[int, int]]:
    """Subgraph on `keep`, relabelled to 1..k in order; returns (graph, old -> new)"""
    keep = set(keep)
    mapping = relabel_map(graph.n, set(graph.vertices) - keep)
    arcs = frozenset(
        (mapping[u], mapping[v]) for u, v in graph.arcs if u in keep and v in keep
    )
    return Digraph(len(mapping), arcs), mapping


def delete_vertex(graph: Digraph, v: int) -> Digraph:
    return induced_subgraph(graph, set(graph.vertices) - {v})[0]


def has_circuit(graph: Digraph, removed: FrozenSet[int] = frozenset()) -> bool:
    """Digraph sense: a 2-circuit u <-> v counts"""
    view = graph.to_networkx()
    view.remove_nodes_from(removed)
    return not nx.is_directed_acyclic_graph(view)


def is_acyclic(graph: Digraph) -> bool:
    """
    No circuit; for undirected graphs (symmetric digraphs) only circuits on at least three
    vertices count, so the test becomes "is a forest"
    """
    if is_symmetric(graph):
        return nx.is_forest(graph.to_networkx().to_undirected()) if graph.n else True
    return not has_circuit(graph)


# ---- circuit parameters ----


def _check_limit(graph: Digraph, limit: int, name: str) -> None:
    if graph.n > limit:
        raise TooLarge(f"{name} is computed exactly only up to {limit} vertices, got {graph.n}")


def feedback_vertex_set(graph: Digraph, limit: Optional[int] = None) -> List[int]:
    """
    A smallest vertex set whose removal leaves no circuit (first in size-then-lex order)

    Raises:
        TooLarge: If n exceeds the exact-search limit
    """
    _check_limit(graph, limit or settings.TAU_LIMIT, "tau")
    for size in range(graph.n + 1):
        for removed in combinations(graph.vertices, size):
            if not has_circuit(graph, frozenset(removed)):
                return list(removed)
    return list(graph.vertices)  # pragma: no cover


def tau(graph: Digraph, limit: Optional[int] = None) -> int:
    return len(feedback_vertex_set(graph, limit))


def alpha(graph: Digraph, limit: Optional[int] = None) -> int:
    """Largest induced acyclic subgraph: n - tau"""
    return graph.n - tau(graph, limit)


def _chordless_circuits(graph: Digraph) -> List[Tuple[int, ...]]:
    """Induced circuits; every circuit contains one on a subset of its vertices"""
    circuits = {tuple(c) for c in nx.chordless_cycles(graph.to_networkx()) if len(c) > 2}
    circuits |= {(u, v) for u, v in graph.arcs if u < v and (v, u) in graph.arcs}
    return sorted(circuits, key=lambda c: (len(c), sorted(c)))


def circuit_packing(graph: Digraph, limit: Optional[int] = None) -> List[Tuple[int, ...]]:
    """
    A maximum set of vertex-disjoint circuits, each in traversal order

    Raises:
        TooLarge: If n exceeds the exact-search limit
    """
    _check_limit(graph, limit or settings.NU_LIMIT, "nu")
    circuits = _chordless_circuits(graph)
    memo: Dict[FrozenSet[int], List[Tuple[int, ...]]] = {}

    def best(remaining: FrozenSet[int]) -> List[Tuple[int, ...]]:
        if remaining in memo:
            return memo[remaining]
        inside = [c for c in circuits if remaining.issuperset(c)]
        if not inside:
            memo[remaining] = []
            return []
        v = min(v for c in inside for v in c)
        result = best(remaining - {v})
        for c in inside:
            if v in c:
                option = [c] + best(remaining - set(c))
                if len(option) > len(result):
                    result = option
        memo[remaining] = result
        return result

    return best(frozenset(graph.vertices))


def nu(graph: Digraph, limit: Optional[int] = None) -> int:
    return len(circuit_packing(graph, limit))


def clique_partition(graph: Digraph, limit: Optional[int] = None) -> List[List[int]]:
    """
    A minimum partition into cliques (vertex sets with arcs both ways between every pair)

    Raises:
        TooLarge: If n exceeds the exact-search limit
    """
    _check_limit(graph, limit or settings.CC_LIMIT, "cc")
    mutual = nx.Graph()
    mutual.add_nodes_from(graph.vertices)
    mutual.add_edges_from((u, v) for u, v in graph.arcs if u < v and (v, u) in graph.arcs)
    memo: Dict[FrozenSet[int], List[List[int]]] = {}

    def cover(remaining: FrozenSet[int]) -> List[List[int]]:
        if not remaining:
            return []
        if remaining in memo:
            return memo[remaining]
        v = min(remaining)
        result: Optional[List[List[int]]] = None
        for clique in nx.find_cliques(mutual.subgraph(remaining)):
            if v not in clique:
                continue
            option = [sorted(clique)] + cover(remaining - set(clique))
            if result is None or len(option) < len(result):
                result = option
        memo[remaining] = result or [[v]]
        return memo[remaining]

    return cover(frozenset(graph.vertices))


def clique_cover_number(graph: Digraph, limit: Optional[int] = None) -> int:
    return len(clique_partition(graph, limit))


# ---- contraction ----


def can_contract(graph: Digraph, i1: int, i2: int) -> bool:
    return graph.has_arc(i1, i2) and not graph.has_arc(i2, i1) and out_degree(graph, i1) == 1


def contract_arc(graph: Digraph, i1: int, i2: int) -> Digraph:
    """
    Contract (i1, i2): in-arcs of i1 are redirected to i2 and i1 is removed

    Vertices above i1 move down by one.

    Raises:
        PreconditionViolated: If (i1, i2) is missing, reciprocated, or i1 has other out-arcs
    """
    if not graph.has_arc(i1, i2):
        raise PreconditionViolated(f"({i1},{i2}) is not an arc")
    if graph.has_arc(i2, i1):
        raise PreconditionViolated(f"({i2},{i1}) is also an arc")
    if out_degree(graph, i1) != 1:
        raise PreconditionViolated(f"Vertex {i1} has out-degree {out_degree(graph, i1)}, expected 1")
    predecessors = {j for j, v in graph.arcs if v == i1}
    arcs = (set(graph.arcs) | {(j, i2) for j in predecessors}) - {(i1, i2)} - {(j, i1) for j in predecessors}
    mapping = relabel_map(graph.n, {i1})
    return Digraph(graph.n - 1, frozenset((mapping[u], mapping[v]) for u, v in arcs))


def project_fitting_matrix(M: FqMatrix, graph: Digraph, i1: int, i2: int) -> FqMatrix:
    """
    Fitting matrix for the contraction along (i1, i2) from one for the original graph

    Every other row loses its multiple of row i1, which clears column i1; dropping row and
    column i1 then lowers the rank by exactly one.
    """
    if not can_contract(graph, i1, i2):
        raise PreconditionViolated(f"({i1},{i2}) cannot be contracted")
    field = M.field
    data = M.data
    pivot = data[i1 - 1]
    rows = []
    for k in range(graph.n):
        if k == i1 - 1:
            continue
        factor = int(data[k, i1 - 1])
        row = field.sub(data[k], field.mul(factor, pivot)) if factor else data[k]
        rows.append(np.delete(row, i1 - 1))
    return FqMatrix(field, np.array(rows, dtype=np.int64).reshape(graph.n - 1, graph.n - 1))


def lift_fitting_matrix(M: FqMatrix, graph: Digraph, i1: int, i2: int) -> FqMatrix:
    """
    Fitting matrix for `graph` from one for its contraction along (i1, i2)

    Row i1 is e_i1 - e_i2. Other rows copy the contracted row; the entry of the merged
    column goes to column i1 for in-neighbours of i1 and to column i2 otherwise.
    """
    if not can_contract(graph, i1, i2):
        raise PreconditionViolated(f"({i1},{i2}) cannot be contracted")
    field, n = M.field, graph.n
    mapping = relabel_map(n, {i1})
    predecessors = set(graph.in_neighbors(i1))
    lifted = np.zeros((n, n), dtype=np.int64)
    lifted[i1 - 1, i1 - 1] = 1
    lifted[i1 - 1, i2 - 1] = field.neg(1)
    for old, new in mapping.items():
        source = M.data[new - 1]
        for old_col, new_col in mapping.items():
            lifted[old - 1, old_col - 1] = source[new_col - 1]
        if old in predecessors:
            lifted[old - 1, i1 - 1] = lifted[old - 1, i2 - 1]
            lifted[old - 1, i2 - 1] = 0
    return FqMatrix(field, lifted)


def lift_deleted_sink(M: FqMatrix, graph: Digraph, v: int) -> FqMatrix:
    """Re-insert an out-degree-0 vertex: row e_v, zero column elsewhere"""
    field, n = M.field, graph.n
    mapping = relabel_map(n, {v})
    lifted = np.zeros((n, n), dtype=np.int64)
    lifted[v - 1, v - 1] = 1
    for old, new in mapping.items():
        for old_col, new_col in mapping.items():
            lifted[old - 1, old_col - 1] = M.data[new - 1, new_col - 1]
    return FqMatrix(field, lifted)


# ---- constructive certificates ----


def circuit_packing_matrix(
    graph: Digraph, field: FieldSpec, circuits: Optional[List[Tuple[int, ...]]] = None
) -> FqMatrix:
    """
    Fitting matrix of rank n - #circuits: rows along each packed circuit are e_c - e_next(c)

    Args:
        graph: Digraph
        field: Field
        circuits: Vertex-disjoint circuits (default: a maximum packing)
    """
    if circuits is None:
        circuits = circuit_packing(graph)
    data = np.eye(graph.n, dtype=np.int64)
    minus_one = field.neg(1)
    for circuit in circuits:
        for k, c in enumerate(circuit):
            data[c - 1, circuit[(k + 1) % len(circuit)] - 1] = minus_one
    return FqMatrix(field, data)


def _next_reduction(graph: Digraph) -> Optional[ReductionStep]:
    for v in graph.vertices:
        if out_degree(graph, v) == 0:
            return ReductionStep("delete", graph, v)
    for v in graph.vertices:
        targets = graph.out_neighbors(v)
        if len(targets) == 1 and can_contract(graph, v, targets[0]):
            return ReductionStep("contract", graph, v, targets[0])
    return None


def reduce_out_degree(graph: Digraph) -> Tuple[List[ReductionStep], Digraph]:
    """
    Delete sinks and contract out-degree-1 arcs (lowest vertex first) until neither applies

    Each step lowers min-rank by exactly one.
    """
    steps: List[ReductionStep] = []
    current = graph
    while True:
        step = _next_reduction(current)
        if step is None:
            return steps, current
        steps.append(step)
        if step.kind == "delete":
            current = delete_vertex(current, step.i1)
        else:
            current = contract_arc(current, step.i1, step.i2)


def _lift_through(steps: List[ReductionStep], M: FqMatrix) -> FqMatrix:
    for step in reversed(steps):
        if step.kind == "delete":
            M = lift_deleted_sink(M, step.graph, step.i1)
        else:
            M = lift_fitting_matrix(M, step.graph, step.i1, step.i2)
    return M


def tau_two_reduction(graph: Digraph, field: FieldSpec) -> TauTwoReduction:
    """
    Rank n - 2 fitting matrix for a digraph with tau = 2, with the trace of its construction

    Two disjoint circuits give the circuit-packing matrix directly. Otherwise sinks are
    deleted and out-degree-1 arcs contracted until every vertex has out-degree at least 2;
    a multicast code on the reduced graph becomes a fitting matrix there and is lifted back
    through the steps.

    Raises:
        PreconditionViolated: If tau != 2
        FieldTooSmall: If q <= n
    """
    if field.q <= graph.n:
        raise FieldTooSmall(f"The construction needs q > n = {graph.n}, {field} has {field.q}")
    feedback = tau(graph)
    if feedback != 2:
        raise PreconditionViolated(f"Feedback vertex number is {feedback}, expected 2")

    packing = circuit_packing(graph)
    if len(packing) >= 2:
        M = circuit_packing_matrix(graph, field, packing[:2])
        return TauTwoReduction((), graph, M, M, via_packing=True)

    steps, reduced = reduce_out_degree(graph)
    logger.debug(f"Reduced {graph.n} vertices to {reduced.n} in {len(steps)} steps")
    code = multicast_matrix(embed_iccsi(digraph_instance(reduced), field))
    reduced_matrix = fitting_matrix_from_code(code, reduced)
    certificate = _lift_through(steps, reduced_matrix)
    logger.info(f"tau = 2 certificate of rank {linalg.rank(certificate)} for n = {graph.n}")
    return TauTwoReduction(tuple(steps), reduced, reduced_matrix, certificate)


def reduce_tau2(graph: Digraph, field: FieldSpec) -> FqMatrix:
    return tau_two_reduction(graph, field).certificate


def decide_minrank_n_minus_1(graph: Digraph, field: FieldSpec) -> MinrankDecision:
    """
    Decide minrk_q(G) = n - 1 (q > n): it holds exactly when one vertex meets every circuit

    Yes comes with a rank n - 1 fitting matrix (one circuit closed by e_c - e_next(c) rows);
    no with tau = 2 comes with the rank n - 2 construction.

    Raises:
        FieldTooSmall: If q <= n
    """
    n = graph.n
    if field.q <= n:
        raise FieldTooSmall(f"The decision needs q > n = {n}, {field} has {field.q}")
    if not has_circuit(graph):
        return MinrankDecision(False, 0, "acyclic: min-rank equals n")
    for v in graph.vertices:
        if not has_circuit(graph, frozenset({v})):
            circuit = tuple(u for u, _ in nx.find_cycle(graph.to_networkx()))
            certificate = circuit_packing_matrix(graph, field, [circuit])
            return MinrankDecision(True, 1, f"removing vertex {v} leaves no circuit", certificate)
    if n > settings.TAU_LIMIT:
        return MinrankDecision(False, None, "no single vertex meets every circuit: tau >= 2")
    feedback = tau(graph)
    if feedback == 2:
        return MinrankDecision(False, 2, "tau = 2: min-rank equals n - 2", reduce_tau2(graph, field))
    return MinrankDecision(False, feedback, f"tau = {feedback}: min-rank at most n - 2")


def classify_near_extreme(graph: Digraph, field: FieldSpec) -> Optional[NearExtreme]:
    """
    Min-rank from the near-extreme table when one of its rows applies, else None

    Complete: 1. Acyclic: n. Undirected with a bipartite complement: 2. For q > n,
    tau = 1 gives n - 1 and tau = 2 gives n - 2.
    """
    n = graph.n
    if n and is_complete(graph):
        return NearExtreme(1, "complete")
    if not has_circuit(graph):
        return NearExtreme(n, "acyclic")
    if is_symmetric(graph):
        complement = nx.complement(graph.to_networkx().to_undirected())
        if nx.is_bipartite(complement):
            return NearExtreme(2, "undirected with bipartite complement")
    if field.q > n and n <= settings.TAU_LIMIT:
        feedback = tau(graph)
        if feedback in (1, 2):
            return NearExtreme(n - feedback, f"tau = {feedback} and q > n")
    return None
