"""
Min-rank Service
Exact min-rank and kappa by branch-and-bound over fitting matrices, rank distributions
and constructive multicast codes
"""

import itertools
import logging
from collections import Counter
from typing import List, Optional, Sequence, Union

import numpy as np

from icbound.config import settings
from icbound.core.exceptions import BudgetExceeded, FieldTooSmall, NotDecodable
from icbound.models.field import FieldSpec
from icbound.models.graph import Digraph, Hypergraph
from icbound.models.instance import IccsiInstance
from icbound.models.matrix import FqMatrix, Subspace
from icbound.models.minrank import FittingPattern, KappaResult, MinrankResult, RankDistribution
from icbound.services import linalg
from icbound.services.instance_service import to_sender_coordinates
from icbound.services.linalg import EchelonBasis
from icbound.services.mds_service import rs_generator

logger = logging.getLogger(__name__)

Graph = Union[Digraph, Hypergraph]


# ---- fitting patterns ----


def fitting_pattern(graph: Graph) -> FittingPattern:
    """
    Pattern of the matrices fitting a digraph or hypergraph

    Row i belongs to hyperarc i (vertex i of a digraph): 1 at the tail, free on the head,
    0 elsewhere.
    """
    hypergraph = Hypergraph.from_digraph(graph) if isinstance(graph, Digraph) else graph
    m, n = hypergraph.m, hypergraph.n
    ones, free = set(), []
    for i, arc in enumerate(hypergraph.hyperarcs):
        ones.add((i, arc.tail - 1))
        free.extend((i, h - 1) for h in sorted(arc.head))
    zeros = {(i, j) for i in range(m) for j in range(n)} - ones - set(free)
    return FittingPattern(m, n, frozenset(ones), frozenset(zeros), tuple(free))


def fits(M: FqMatrix, pattern: FittingPattern) -> bool:
    """True iff M has the pattern's shape, ones and zeros"""
    if M.shape != (pattern.m, pattern.n):
        return False
    return all(M.data[i, j] == 1 for i, j in pattern.fixed_one) and all(
        M.data[i, j] == 0 for i, j in pattern.fixed_zero
    )


def _pattern_candidates(pattern: FittingPattern, field: FieldSpec, budget: int) -> List[np.ndarray]:
    """Per row, every fitting row vector in lexicographic order of its free entries"""
    q = field.q
    rows = []
    for i in range(pattern.m):
        cols = pattern.free_in_row(i)
        if q ** len(cols) > budget:
            raise BudgetExceeded(f"Row {i + 1} alone has {q}^{len(cols)} fitting choices")
        base = np.zeros(pattern.n, dtype=np.int64)
        for r, c in pattern.fixed_one:
            if r == i:
                base[c] = 1
        assignments = np.array(list(itertools.product(range(q), repeat=len(cols))), dtype=np.int64)
        candidates = np.tile(base, (len(assignments), 1))
        if cols:
            candidates[:, list(cols)] = assignments
        rows.append(candidates)
    return rows


def _coset_candidates(field: FieldSpec, offset: np.ndarray, space: Subspace, budget: int) -> np.ndarray:
    """offset + c . basis(space) for every coefficient vector c, in lexicographic order of c"""
    q, k = field.q, space.dim
    if q**k > budget:
        raise BudgetExceeded(f"Coset of a {k}-dimensional space over {field} exceeds the budget")
    if k == 0:
        return offset[None, :].copy()
    coefficients = np.array(list(itertools.product(range(q), repeat=k)), dtype=np.int64)
    combos = field.matmul(coefficients, space.basis.data)
    return field.add(offset[None, :], combos)


# ---- branch-and-bound over rows ----


class RowChoiceSearch:
    """
    Minimum rank of a matrix whose row i is chosen from candidates[i]

    Depth-first over rows with candidates in the given order; an incremental echelon basis
    gives the exact rank of every prefix, and a prefix is cut when that rank reaches the
    incumbent. The incumbent is replaced only on strict improvement, so the returned choice
    is the first optimal one in lexicographic order.
    """

    def __init__(self, field: FieldSpec, n: int, candidates: Sequence[np.ndarray], budget: int):
        self.field = field
        self.n = n
        self.candidates = candidates
        self.budget = budget
        self.nodes = 0
        self.best = len(candidates) + 1
        self.best_choice: Optional[List[int]] = None
        self.floor = 1 if candidates else 0

    def run(self) -> "RowChoiceSearch":
        self._visit(0, EchelonBasis(self.field, self.n), [])
        return self

    def _visit(self, i: int, basis: EchelonBasis, choice: List[int]) -> None:
        if basis.rank >= self.best:
            return
        if i == len(self.candidates):
            self.best = basis.rank
            self.best_choice = list(choice)
            logger.debug(f"Incumbent rank {self.best} after {self.nodes} nodes")
            return
        for index, row in enumerate(self.candidates[i]):
            self.nodes += 1
            if self.nodes > self.budget:
                raise BudgetExceeded(f"Search exceeded {self.budget} nodes (incumbent {self.best})")
            choice.append(index)
            self._visit(i + 1, basis.extend(row), choice)
            choice.pop()
            if self.best <= self.floor:
                return

    def matrix(self) -> FqMatrix:
        rows = [self.candidates[i][k] for i, k in enumerate(self.best_choice or [])]
        return FqMatrix(self.field, np.array(rows, dtype=np.int64).reshape(len(rows), self.n))


def minrank(graph: Graph, field: FieldSpec, budget: Optional[int] = None) -> MinrankResult:
    """
    Exact min-rank of a digraph or hypergraph over `field`

    Args:
        graph: Side-information structure
        field: Field of the fitting matrices
        budget: Search node budget (default: settings.BUDGET)

    Returns:
        Value, the lexicographically first optimal fitting matrix, and nodes visited

    Raises:
        BudgetExceeded: If the search needs more nodes than the budget
    """
    budget = budget or settings.BUDGET
    pattern = fitting_pattern(graph)
    candidates = _pattern_candidates(pattern, field, budget)
    search = RowChoiceSearch(field, pattern.n, candidates, budget).run()
    logger.info(f"minrk over {field} = {search.best} ({search.nodes} nodes)")
    return MinrankResult(search.best, search.matrix(), search.nodes)


def rank_distribution(graph: Graph, field: FieldSpec, budget: Optional[int] = None) -> RankDistribution:
    """
    Histogram of rank over every fitting matrix

    Raises:
        BudgetExceeded: If q^|free| exceeds the budget
    """
    budget = budget or settings.BUDGET
    pattern = fitting_pattern(graph)
    total = field.q ** len(pattern.free)
    if total > budget:
        raise BudgetExceeded(f"{total} fitting matrices exceed the budget of {budget}")
    candidates = _pattern_candidates(pattern, field, budget)
    counts: Counter = Counter()

    def visit(i: int, basis: EchelonBasis) -> None:
        if i == len(candidates) - 1:
            residues = np.array(candidates[i], copy=True)
            for row, pc in zip(basis.rows, basis.pivots):
                coeffs = residues[:, pc].copy()
                mask = coeffs != 0
                if mask.any():
                    residues[mask] = field.sub(residues[mask], field.mul(coeffs[mask][:, None], row[None, :]))
            independent = int(residues.any(axis=1).sum())
            counts[basis.rank + 1] += independent
            counts[basis.rank] += len(residues) - independent
            return
        for row in candidates[i]:
            visit(i + 1, basis.extend(row))

    if candidates:
        visit(0, EchelonBasis(field, pattern.n))
    else:
        counts[0] = 1
    return {r: c for r, c in sorted(counts.items()) if c}


# ---- coded side information ----


def kappa(instance: IccsiInstance, budget: Optional[int] = None) -> KappaResult:
    """
    Optimal scalar linear length of an ICCSI instance: min rank(A + R), A_i in X^(i) and X^(S)

    Args:
        instance: Coded instance
        budget: Search node budget (default: settings.BUDGET)

    Returns:
        Value, the first optimal A, the encoder L (sender coordinates) and its rows in F_q^n

    Raises:
        BudgetExceeded: If the search needs more nodes than the budget
    """
    budget = budget or settings.BUDGET
    field, n = instance.field, instance.n
    candidates = [
        _coset_candidates(field, np.asarray(instance.R.row(i)), space, budget)
        for i, space in enumerate(instance.known_sender_spaces)
    ]
    search = RowChoiceSearch(field, n, candidates, budget).run()
    total = search.matrix()
    A = total - instance.R
    code_rows = linalg.rref(total)
    encoder = to_sender_coordinates(instance, code_rows)
    logger.info(f"kappa over {field} = {search.best} ({search.nodes} nodes)")
    return KappaResult(search.best, A, encoder, code_rows, search.nodes)


# ---- multicast ----


def multicast_length(instance: IccsiInstance) -> int:
    """max_i (dim S - dim(S and X^(i))): max(n - d_i) when V_S = I_n"""
    s = instance.d_S
    return max((s - k.dim for k in instance.known_sender_spaces), default=0)


def _sender_coordinates(sender: Subspace, space: Subspace) -> np.ndarray:
    """Basis of a subspace of the sender space in coordinates of the sender's RREF basis"""
    return space.basis.data[:, list(sender.pivots)].reshape(space.dim, sender.dim)


def _completes(field: FieldSpec, C: np.ndarray, known: List[np.ndarray], s: int) -> bool:
    return all(
        linalg.rank(FqMatrix(field, np.vstack([C, K]).reshape(-1, s))) == s for K in known
    )


def _exhaustive_complement(field: FieldSpec, known: List[np.ndarray], s: int, N: int) -> Optional[np.ndarray]:
    """First N x s matrix (rows in lexicographic order) completing every known space"""
    vectors = np.array(list(itertools.product(range(field.q), repeat=s)), dtype=np.int64)[1:]
    starts = [EchelonBasis.from_rows(field, s, K) for K in known]

    def visit(rows: List[np.ndarray], bases: List[EchelonBasis], first: int) -> Optional[List[np.ndarray]]:
        remaining = N - len(rows)
        if any(b.rank + remaining < s for b in bases):
            return None
        if remaining == 0:
            return rows
        for k in range(first, len(vectors)):
            v = vectors[k]
            found = visit(rows + [v], [b.extend(v) for b in bases], k + 1)
            if found is not None:
                return found
        return None

    found = visit([], starts, 0)
    return None if found is None else np.array(found, dtype=np.int64).reshape(N, s)


def multicast_matrix(
    instance: IccsiInstance,
    strict: bool = False,
    seed: Optional[int] = None,
    attempts: Optional[int] = None,
) -> FqMatrix:
    """
    Multicast code of length N = max_i (dim S - dim(S and X^(i))) decodable by every receiver

    The rows L satisfy <L> + (S and X^(i)) = S for all i. An MDS generator in coordinates of
    the sender's RREF basis is tried first; when it fails (side spaces that are not
    coordinate subspaces there) a lexicographic exhaustive search is run if small enough,
    then a seeded random search.

    Args:
        instance: Coded instance
        strict: Require q > number of distinct side spaces
        seed: Random search seed (default: settings.DEFAULT_SEED)
        attempts: Random search attempts (default: settings.MULTICAST_ATTEMPTS)

    Returns:
        N x n matrix of transmitted rows

    Raises:
        FieldTooSmall: If strict and q is too small, or no code was found
    """
    field = instance.field
    if strict and field.q <= instance.distinct_side_count:
        raise FieldTooSmall(
            f"Multicast needs q > {instance.distinct_side_count} distinct side spaces, {field} has {field.q}"
        )
    sender = instance.sender_space
    s, N = sender.dim, multicast_length(instance)
    if N == 0:
        return FqMatrix.zeros(field, 0, instance.n)
    known = [_sender_coordinates(sender, k) for k in instance.known_sender_spaces]

    C: Optional[np.ndarray] = None
    try:
        G = rs_generator(s, N, field, check=False)
        if _completes(field, G.data, known, s):
            C = G.data
            logger.debug(f"MDS [{s},{N}] generator serves all {instance.m} receivers")
    except FieldTooSmall:
        pass

    if C is None and field.q ** (N * s) <= settings.MULTICAST_EXHAUSTIVE_LIMIT:
        C = _exhaustive_complement(field, known, s, N)
        if C is None:
            raise FieldTooSmall(f"No multicast code of length {N} exists over {field}")

    if C is None:
        rng = np.random.default_rng(settings.DEFAULT_SEED if seed is None else seed)
        for _ in range(attempts or settings.MULTICAST_ATTEMPTS):
            trial = rng.integers(0, field.q, size=(N, s))
            if _completes(field, trial, known, s):
                C = trial
                break
        if C is None:
            raise FieldTooSmall(f"Random search found no multicast code of length {N} over {field}")

    return FqMatrix(field, C) @ sender.basis


# ---- codes to fitting matrices ----


def fitting_matrix_from_code(L: FqMatrix, graph: Digraph) -> FqMatrix:
    """
    Fitting matrix with every row in <L> for a code L valid on a digraph instance

    Row i is e_i + u with Supp(u) in N+(i); it exists because receiver i decodes.

    Args:
        L: Transmitted rows (n columns)
        graph: Side-information digraph

    Returns:
        n x n matrix fitting `graph`, rank <= rank(L)

    Raises:
        NotDecodable: If some vertex cannot decode
    """
    field, n = L.field, graph.n
    rows = []
    for i in graph.vertices:
        outside = [c for c in range(n) if c + 1 not in graph.out_neighbors(i)]
        target = np.zeros(len(outside), dtype=np.int64)
        target[outside.index(i - 1)] = 1
        x = linalg.solve_left(L.select_cols(outside), target) if L.rows else None
        if x is None:
            raise NotDecodable(f"Vertex {i} cannot decode from the given code")
        rows.append(field.matmul(x[None, :], L.data)[0])
    return FqMatrix(field, np.array(rows, dtype=np.int64).reshape(n, n))
