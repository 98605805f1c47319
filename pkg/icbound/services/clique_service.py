"""
Clique Service
Generalized cliques, multicast groups and the integer / linear programs bounding the
optimal broadcast rate
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple, Union

import networkx as nx
import numpy as np

from icbound.config import settings
from icbound.core.exceptions import BudgetExceeded, Infeasible, PreconditionViolated
from icbound.models.bounds import (
    BoundReport,
    BoundValue,
    CliqueOption,
    CoverEntry,
    GeneralizedClique,
    GroupEntry,
)
from icbound.models.field import FieldSpec
from icbound.models.instance import IccsiInstance, IcsiInstance
from icbound.models.program import LinearProgram, LPSolution, Relation
from icbound.services import linalg
from icbound.services.finite_field import field_make
from icbound.services.instance_service import as_iccsi
from icbound.services.lp_solver import ilp_solve, lp_solve
from icbound.services.minrank_service import kappa
from icbound.utils.constants import FRACTIONAL_PARAMETERS, PARAMETER_ORDER
from icbound.utils.helpers import set_partitions

logger = logging.getLogger(__name__)

Instance = Union[IcsiInstance, IccsiInstance]
Mask = int


def _coded(instance: Instance, field: Optional[FieldSpec] = None) -> IccsiInstance:
    if isinstance(instance, IcsiInstance):
        return as_iccsi(instance, field or field_make(2))
    return instance


def _bits(members: Iterable[int]) -> Mask:
    mask = 0
    for i in members:
        mask |= 1 << i
    return mask


def _members(mask: Mask) -> FrozenSet[int]:
    return frozenset(i for i in range(mask.bit_length()) if mask >> i & 1)


def _submasks(mask: Mask):
    sub = mask
    while sub:
        yield sub
        sub = (sub - 1) & mask


def _minimal(sets: Iterable[Mask]) -> List[Mask]:
    """Inclusion-minimal masks, ascending"""
    kept: List[Mask] = []
    for s in sorted(set(sets), key=lambda x: (bin(x).count("1"), x)):
        if not any(k & s == k for k in kept):
            kept.append(s)
    return sorted(kept)


# ---- coding vectors and cliques ----


def _normalized_sender_vectors(instance: IccsiInstance, limit: int) -> np.ndarray:
    """Nonzero vectors of the sender space with first nonzero coordinate 1, lexicographic"""
    field, basis = instance.field, instance.sender_space.basis
    d, q = basis.rows, field.q
    if q**d > limit:
        raise BudgetExceeded(f"Sender space has {q}^{d} vectors, above the limit {limit}")
    index = np.arange(q**d, dtype=np.int64)
    coeffs = (index[:, None] // (q ** np.arange(d - 1, -1, -1, dtype=np.int64))[None, :]) % q
    nonzero = coeffs.any(axis=1)
    coeffs = coeffs[nonzero]
    lead = coeffs[np.arange(len(coeffs)), (coeffs != 0).argmax(axis=1)]
    coeffs = coeffs[lead == 1]
    vectors = field.matmul(coeffs, basis.data)
    order = np.lexsort(vectors.T[::-1])
    return vectors[order]


@dataclass(frozen=True)
class _VectorTable:
    """Normalized sender vectors with the receivers each one serves and leaves unaware"""

    vectors: np.ndarray
    serves: Tuple[Mask, ...]
    unknown: Tuple[Mask, ...]


def _request_side(instance: IccsiInstance, i: int):
    """X^(i) + <R_i>"""
    request = linalg.span(instance.field, instance.n, [instance.R.row(i)])
    return linalg.subspace_sum(instance.side_spaces[i], request)


def _receiver_masks(instance: IccsiInstance, vectors: np.ndarray) -> Tuple[List[Mask], List[Mask]]:
    serves = np.zeros(len(vectors), dtype=np.int64)
    unknown = np.zeros(len(vectors), dtype=np.int64)
    for i, side in enumerate(instance.side_spaces):
        request_side = _request_side(instance, i)
        known = linalg.contains_many(side, vectors)
        usable = linalg.contains_many(request_side, vectors) & ~known
        unknown[~known] |= 1 << i
        serves[usable] |= 1 << i
    return [int(s) for s in serves], [int(u) for u in unknown]


@lru_cache(maxsize=16)
def _vector_table(instance: IccsiInstance, limit: int) -> _VectorTable:
    vectors = _normalized_sender_vectors(instance, limit)
    serves, unknown = _receiver_masks(instance, vectors)
    return _VectorTable(vectors, tuple(serves), tuple(unknown))


def _check_receivers(instance: IccsiInstance) -> None:
    if instance.m > settings.CLIQUE_MAX_RECEIVERS:
        raise BudgetExceeded(
            f"{instance.m} receivers; clique programs are limited to {settings.CLIQUE_MAX_RECEIVERS}"
        )


@lru_cache(maxsize=16)
def _clique_options(instance: IccsiInstance, limit: int) -> Dict[Mask, Tuple[Tuple[Mask, int], ...]]:
    """
    Every clique (as a mask) with its minimal unknown sets and a representative vector

    A clique is any nonempty set of receivers served by one vector; subsets of served sets
    inherit the vector, so the family is down-closed.
    """
    table = _vector_table(instance, limit)
    first: Dict[Tuple[Mask, Mask], int] = {}
    for index, (serves, unknown) in enumerate(zip(table.serves, table.unknown)):
        if serves:
            first.setdefault((serves, unknown), index)

    candidates: Dict[Mask, Dict[Mask, int]] = {}
    for (serves, unknown), index in first.items():
        for sub in _submasks(serves):
            per_clique = candidates.setdefault(sub, {})
            if unknown not in per_clique or index < per_clique[unknown]:
                per_clique[unknown] = index

    options = {}
    for clique, per_clique in candidates.items():
        options[clique] = tuple((u, per_clique[u]) for u in _minimal(per_clique))
    logger.debug(f"{len(options)} cliques from {len(table.vectors)} normalized vectors")
    return options


def _clique_key(mask: Mask) -> Tuple[int, List[int]]:
    return (bin(mask).count("1"), sorted(_members(mask)))


def enumerate_cliques(
    instance: Instance,
    field: Optional[FieldSpec] = None,
    maximal_only: bool = False,
    limit: Optional[int] = None,
) -> List[GeneralizedClique]:
    """
    Generalized cliques of an instance

    Args:
        instance: Instance (ICSI instances are embedded over `field`, default GF(2))
        field: Field for ICSI instances
        maximal_only: Only inclusion-maximal cliques and singletons
        limit: Sender-space vector limit (default: CLIQUE_VECTOR_LIMIT)

    Returns:
        Cliques ordered by size then members, each with its coding-vector options

    Raises:
        BudgetExceeded: If there are too many receivers or sender vectors
    """
    coded = _coded(instance, field)
    _check_receivers(coded)
    limit = settings.CLIQUE_VECTOR_LIMIT if limit is None else limit
    options = _clique_options(coded, limit)
    vectors = _vector_table(coded, limit).vectors

    masks = sorted(options, key=_clique_key)
    if maximal_only:
        masks = [
            c for c in masks
            if bin(c).count("1") == 1 or not any(o != c and o & c == c for o in options)
        ]
    return [
        GeneralizedClique(
            members=_members(c),
            options=tuple(
                CliqueOption(tuple(int(x) for x in vectors[index]), _members(u))
                for u, index in options[c]
            ),
        )
        for c in masks
    ]


def clique_options(
    instance: Instance, field: Optional[FieldSpec] = None
) -> Dict[FrozenSet[int], Tuple[CliqueOption, ...]]:
    """Per clique, one normalized coding vector for each inclusion-minimal unknown set"""
    return {c.members: c.options for c in enumerate_cliques(instance, field)}


def coding_vectors(
    instance: Instance, members: Iterable[int], field: Optional[FieldSpec] = None
) -> List[Tuple[int, ...]]:
    """Every normalized v in the sender space with R_i in <v> + X^(i) for all members"""
    coded = _coded(instance, field)
    table = _vector_table(coded, settings.CLIQUE_VECTOR_LIMIT)
    need = _bits(members)
    return [
        tuple(int(x) for x in table.vectors[k])
        for k, serves in enumerate(table.serves)
        if serves & need == need
    ]


def in_coding_set(instance: IccsiInstance, members: Iterable[int], v: Sequence[int]) -> bool:
    """v lies in R(C) for the given members"""
    if not linalg.contains(instance.sender_space, v):
        return False
    for i in members:
        side = instance.side_spaces[i]
        if linalg.contains(side, v):
            return False
        request_side = _request_side(instance, i)
        if not linalg.contains(request_side, v):
            return False
    return True


def local_cover_k(
    instance: Instance,
    cover: Sequence[Iterable[int]],
    vectors: Sequence[Sequence[int]],
    field: Optional[FieldSpec] = None,
) -> int:
    """
    max_j #{C in cover : v_C not in X^(j)}

    Args:
        instance: Instance
        cover: Cliques (0-based receivers)
        vectors: One coding vector per clique
        field: Field for ICSI instances
    """
    coded = _coded(instance, field)
    if len(cover) != len(vectors):
        raise PreconditionViolated("One coding vector per clique is required")
    data = np.asarray(vectors, dtype=np.int64).reshape(len(vectors), coded.n)
    counts = [
        int((~linalg.contains_many(side, data)).sum()) if len(data) else 0
        for side in coded.side_spaces
    ]
    return max(counts, default=0)


# ---- weak cliques ----


def _weak_pair(instance: IccsiInstance, i: int, j: int) -> bool:
    """R_j known to i or the same request line"""
    if linalg.contains(instance.side_spaces[i], instance.R.row(j)):
        return True
    return linalg.span(instance.field, instance.n, [instance.R.row(i)]) == linalg.span(
        instance.field, instance.n, [instance.R.row(j)]
    )


def is_weak_clique(
    instance: Instance, members: Iterable[int], field: Optional[FieldSpec] = None
) -> bool:
    coded = _coded(instance, field)
    members = sorted(set(members))
    return bool(members) and all(
        _weak_pair(coded, i, j) for i in members for j in members if i != j
    )


def weak_vector(
    instance: Instance, members: Iterable[int], field: Optional[FieldSpec] = None
) -> Tuple[int, ...]:
    """Sum of the distinct request lines of the members (first member's request per line)"""
    coded = _coded(instance, field)
    field = coded.field
    lines = []
    total = np.zeros(coded.n, dtype=np.int64)
    for i in sorted(set(members)):
        line = linalg.span(field, coded.n, [coded.R.row(i)])
        if line in lines:
            continue
        lines.append(line)
        total = field.add(total, coded.R.row(i))
    return tuple(int(x) for x in total)


@lru_cache(maxsize=16)
def _weak_options(instance: IccsiInstance) -> Dict[Mask, Tuple[Tuple[Mask, Tuple[int, ...]], ...]]:
    graph = nx.Graph()
    graph.add_nodes_from(range(instance.m))
    for i in range(instance.m):
        for j in range(i + 1, instance.m):
            if _weak_pair(instance, i, j) and _weak_pair(instance, j, i):
                graph.add_edge(i, j)
    options = {}
    for clique in nx.enumerate_all_cliques(graph):
        v = weak_vector(instance, clique)
        data = np.asarray(v, dtype=np.int64)[None, :]
        unknown = _bits(
            j for j, side in enumerate(instance.side_spaces) if not linalg.contains_many(side, data)[0]
        )
        options[_bits(clique)] = ((unknown, v),)
    return options


def weak_cliques(instance: Instance, field: Optional[FieldSpec] = None) -> List[GeneralizedClique]:
    """Weak cliques with their sum-of-requests vector, ordered by size then members"""
    coded = _coded(instance, field)
    _check_receivers(coded)
    options = _weak_options(coded)
    return [
        GeneralizedClique(_members(c), tuple(CliqueOption(v, _members(u)) for u, v in options[c]))
        for c in sorted(options, key=_clique_key)
    ]


# ---- d_M ----


def d_M(instance: Instance, members: Iterable[int], field: Optional[FieldSpec] = None) -> int:
    """
    dim <R_M> - min_{j in M} dim(<R_M> n X^(j))

    Raises:
        PreconditionViolated: If M is empty
    """
    coded = _coded(instance, field)
    members = sorted(set(members))
    if not members:
        raise PreconditionViolated("d_M needs a nonempty group")
    requests = linalg.span(coded.field, coded.n, coded.R.select_rows(members))
    known = min(linalg.subspace_intersect(requests, coded.side_spaces[j]).dim for j in members)
    return requests.dim - known


# ---- programs ----


Options = Dict[Mask, Tuple[Tuple[Mask, object], ...]]


def _solve(program: LinearProgram, fractional: bool) -> LPSolution:
    return lp_solve(program) if fractional else ilp_solve(program)


def _cover_program(m: int, cliques: Sequence[Mask], fractional: bool) -> LinearProgram:
    program = LinearProgram()
    for c in cliques:
        program.add_variable(f"y{sorted(_members(c))}", cost=1, integral=not fractional, upper=1)
    for j in range(m):
        covering = {k: 1 for k, c in enumerate(cliques) if c >> j & 1}
        program.add_constraint(covering, Relation.EQ, 1, f"cover{j}")
    return program


def _vector_of(
    options: Options, vectors: Optional[np.ndarray], clique: Mask, index: int
) -> Tuple[int, ...]:
    ref = options[clique][index][1]
    if vectors is None:
        return tuple(ref)
    return tuple(int(x) for x in vectors[ref])


def _choice_variables(options: Options) -> List[Tuple[Mask, int, Mask]]:
    """(clique, option index, unknown set) for every clique and minimal unknown set"""
    choices = [
        (c, k, u) for c in sorted(options, key=_clique_key) for k, (u, _) in enumerate(options[c])
    ]
    if len(choices) > settings.CHOICE_BUDGET:
        raise BudgetExceeded(f"{len(choices)} clique/vector choices exceed {settings.CHOICE_BUDGET}")
    return choices


def _local_program(
    m: int, choices, groups: Sequence[Mask], fractional: bool
) -> Tuple[LinearProgram, List[int]]:
    """
    Joint program over clique choices and one local count per group

    For a group M and j in M the count sums the chosen cliques meeting M whose vector j
    does not know. A single group [m] gives the local clique cover program.
    """
    program = LinearProgram()
    for c, k, _ in choices:
        program.add_variable(f"y{sorted(_members(c))}#{k}", cost=0, integral=not fractional, upper=1)
    counts = [
        program.add_variable(f"t{sorted(_members(g))}", cost=1, integral=not fractional) for g in groups
    ]
    for j in range(m):
        covering = {x: 1 for x, (c, _, _) in enumerate(choices) if c >> j & 1}
        program.add_constraint(covering, Relation.EQ, 1, f"cover{j}")
    for g, t in zip(groups, counts):
        for j in _members(g):
            coeffs: Dict[int, int] = {
                x: 1 for x, (c, _, u) in enumerate(choices) if u >> j & 1 and c & g
            }
            coeffs[t] = -1
            program.add_constraint(coeffs, Relation.LE, 0, f"local{j}")
    return program, counts


def _cover_entries(choices, solution: LPSolution, options: Options, vectors) -> Tuple[CoverEntry, ...]:
    return tuple(
        CoverEntry(_members(c), solution.x[x], _vector_of(options, vectors, c, k))
        for x, (c, k, _) in enumerate(choices)
        if solution.x[x]
    )


def _clique_family(instance: IccsiInstance, weak: bool) -> Tuple[Options, Optional[np.ndarray]]:
    _check_receivers(instance)
    if weak:
        return _weak_options(instance), None
    limit = settings.CLIQUE_VECTOR_LIMIT
    return _clique_options(instance, limit), _vector_table(instance, limit).vectors


def _clique_cover(instance: IccsiInstance, fractional: bool, weak: bool, name: str) -> BoundValue:
    options, vectors = _clique_family(instance, weak)
    cliques = sorted(options, key=_clique_key)
    solution = _solve(_cover_program(instance.m, cliques, fractional), fractional)
    cover = tuple(
        CoverEntry(_members(c), solution.x[k], _vector_of(options, vectors, c, 0))
        for k, c in enumerate(cliques)
        if solution.x[k]
    )
    return BoundValue(name, solution.value, cover=cover, nodes=solution.nodes)


def _local_cover(instance: IccsiInstance, fractional: bool, weak: bool, name: str) -> BoundValue:
    options, vectors = _clique_family(instance, weak)
    choices = _choice_variables(options)
    full = (1 << instance.m) - 1
    program, counts = _local_program(instance.m, choices, [full], fractional)
    solution = _solve(program, fractional)
    return BoundValue(
        name,
        solution.value,
        cover=_cover_entries(choices, solution, options, vectors),
        local=solution.x[counts[0]],
        nodes=solution.nodes,
    )


def _check_partition_size(m: int) -> None:
    if m > settings.PARTITION_MAX_RECEIVERS:
        raise BudgetExceeded(
            f"{m} receivers; multicast programs are limited to {settings.PARTITION_MAX_RECEIVERS}"
        )


def _partitioned_local(instance: IccsiInstance, fractional: bool, weak: bool, name: str) -> BoundValue:
    """
    Minimum over set partitions into groups of the joint clique/count program

    Each group costs at least 1, so partitions with as many groups as the incumbent value
    are skipped; the single-group partition gives the local cover value as a start.
    """
    _check_partition_size(instance.m)
    options, vectors = _clique_family(instance, weak)
    choices = _choice_variables(options)
    m = instance.m
    partitions = sorted(
        (tuple(_bits(block) for block in partition) for partition in set_partitions(list(range(m)))),
        key=len,
    )
    best: Optional[Tuple[LPSolution, Tuple[Mask, ...], List[int]]] = None
    nodes = 0
    for groups in partitions:
        if best is not None and len(groups) >= best[0].value:
            break
        program, counts = _local_program(m, choices, groups, fractional)
        solution = _solve(program, fractional)
        nodes += max(solution.nodes, 1)
        if best is None or solution.value < best[0].value:
            best = (solution, groups, counts)
    if best is None:
        raise Infeasible("No partition admits a clique cover")  # pragma: no cover
    solution, groups, counts = best
    return BoundValue(
        name,
        solution.value,
        cover=_cover_entries(choices, solution, options, vectors),
        groups=tuple(
            GroupEntry(_members(g), Fraction(1), solution.x[t]) for g, t in zip(groups, counts)
        ),
        nodes=nodes,
    )


def _partition_multicast(instance: IccsiInstance, fractional: bool, name: str) -> BoundValue:
    _check_partition_size(instance.m)
    m = instance.m
    groups = sorted(range(1, 1 << m), key=_clique_key)
    costs = [d_M(instance, _members(g)) for g in groups]
    program = LinearProgram()
    for g, cost in zip(groups, costs):
        program.add_variable(f"a{sorted(_members(g))}", cost=cost, integral=not fractional, upper=1)
    for j in range(m):
        covering = {k: 1 for k, g in enumerate(groups) if g >> j & 1}
        program.add_constraint(covering, Relation.EQ, 1, f"cover{j}")
    solution = _solve(program, fractional)
    return BoundValue(
        name,
        solution.value,
        groups=tuple(
            GroupEntry(_members(g), solution.x[k], Fraction(costs[k]))
            for k, g in enumerate(groups)
            if solution.x[k]
        ),
        nodes=solution.nodes,
    )


def phi(instance: Instance, field: Optional[FieldSpec] = None) -> BoundValue:
    """Generalized clique cover number"""
    return _clique_cover(_coded(instance, field), False, False, "phi")


def phi_f(instance: Instance, field: Optional[FieldSpec] = None) -> BoundValue:
    """Fractional generalized clique cover number"""
    return _clique_cover(_coded(instance, field), True, False, "phi_f")


def phi_l(instance: Instance, field: Optional[FieldSpec] = None) -> BoundValue:
    """Local generalized clique cover number, minimised over the coding-vector choices"""
    return _local_cover(_coded(instance, field), False, False, "phi_l")


def phi_lf(instance: Instance, field: Optional[FieldSpec] = None) -> BoundValue:
    return _local_cover(_coded(instance, field), True, False, "phi_lf")


def phi_p(instance: Instance, field: Optional[FieldSpec] = None) -> BoundValue:
    """Partition generalized multicast number"""
    return _partition_multicast(_coded(instance, field), False, "phi_p")


def phi_p_f(instance: Instance, field: Optional[FieldSpec] = None) -> BoundValue:
    return _partition_multicast(_coded(instance, field), True, "phi_p_f")


def phi_p_l(instance: Instance, field: Optional[FieldSpec] = None) -> BoundValue:
    """Partitioned local generalized clique cover number"""
    return _partitioned_local(_coded(instance, field), False, False, "phi_p_l")


def phi_p_lf(instance: Instance, field: Optional[FieldSpec] = None) -> BoundValue:
    return _partitioned_local(_coded(instance, field), True, False, "phi_p_lf")


def weak_variants(instance: Instance, field: Optional[FieldSpec] = None) -> Dict[str, BoundValue]:
    """The six programs restricted to weak cliques with their sum-of-requests vectors"""
    coded = _coded(instance, field)
    return {
        "w_phi": _clique_cover(coded, False, True, "w_phi"),
        "w_phi_f": _clique_cover(coded, True, True, "w_phi_f"),
        "w_phi_l": _local_cover(coded, False, True, "w_phi_l"),
        "w_phi_lf": _local_cover(coded, True, True, "w_phi_lf"),
        "w_phi_p_l": _partitioned_local(coded, False, True, "w_phi_p_l"),
        "w_phi_p_lf": _partitioned_local(coded, True, True, "w_phi_p_lf"),
    }


def _kappa_value(instance: IccsiInstance, budget: Optional[int]) -> BoundValue:
    result = kappa(instance, budget)
    return BoundValue("kappa", Fraction(result.value), nodes=result.nodes)


_PROGRAMS = {
    "phi": lambda I: _clique_cover(I, False, False, "phi"),
    "phi_f": lambda I: _clique_cover(I, True, False, "phi_f"),
    "phi_l": lambda I: _local_cover(I, False, False, "phi_l"),
    "phi_lf": lambda I: _local_cover(I, True, False, "phi_lf"),
    "phi_p": lambda I: _partition_multicast(I, False, "phi_p"),
    "phi_p_f": lambda I: _partition_multicast(I, True, "phi_p_f"),
    "phi_p_l": lambda I: _partitioned_local(I, False, False, "phi_p_l"),
    "phi_p_lf": lambda I: _partitioned_local(I, True, False, "phi_p_lf"),
    "w_phi": lambda I: _clique_cover(I, False, True, "w_phi"),
    "w_phi_f": lambda I: _clique_cover(I, True, True, "w_phi_f"),
    "w_phi_l": lambda I: _local_cover(I, False, True, "w_phi_l"),
    "w_phi_lf": lambda I: _local_cover(I, True, True, "w_phi_lf"),
    "w_phi_p_l": lambda I: _partitioned_local(I, False, True, "w_phi_p_l"),
    "w_phi_p_lf": lambda I: _partitioned_local(I, True, True, "w_phi_p_lf"),
}


def compute_bounds(
    instance: Instance,
    params: Optional[Sequence[str]] = None,
    field: Optional[FieldSpec] = None,
    budget: Optional[int] = None,
) -> BoundReport:
    """
    Evaluate the requested parameters

    Args:
        instance: Instance (ICSI instances are embedded over `field`, default GF(2))
        params: Parameter names (default: all, in PARAMETER_ORDER)
        field: Field for ICSI instances
        budget: Node budget for kappa

    Returns:
        BoundReport with one certified value per parameter

    Raises:
        ValueError: On an unknown parameter name
    """
    coded = _coded(instance, field)
    names = list(PARAMETER_ORDER if params is None else params)
    unknown = [p for p in names if p not in PARAMETER_ORDER]
    if unknown:
        raise ValueError(f"Unknown parameters {unknown}; choose from {', '.join(PARAMETER_ORDER)}")
    report = BoundReport(m=coded.m, n=coded.n, field=str(coded.field))
    for name in names:
        if name == "kappa":
            value = _kappa_value(coded, budget)
        else:
            value = _PROGRAMS[name](coded)
        report.values[name] = value
        kind = "fractional" if name in FRACTIONAL_PARAMETERS else "integral"
        logger.info(f"{name} ({kind}) = {value.value}")
    return report


# ---- certificate checks ----


def verify_bound(instance: Instance, bound: BoundValue, field: Optional[FieldSpec] = None) -> bool:
    """
    Re-check a certificate

    Covers must give every receiver total weight 1 with vectors in R(C); groups must
    partition the receivers with the recorded d_M (multicast programs) and the value must
    equal the certified objective.
    """
    coded = _coded(instance, field)
    m = coded.m
    if bound.name == "kappa":
        return True
    if bound.cover:
        weights = [Fraction(0)] * m
        for entry in bound.cover:
            for j in entry.members:
                weights[j] += entry.weight
            if entry.vector is not None and not in_coding_set(coded, entry.members, entry.vector):
                return False
        if any(w != 1 for w in weights):
            return False
    if bound.groups:
        weights = [Fraction(0)] * m
        for entry in bound.groups:
            for j in entry.members:
                weights[j] += entry.weight
        if any(w != 1 for w in weights):
            return False
    if bound.name in ("phi_p", "phi_p_f"):
        if any(Fraction(d_M(coded, g.members)) != g.cost for g in bound.groups):
            return False
        return sum((g.weight * g.cost for g in bound.groups), Fraction(0)) == bound.value
    if bound.groups:
        return sum((g.cost for g in bound.groups), Fraction(0)) == bound.value
    if bound.local is not None:
        return bound.local == bound.value
    return sum((c.weight for c in bound.cover), Fraction(0)) == bound.value
