"""
Design Service
Block designs, projective planes, p-ary codes of designs and the design-based bounds
"""

import logging
from fractions import Fraction
from itertools import combinations, product
from math import comb
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence

import networkx as nx
import numpy as np
from pydantic import ValidationError

from icbound.config import settings
from icbound.core.exceptions import (
    BudgetExceeded,
    DimensionMismatch,
    Inapplicable,
    InstanceFormatError,
    NotADesign,
    NotPrimePower,
    PreconditionViolated,
    TooLarge,
)
from icbound.models.design import (
    AdversaryReport,
    Design,
    DesignBound,
    DesignContainment,
    KlemmReport,
    SecrecyReport,
    WeightReport,
)
from icbound.models.field import FieldSpec
from icbound.models.instance import IcsiInstance
from icbound.models.matrix import FqMatrix, Subspace
from icbound.schemas.design import DesignSchema
from icbound.services import linalg
from icbound.services.finite_field import field_make
from icbound.services.instance_service import read_json
from icbound.utils.constants import CODEWORD_CHUNK, PLANE_MAX_ORDER
from icbound.utils.validators import prime_power

logger = logging.getLogger(__name__)


# ---- construction and validation ----


def _incidence_array(v: int, blocks: Sequence[FrozenSet[int]]) -> np.ndarray:
    N = np.zeros((len(blocks), v), dtype=np.int64)
    for row, block in enumerate(blocks):
        N[row, [x - 1 for x in block]] = 1
    return N


def _subset_counts(N: np.ndarray, t: int) -> np.ndarray:
    """Number of blocks through each t-subset of points"""
    v = N.shape[1]
    if t == 1:
        return N.sum(axis=0)
    if t == 2:
        pairs = N.T @ N
        return pairs[np.triu_indices(v, 1)]
    return np.array([int(np.all(N[:, list(S)] == 1, axis=1).sum()) for S in combinations(range(v), t)])


def validate_design(v: int, blocks: Iterable[Iterable[int]], t: int = 2) -> Design:
    """
    Check that the blocks form a t-design on points 1..v

    Args:
        v: Number of points
        blocks: Blocks as collections of 1-based points
        t: Strength

    Returns:
        The validated Design with lambda counted and r derived

    Raises:
        NotADesign: On empty input, mixed block sizes or non-uniform t-subset counts
    """
    blocks = tuple(frozenset(int(x) for x in block) for block in blocks)
    if not blocks:
        raise NotADesign("A design needs at least one block")
    sizes = {len(block) for block in blocks}
    if len(sizes) != 1:
        raise NotADesign(f"Blocks have different sizes {sorted(sizes)}")
    k = sizes.pop()
    if any(not 1 <= x <= v for block in blocks for x in block):
        raise NotADesign(f"Blocks use points outside 1..{v}")
    if not 1 <= t <= k or k > v:
        raise NotADesign(f"Strength {t} is incompatible with block size {k} on {v} points")

    counts = _subset_counts(_incidence_array(v, blocks), t)
    lam = int(counts[0])
    if lam == 0 or not np.all(counts == lam):
        raise NotADesign(
            f"{t}-subsets lie in between {int(counts.min())} and {int(counts.max())} blocks"
        )
    r = lam * comb(v - 1, t - 1) // comb(k - 1, t - 1)
    design = Design(v=v, blocks=blocks, t=t, k=k, lam=lam, r=r)
    logger.debug(f"Validated {design}: b={design.b}, r={r}, order={design.order}")
    return design


def complete_design(v: int, k: int, t: int = 2) -> Design:
    """All k-subsets of 1..v"""
    return validate_design(v, combinations(range(1, v + 1), k), t)


def projective_plane(r: int) -> Design:
    """
    PG(2, r) as a 2-(r^2+r+1, r+1, 1) design

    Points and lines are the homogeneous triples over GF(r) whose first nonzero coordinate
    is 1, in lexicographic order; point x lies on line y when x . y = 0. Points are
    labelled 1..v in that order and block j is line j.

    Raises:
        NotPrimePower: If r is not a prime power
        TooLarge: If r exceeds PLANE_MAX_ORDER
    """
    decomposition = prime_power(r)
    if decomposition is None:
        raise NotPrimePower(f"{r} is not a prime power")
    if r > PLANE_MAX_ORDER:
        raise TooLarge(f"Planes are built up to order {PLANE_MAX_ORDER}, got {r}")
    field = field_make(*decomposition)

    triples = [
        x for x in product(range(field.q), repeat=3)
        if any(x) and x[next(c for c in range(3) if x[c])] == 1
    ]
    P = np.array(triples, dtype=np.int64)
    dots = field.matmul(P, P.T)
    blocks = [frozenset(int(i) + 1 for i in np.nonzero(dots[:, j] == 0)[0]) for j in range(len(triples))]
    design = validate_design(len(triples), blocks, 2)
    logger.info(f"Built PG(2,{r}): {design}")
    return design


def design_from_data(data: dict) -> Design:
    """Design from its JSON form; strength defaults to 2"""
    try:
        schema = DesignSchema.model_validate(data)
    except ValidationError as e:
        raise InstanceFormatError(f"Invalid design: {e}") from e
    return validate_design(schema.v, schema.blocks, schema.t or 2)


def design_to_data(design: Design) -> dict:
    return DesignSchema(v=design.v, blocks=design.sorted_blocks(), t=design.t).model_dump()


def load_design(path) -> Design:
    return design_from_data(read_json(path))


def incidence_matrix(design: Design, field: FieldSpec) -> FqMatrix:
    """b x v incidence matrix, block rows in design order"""
    return FqMatrix(field, _incidence_array(design.v, design.blocks))


def is_symmetric(design: Design) -> bool:
    return design.is_symmetric


def p_rank(design: Design, p: int) -> int:
    """Dimension of the code spanned by the incidence rows over GF(p)"""
    return linalg.rank(incidence_matrix(design, field_make(p)))


def design_code(design: Design, p: int) -> Subspace:
    field = field_make(p)
    return linalg.span(field, design.v, incidence_matrix(design, field))


def _require_order_divisible(design: Design, p: int) -> int:
    order = design.order
    if order is None or order == 0 or order % p:
        raise Inapplicable(f"{p} does not divide the order {order} of the {design}")
    return order


# ---- rank bounds ----


def klemm_check(design: Design, p: int) -> KlemmReport:
    """
    Verify rank_p(D) <= (b+1)/2 and, when claimed, C_p(D)^perp in C_p(D) and rank >= v/2

    The dual code is the right kernel of the incidence matrix; each of its basis vectors
    is tested for membership in the code.

    Raises:
        Inapplicable: If p does not divide the order
    """
    order = _require_order_divisible(design, p)
    field = field_make(p)
    N = incidence_matrix(design, field)
    code = linalg.span(field, design.v, N)
    rank = code.dim
    upper = Fraction(design.b + 1, 2)

    dual = linalg.kernel(N)
    inside = linalg.contains_many(code, dual.data) if dual.rows else np.ones(0, dtype=bool)
    outside = np.nonzero(~inside)[0]
    witness = tuple(int(x) for x in dual.row(int(outside[0]))) if outside.size else None

    report = KlemmReport(
        p=p,
        rank=rank,
        upper_bound=upper,
        upper_holds=rank <= upper,
        containment_claimed=design.lambda2 % p != 0 and order % (p * p) != 0,
        dual_contained=witness is None,
        lower_holds=2 * rank >= design.v,
        dual_witness=witness,
    )
    logger.info(f"rank_{p} of {design} is {rank} (upper bound {upper}); passed={report.passed}")
    return report


# ---- instances containing a design ----


def contains_design(instance: IcsiInstance, design: Design) -> DesignContainment:
    """
    Find, for each receiver, a block through its demand whose other points it knows

    Blocks matching the side information exactly are preferred as witnesses.

    Raises:
        DimensionMismatch: If the design has a different number of points than messages
    """
    if design.v != instance.n:
        raise DimensionMismatch(f"Design on {design.v} points, instance with {instance.n} messages")
    witness: List[Optional[int]] = []
    exact = []
    for demand, known in zip(instance.f, instance.side_info):
        found, equal = None, False
        for index, block in enumerate(design.blocks):
            if demand not in block:
                continue
            rest = block - {demand}
            if rest == known:
                found, equal = index, True
                break
            if found is None and rest <= known:
                found = index
        witness.append(found)
        exact.append(equal)
    fits = design.b <= instance.m
    contains = fits and all(w is not None for w in witness)
    return DesignContainment(contains=contains, coincides=contains and all(exact), witness=tuple(witness))


def design_bound(instance: IcsiInstance, design: Design, p: int) -> DesignBound:
    """
    The bound minrk <= rank_p(D) for an instance containing D

    Receiver i's row of the fitting matrix is the incidence row of its witness block; the
    encoder keeps the independent rows, taken greedily in receiver order.

    Raises:
        Inapplicable: If the instance does not contain D or p does not divide the order
    """
    _require_order_divisible(design, p)
    containment = contains_design(instance, design)
    if not containment.contains:
        raise Inapplicable("The instance does not contain the design")
    field = field_make(p)
    rows = _incidence_array(design.v, [design.blocks[w] for w in containment.witness])

    basis = linalg.EchelonBasis(field, design.v)
    used = []
    for i, row in enumerate(rows):
        extended = basis.extend(row)
        if extended.rank > basis.rank:
            used.append(i)
            basis = extended
    encoder = FqMatrix(field, rows[used].reshape(len(used), design.v))
    bound = p_rank(design, p)
    logger.info(f"Design bound over GF({p}): {bound} transmissions, encoder with {encoder.rows} rows")
    return DesignBound(
        bound=bound,
        p=p,
        encoder=encoder,
        receivers_used=tuple(used),
        half_bound=Fraction(instance.m + 1, 2),
    )


def design_instance(design: Design) -> IcsiInstance:
    """
    The instance coinciding with a symmetric design

    Receiver i demands point i and knows the rest of a block through i. Block i is used
    when it contains point i, otherwise blocks are matched to points.

    Raises:
        PreconditionViolated: If the design is not symmetric or no matching exists
    """
    if not design.is_symmetric:
        raise PreconditionViolated(f"{design} is not symmetric")
    v = design.v
    if all(i in design.blocks[i - 1] for i in range(1, v + 1)):
        chosen = {i: i - 1 for i in range(1, v + 1)}
    else:
        graph = nx.Graph()
        points = [("point", i) for i in range(1, v + 1)]
        graph.add_nodes_from(points)
        for j, block in enumerate(design.blocks):
            graph.add_edges_from((("point", i), ("block", j)) for i in block)
        matching = nx.bipartite.hopcroft_karp_matching(graph, top_nodes=points)
        if len(matching) < 2 * v:
            raise PreconditionViolated("No system of distinct blocks through the points")
        chosen = {i: matching[("point", i)][1] for i in range(1, v + 1)}
    side_info = tuple(design.blocks[chosen[i]] - {i} for i in range(1, v + 1))
    return IcsiInstance(n=v, f=tuple(range(1, v + 1)), side_info=side_info)


# ---- the code of a design ----


def iter_codewords(basis: FqMatrix, chunk: int = CODEWORD_CHUNK) -> Iterator[np.ndarray]:
    """All q^k combinations of the k basis rows, in chunks of rows"""
    field, k = basis.field, basis.rows
    q = field.q
    weights = q ** np.arange(k, dtype=np.int64)
    for start in range(0, q**k, chunk):
        index = np.arange(start, min(q**k, start + chunk), dtype=np.int64)
        coeffs = (index[:, None] // weights[None, :]) % q
        yield field.matmul(coeffs, basis.data)


def _code_basis(design: Design, p: int, limit: Optional[int]) -> Subspace:
    code = design_code(design, p)
    limit = settings.CODE_ENUMERATION_LIMIT if limit is None else limit
    if p**code.dim > limit:
        raise BudgetExceeded(f"C_{p} has {p}^{code.dim} words, above the enumeration limit {limit}")
    return code


def codewords(design: Design, p: int, limit: Optional[int] = None) -> np.ndarray:
    """
    Every codeword of C_p(D)

    Raises:
        BudgetExceeded: If p^rank exceeds the enumeration limit
    """
    code = _code_basis(design, p, limit)
    return np.vstack(list(iter_codewords(code.basis)))


def weight_checks(design: Design, p: int, limit: Optional[int] = None) -> WeightReport:
    """
    Weight structure of the p-ary code of a projective plane of order n, p | n

    Checks minimum weight n+1, that the minimum-weight words are the scalar multiples of
    the incidence rows and, for prime order p, that no weight falls in [p+2, 2p-1].

    Raises:
        Inapplicable: If D is not a projective plane or p does not divide its order
        BudgetExceeded: If the code is too large to enumerate
    """
    if not design.is_projective_plane:
        raise Inapplicable(f"{design} is not a projective plane")
    order = _require_order_divisible(design, p)
    code = _code_basis(design, p, limit)
    field = code.field
    blocks = {tuple(row) for row in _incidence_array(design.v, design.blocks).tolist()}

    distribution: Dict[int, int] = {}
    minimal: List[np.ndarray] = []
    expected = order + 1
    for words in iter_codewords(code.basis):
        weights = np.count_nonzero(words, axis=1)
        values, counts = np.unique(weights, return_counts=True)
        for w, c in zip(values.tolist(), counts.tolist()):
            distribution[w] = distribution.get(w, 0) + c
        minimal.extend(words[weights == expected])
    min_weight = min((w for w in distribution if w > 0), default=0)

    multiples = all(tuple(field.normalize(w).tolist()) in blocks for w in minimal)
    multiples = multiples and len(minimal) == (p - 1) * design.b and min_weight == expected
    gap = gap_empty = None
    if order == p:
        gap = (p + 2, 2 * p - 1)
        gap_empty = not any(gap[0] <= w <= gap[1] for w in distribution)

    report = WeightReport(
        p=p,
        order=order,
        min_weight=min_weight,
        expected_min_weight=expected,
        minimal_words=len(minimal),
        minimal_are_block_multiples=multiples,
        gap=gap,
        gap_empty=gap_empty,
        distribution=dict(sorted(distribution.items())),
    )
    logger.info(f"C_{p} of {design}: min weight {min_weight}, passed={report.passed}")
    return report


# ---- secrecy ----


def _local_patterns(field: FieldSpec, n: int, positions: Sequence[int]) -> np.ndarray:
    """Every vector supported on the given 0-based positions"""
    values = np.array(list(product(range(field.q), repeat=len(positions))), dtype=np.int64)
    patterns = np.zeros((len(values), n), dtype=np.int64)
    if positions:
        patterns[:, list(positions)] = values
    return patterns


def _recoverable(code: Subspace, known: Sequence[int], targets: Iterable[int]) -> List[int]:
    """Targets j (1-based) with some u supported on `known` and u + e_j in the code"""
    field, n = code.field, code.ambient_dim
    patterns = _local_patterns(field, n, [x - 1 for x in sorted(known)])
    found = []
    for j in targets:
        candidates = patterns.copy()
        candidates[:, j - 1] = field.add(candidates[:, j - 1], 1)
        if linalg.contains_many(code, candidates).any():
            found.append(j)
    return found


def secrecy_check(instance: IcsiInstance, design: Design, p: int) -> SecrecyReport:
    """
    Confirm that no receiver can recover a message outside its side information and demand

    The encoder spans C_p(D). For every receiver i and message j not in X_i or f(i), all u
    supported on X_i and f(i) are tried against the condition u + e_j in C_p(D).

    Raises:
        Inapplicable: If D is not a projective plane, p does not divide its order or the
            instance does not coincide with D
    """
    if not design.is_projective_plane:
        raise Inapplicable(f"{design} is not a projective plane")
    _require_order_divisible(design, p)
    if not contains_design(instance, design).coincides:
        raise Inapplicable("The instance does not coincide with the design")
    code = design_code(design, p)

    leaks = []
    pairs = 0
    for i, (demand, known) in enumerate(zip(instance.f, instance.side_info), start=1):
        allowed = known | {demand}
        targets = [j for j in range(1, instance.n + 1) if j not in allowed]
        pairs += len(targets)
        leaks.extend((i, j) for j in _recoverable(code, allowed, targets))
    report = SecrecyReport(p=p, pairs_checked=pairs, leaks=tuple(leaks))
    logger.info(f"Secrecy over GF({p}): {pairs} pairs checked, {len(leaks)} leaks")
    return report


def adversary_check(
    design: Design,
    known: Iterable[int],
    p: int,
    instance: Optional[IcsiInstance] = None,
) -> AdversaryReport:
    """
    Eavesdropper with side information X_A listening to an encoder spanning C_p(D)

    The hypotheses are |X_A| <= 2p-2 and |X_A n B| <= p-1 for every block, for a plane of
    order p contained in the instance. Recoverability is searched exhaustively either way.

    Args:
        design: The plane
        known: X_A (1-based)
        p: Prime
        instance: Instance that should contain the plane

    Returns:
        AdversaryReport; `safe` is None when the hypotheses fail
    """
    field_make(p)
    known = frozenset(int(x) for x in known)
    if any(not 1 <= x <= design.v for x in known):
        raise DimensionMismatch(f"Adversary side information outside 1..{design.v}")
    plane_ok = design.is_projective_plane and design.order == p
    if instance is not None:
        plane_ok = plane_ok and contains_design(instance, design).contains

    violating = next((block for block in design.blocks if len(known & block) > p - 1), None)
    targets = [j for j in range(1, design.v + 1) if j not in known]
    recoverable = _recoverable(design_code(design, p), known, targets)
    by_blocks = [
        j for j in targets
        if any(j in block and len(known & block) >= len(block) - 1 for block in design.blocks)
    ]
    report = AdversaryReport(
        p=p,
        known=known,
        plane_ok=plane_ok,
        size_ok=len(known) <= 2 * p - 2,
        blocks_ok=violating is None,
        violating_block=violating,
        recoverable=tuple(recoverable),
        block_recoverable=tuple(by_blocks),
    )
    logger.info(f"Adversary knowing {sorted(known)}: recovers {recoverable}, safe={report.safe}")
    return report
