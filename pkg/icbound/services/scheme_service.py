"""
Scheme Service
Linear schemes achieving the clique, local, multicast and partitioned-local bounds,
their receiver decoders and seeded end-to-end simulation
"""

import logging
from fractions import Fraction
from itertools import product
from typing import Iterable, Iterator, List, Optional, Sequence, Tuple, Union

import numpy as np

from icbound.config import settings
from icbound.core.exceptions import FieldTooSmall, PreconditionViolated, SchemeFailure
from icbound.models.bounds import BoundValue, CoverEntry
from icbound.models.field import FieldSpec
from icbound.models.instance import IccsiInstance, IcsiInstance
from icbound.models.matrix import FqMatrix
from icbound.models.scheme import (
    DecodeTrace,
    SchemeKind,
    SchemePlan,
    SchemeTranscript,
    SubpacketReport,
)
from icbound.services import linalg
from icbound.services.clique_service import compute_bounds, in_coding_set
from icbound.services.finite_field import extension_field, field_make
from icbound.services.instance_service import as_iccsi, encoder_rows, sub_instance
from icbound.services.mds_service import mds_field, rs_generator
from icbound.services.minrank_service import kappa, multicast_matrix
from icbound.utils.helpers import common_denominator, to_labels

logger = logging.getLogger(__name__)

Instance = Union[IcsiInstance, IccsiInstance]
Copy = Tuple[frozenset, np.ndarray]

BOUND_FOR_SCHEME = {
    (SchemeKind.CLIQUE, False): "phi",
    (SchemeKind.CLIQUE, True): "phi_f",
    (SchemeKind.LOCAL, False): "phi_l",
    (SchemeKind.LOCAL, True): "phi_lf",
    (SchemeKind.MULTICAST, False): "phi_p",
    (SchemeKind.MULTICAST, True): "phi_p_f",
    (SchemeKind.PARTITIONED_LOCAL, False): "phi_p_l",
    (SchemeKind.PARTITIONED_LOCAL, True): "phi_p_lf",
}


def _coded(instance: Instance, field: Optional[FieldSpec] = None) -> IccsiInstance:
    if isinstance(instance, IcsiInstance):
        return as_iccsi(instance, field or field_make(2))
    return instance


def lift_instance(instance: IccsiInstance, field: FieldSpec) -> IccsiInstance:
    """The same instance read over an extension of its prime field"""
    if field == instance.field:
        return instance
    return IccsiInstance(
        field,
        instance.VS.with_field(field),
        tuple(v.with_field(field) for v in instance.V),
        instance.R.with_field(field),
        instance.t,
    )


def _outer(field: FieldSpec, v: np.ndarray, g: np.ndarray) -> np.ndarray:
    """Row of v X g on the message-major flattening of X (n x len(g))"""
    return field.mul(np.asarray(v, dtype=np.int64)[:, None], np.asarray(g, dtype=np.int64)[None, :]).reshape(-1)


def _scheme_field(base: FieldSpec, needs: Iterable[Tuple[int, int]]) -> FieldSpec:
    """Smallest field carrying every [s, k] MDS generator in `needs`"""
    field = base
    for s, k in needs:
        wanted = mds_field(base, s, k)
        if wanted.q > field.q:
            field = wanted
    return field


def _generator(s: int, k: int, field: FieldSpec) -> np.ndarray:
    return rs_generator(s, k, field).data


# ---- certificates to copies ----


def _weights(count: int, weights: Optional[Sequence]) -> List[Fraction]:
    if weights is None:
        return [Fraction(1)] * count
    if len(weights) != count:
        raise PreconditionViolated(f"{len(weights)} weights for {count} entries")
    return [Fraction(w) for w in weights]


def _check_partition(m: int, members: Sequence[frozenset], weights: Sequence[Fraction], what: str) -> None:
    totals = [Fraction(0)] * m
    for group, w in zip(members, weights):
        if w < 0:
            raise PreconditionViolated(f"Negative weight {w} on {what} {sorted(group)}")
        for j in group:
            if not 0 <= j < m:
                raise PreconditionViolated(f"Receiver {j} outside 0..{m - 1}")
            totals[j] += w
    missing = [j for j, t in enumerate(totals) if t != 1]
    if missing:
        raise PreconditionViolated(f"Receivers {missing} are not covered with total weight 1 by the {what}s")


def _expand(
    instance: IccsiInstance,
    cover: Sequence[Iterable[int]],
    vectors: Sequence[Sequence[int]],
    weights: Optional[Sequence],
) -> Tuple[int, List[Copy]]:
    """
    Repeat each clique y_C * r times for the common denominator r of the weights

    Raises:
        PreconditionViolated: If the weights do not cover every receiver exactly once or a
            vector is not a coding vector of its clique
    """
    members = [frozenset(c) for c in cover]
    if len(vectors) != len(members):
        raise PreconditionViolated("One coding vector per clique is required")
    w = _weights(len(members), weights)
    _check_partition(instance.m, members, w, "clique")
    for group, v in zip(members, vectors):
        if not in_coding_set(instance, group, v):
            raise PreconditionViolated(f"{list(v)} is not a coding vector of clique {sorted(group)}")
    r = common_denominator(w)
    copies = []
    for group, v, weight in zip(members, vectors, w):
        copies.extend([(group, np.asarray(v, dtype=np.int64))] * int(weight * r))
    return r, copies


def _unknown_count(instance: IccsiInstance, copies: Sequence[Copy], j: int) -> int:
    if not copies:
        return 0
    data = np.stack([v for _, v in copies])
    return int((~linalg.contains_many(instance.side_spaces[j], data)).sum())


# ---- encoders ----


def _local_encoder(
    instance: IccsiInstance,
    r: int,
    copies: Sequence[Copy],
    groups: Sequence[frozenset],
    combine: bool = True,
) -> Tuple[FieldSpec, np.ndarray, dict]:
    """
    Clique copies spread over r sub-blocks by an [s, r] MDS code H, then for each group
    t_M combinations of the copies meeting it by an [s_M, t_M] MDS code G_M

    t_M is the largest number of those copies a member of M cannot compute; without
    `combine` every copy is sent on its own (the clique cover scheme).
    """
    s = len(copies)
    selected = [[i for i, (c, _) in enumerate(copies) if c & g] for g in groups]
    counts = []
    for g, idx in zip(groups, selected):
        chosen = [copies[i] for i in idx]
        counts.append(max((_unknown_count(instance, chosen, j) for j in g), default=0))
    needs = [(s, r)] + [(len(idx), t) for idx, t in zip(selected, counts)] if combine else [(s, r)]
    field = _scheme_field(instance.field, needs)
    if field != instance.field:
        instance = lift_instance(instance, field)

    H = _generator(s, r, field)
    Z = np.zeros((s, instance.n * r), dtype=np.int64)
    for i, (_, v) in enumerate(copies):
        Z[i] = _outer(field, v, H[:, i])
    if not combine:
        return field, Z, {"s": s, "r": r}

    blocks = []
    for idx, t in zip(selected, counts):
        if t == 0:
            continue
        G = _generator(len(idx), t, field)
        blocks.append(field.matmul(G, Z[idx]))
    encoder = np.vstack(blocks) if blocks else np.zeros((0, instance.n * r), dtype=np.int64)
    return field, encoder, {"s": s, "r": r, "k": counts}


def _plan(
    kind: SchemeKind,
    instance: IccsiInstance,
    field: FieldSpec,
    split: int,
    encoder: np.ndarray,
    parameters: dict,
) -> SchemePlan:
    parameters = dict(parameters, field=str(field))
    plan = SchemePlan(
        kind=kind,
        field=field,
        split=split,
        encoder=FqMatrix(field, encoder.reshape(-1, instance.n * split)),
        extended=field != instance.field,
        parameters=parameters,
    )
    logger.info(f"{kind.value} scheme: {plan.transmissions} transmissions over {split} sub-blocks ({field})")
    return plan


def scheme_clique_cover(
    instance: Instance,
    cover: Sequence[Iterable[int]],
    vectors: Sequence[Sequence[int]],
    weights: Optional[Sequence] = None,
    field: Optional[FieldSpec] = None,
) -> SchemePlan:
    """
    Send v_C X for every clique of a cover

    Fractional weights y_C with common denominator r split each message into r sub-blocks;
    clique copy i then sends v_C X H_i for the i-th column of an [s, r] MDS code H.

    Args:
        instance: Instance (ICSI embedded over `field`, default GF(2))
        cover: Cliques (0-based receivers)
        vectors: One coding vector per clique
        weights: Clique weights summing to 1 per receiver (default: all 1)
        field: Field for ICSI instances

    Returns:
        SchemePlan with s transmissions of sub-block size

    Raises:
        PreconditionViolated: On an invalid cover
        FieldTooSmall: If the scalars cannot be extended for the MDS code
    """
    coded = _coded(instance, field)
    r, copies = _expand(coded, cover, vectors, weights)
    used, encoder, params = _local_encoder(coded, r, copies, [], combine=False)
    return _plan(SchemeKind.CLIQUE, coded, used, r, encoder, params)


def scheme_local_clique(
    instance: Instance,
    cover: Sequence[Iterable[int]],
    vectors: Sequence[Sequence[int]],
    weights: Optional[Sequence] = None,
    field: Optional[FieldSpec] = None,
) -> SchemePlan:
    """
    Send k MDS combinations of the clique transmissions

    Receiver j strips the v_C X it knows and solves for the at most k others with the
    corresponding columns of the [s, k] generator.

    Args:
        instance: Instance
        cover: Cliques (0-based receivers)
        vectors: One coding vector per clique
        weights: Clique weights (default: all 1)
        field: Field for ICSI instances

    Returns:
        SchemePlan with k (or r * k_f) transmissions
    """
    coded = _coded(instance, field)
    r, copies = _expand(coded, cover, vectors, weights)
    used, encoder, params = _local_encoder(coded, r, copies, [frozenset(range(coded.m))])
    params["k"] = params["k"][0]
    return _plan(SchemeKind.LOCAL, coded, used, r, encoder, params)


def scheme_partitioned_local(
    instance: Instance,
    groups: Sequence[Iterable[int]],
    cover: Sequence[Iterable[int]],
    vectors: Sequence[Sequence[int]],
    weights: Optional[Sequence] = None,
    field: Optional[FieldSpec] = None,
) -> SchemePlan:
    """
    Local clique scheme run separately for every group of a receiver partition

    Group M sends t_M combinations of the clique copies meeting M.

    Args:
        instance: Instance
        groups: Partition of the receivers
        cover: Cliques (0-based receivers)
        vectors: One coding vector per clique
        weights: Clique weights (default: all 1)
        field: Field for ICSI instances

    Returns:
        SchemePlan with sum_M t_M transmissions
    """
    coded = _coded(instance, field)
    parts = [frozenset(g) for g in groups]
    _check_partition(coded.m, parts, [Fraction(1)] * len(parts), "group")
    r, copies = _expand(coded, cover, vectors, weights)
    used, encoder, params = _local_encoder(coded, r, copies, parts)
    params["groups"] = [to_labels(g) for g in parts]
    return _plan(SchemeKind.PARTITIONED_LOCAL, coded, used, r, encoder, params)


def _group_copies(
    instance: IccsiInstance, groups: Sequence[Iterable[int]], weights: Optional[Sequence]
) -> Tuple[int, List[frozenset]]:
    parts = [frozenset(g) for g in groups]
    w = _weights(len(parts), weights)
    _check_partition(instance.m, parts, w, "group")
    r = common_denominator(w)
    copies: List[frozenset] = []
    for g, weight in zip(parts, w):
        copies.extend([g] * int(weight * r))
    return r, copies


def _multicast_rows(instance: IccsiInstance, copies: Sequence[frozenset]) -> Tuple[FieldSpec, List[np.ndarray]]:
    """Per-copy multicast matrices, extending a prime field until every group has one"""
    field = instance.field
    while True:
        lifted = lift_instance(instance, field)
        try:
            rows = {g: multicast_matrix(sub_instance(lifted, g)).data for g in set(copies)}
            return field, [rows[g] for g in copies]
        except FieldTooSmall:
            wider = extension_field(instance.field, field.q + 1)
            logger.debug(f"Multicast codes need a larger field than {field}; trying {wider}")
            field = wider


def _multicast_encoder(
    instance: IccsiInstance, r: int, copies: Sequence[frozenset], select: Optional[Sequence[int]] = None
) -> Tuple[FieldSpec, np.ndarray]:
    """
    Group copy i sends L_M X G_i, G an [s, r] MDS generator; with `select` it sends only
    sub-block select[i] instead
    """
    s = len(copies)
    field, rows = _multicast_rows(instance, copies)
    if select is None:
        wanted = mds_field(instance.field, s, r)
        if wanted.q > field.q:
            field, rows = wanted, [
                multicast_matrix(sub_instance(lift_instance(instance, wanted), g)).data for g in copies
            ]
        G = _generator(s, r, field)
        columns = [G[:, i] for i in range(s)]
    else:
        columns = [np.eye(r, dtype=np.int64)[a] for a in select]
    blocks = [
        np.stack([_outer(field, row, columns[i]) for row in L])
        for i, L in enumerate(rows)
        if len(L)
    ]
    encoder = np.vstack(blocks) if blocks else np.zeros((0, instance.n * r), dtype=np.int64)
    return field, encoder


def scheme_partition_multicast(
    instance: Instance,
    groups: Sequence[Iterable[int]],
    weights: Optional[Sequence] = None,
    field: Optional[FieldSpec] = None,
) -> SchemePlan:
    """
    One multicast of d_M rows per group

    With fractional weights a_M (denominator r) group copy i sends L_M X G_i for an
    [s, r] MDS generator G, so each receiver collects r independent views of its request.

    Args:
        instance: Instance
        groups: Groups (0-based receivers)
        weights: Group weights summing to 1 per receiver (default: all 1)
        field: Field for ICSI instances

    Returns:
        SchemePlan with sum_M a_M r d_M transmissions
    """
    coded = _coded(instance, field)
    r, copies = _group_copies(coded, groups, weights)
    used, encoder = _multicast_encoder(coded, r, copies)
    params = {"s": len(copies), "r": r, "groups": [to_labels(g) for g in copies]}
    return _plan(SchemeKind.MULTICAST, coded, used, r, encoder, params)


def scheme_from_encoder(
    instance: Instance,
    L: FqMatrix,
    kind: SchemeKind = SchemeKind.ENCODER,
    field: Optional[FieldSpec] = None,
) -> SchemePlan:
    """
    Scalar scheme sending the rows of a linear code

    Args:
        instance: Instance
        L: Code in sender coordinates (d_S columns) or ambient rows (n columns)
        kind: Label for the plan
        field: Field for ICSI instances
    """
    coded = _coded(instance, field)
    rows = encoder_rows(coded, L.with_field(coded.field) if L.field != coded.field else L)
    return _plan(kind, coded, coded.field, 1, rows.data, {"rows": rows.rows})


# ---- decoding ----


def _side_rows(instance: IccsiInstance, i: int, split: int) -> np.ndarray:
    return np.kron(instance.V[i].data, np.eye(split, dtype=np.int64)).reshape(-1, instance.n * split)


def _request_rows(instance: IccsiInstance, i: int, split: int) -> np.ndarray:
    return np.kron(instance.R.data[i : i + 1], np.eye(split, dtype=np.int64))


def decode_traces(instance: Instance, plan: SchemePlan, field: Optional[FieldSpec] = None) -> Tuple[DecodeTrace, ...]:
    """
    Linear decoder of every receiver: D with D [encoder; V_i (x) I] = R_i (x) I

    Receivers with no such D get a trace without decoder.
    """
    coded = lift_instance(_coded(instance, field), plan.field)
    f = plan.field
    traces = []
    for i in range(coded.m):
        side = _side_rows(coded, i, plan.split)
        knowledge = FqMatrix(f, np.vstack([plan.encoder.data, side]).reshape(-1, coded.n * plan.split))
        rows = []
        for target in _request_rows(coded, i, plan.split):
            x = linalg.solve_left(knowledge, target) if knowledge.rows else None
            if x is None:
                rows = None
                break
            rows.append(x)
        decoder = None if rows is None else FqMatrix.from_rows(f, rows, cols=knowledge.rows)
        traces.append(DecodeTrace(receiver=i, decoder=decoder, side_rows=side.shape[0]))
    return tuple(traces)


def simulate(
    instance: Instance,
    plan: SchemePlan,
    trials: Optional[int] = None,
    seed: Optional[int] = None,
    field: Optional[FieldSpec] = None,
) -> SchemeTranscript:
    """
    Run a scheme on random messages and check every receiver's output against R_i X

    Args:
        instance: Instance
        plan: Scheme
        trials: Number of random message matrices (default: settings.DEFAULT_TRIALS)
        seed: Generator seed (default: settings.DEFAULT_SEED)
        field: Field for ICSI instances

    Returns:
        SchemeTranscript with zero failures

    Raises:
        SchemeFailure: If a receiver has no decoder or decodes a wrong value
    """
    trials = settings.DEFAULT_TRIALS if trials is None else trials
    seed = settings.DEFAULT_SEED if seed is None else seed
    coded = lift_instance(_coded(instance, field), plan.field)
    f, split = plan.field, plan.split
    traces = decode_traces(coded, plan)
    stuck = [t.receiver + 1 for t in traces if not t.decodable]
    if stuck:
        raise SchemeFailure(f"Receivers {stuck} cannot decode the {plan.kind.value} scheme")

    rng = np.random.default_rng(seed)
    X = rng.integers(0, f.q, size=(coded.n * split, trials), dtype=np.int64)
    Y = f.matmul(plan.encoder.data, X)
    failures = 0
    for trace in traces:
        side = f.matmul(_side_rows(coded, trace.receiver, split), X)
        decoded = f.matmul(trace.decoder.data, np.vstack([Y, side]))
        wanted = f.matmul(_request_rows(coded, trace.receiver, split), X)
        wrong = int((decoded != wanted).any(axis=0).sum())
        if wrong:
            logger.error(f"Receiver {trace.receiver + 1} decoded {wrong}/{trials} trials wrongly")
            failures += wrong
    if failures:
        raise SchemeFailure(f"{failures} wrong decodings in {trials} trials of the {plan.kind.value} scheme")
    words = tuple(int(y) for y in Y[:, 0]) if trials else ()
    logger.info(f"Simulated {trials} trials of {plan.kind.value}: rate {plan.rate}, no failures")
    return SchemeTranscript(plan=plan, trials=trials, seed=seed, traces=traces, failures=0, words=words)


# ---- sub-packet selection without MDS ----


def subpacket_selections(count: int, split: int) -> Iterator[Tuple[int, ...]]:
    """Every assignment of one sub-block to each of `count` group copies"""
    return product(range(split), repeat=count)


def naive_subpacket_multicast(
    instance: Instance,
    groups: Sequence[Iterable[int]],
    selection: Sequence[int],
    weights: Optional[Sequence] = None,
    field: Optional[FieldSpec] = None,
) -> SubpacketReport:
    """
    Group copy i multicasts only sub-block selection[i] of the messages

    Args:
        instance: Instance
        groups: Groups (0-based receivers)
        selection: Sub-block (0-based) per group copy
        weights: Group weights (default: all 1)
        field: Field for ICSI instances

    Returns:
        SubpacketReport listing the request sub-blocks each receiver can rebuild
    """
    coded = _coded(instance, field)
    r, copies = _group_copies(coded, groups, weights)
    selection = tuple(int(a) for a in selection)
    if len(selection) != len(copies) or any(not 0 <= a < r for a in selection):
        raise PreconditionViolated(f"Need one sub-block in 0..{r - 1} for each of {len(copies)} group copies")
    used, encoder = _multicast_encoder(coded, r, copies, select=selection)
    lifted = lift_instance(coded, used)
    recovered = []
    for i in range(coded.m):
        knowledge = linalg.span(used, coded.n * r, np.vstack([encoder, _side_rows(lifted, i, r)]))
        targets = _request_rows(lifted, i, r)
        recovered.append(frozenset(a for a in range(r) if linalg.contains(knowledge, targets[a])))
    return SubpacketReport(selection=selection, recovered=tuple(recovered), split=r)


def subpacket_sweep(
    instance: Instance,
    groups: Sequence[Iterable[int]],
    weights: Optional[Sequence] = None,
    field: Optional[FieldSpec] = None,
) -> List[SubpacketReport]:
    """naive_subpacket_multicast over every selection"""
    coded = _coded(instance, field)
    r, copies = _group_copies(coded, groups, weights)
    reports = [
        naive_subpacket_multicast(coded, groups, selection, weights)
        for selection in subpacket_selections(len(copies), r)
    ]
    logger.info(f"{len(reports)} sub-block selections tried, {sum(1 for s in reports if s.failing)} failing")
    return reports


# ---- plans from certificates ----


def _cover_lists(bound: BoundValue) -> Tuple[List[frozenset], List[Tuple[int, ...]], List[Fraction]]:
    entries: Sequence[CoverEntry] = bound.cover
    return (
        [e.members for e in entries],
        [e.vector for e in entries],
        [e.weight for e in entries],
    )


def plan_scheme(
    instance: Instance,
    kind: Union[SchemeKind, str],
    fractional: bool = False,
    field: Optional[FieldSpec] = None,
    budget: Optional[int] = None,
) -> SchemePlan:
    """
    Build a scheme from the certificate of its bound

    Args:
        instance: Instance
        kind: Scheme family
        fractional: Use the relaxed program's certificate
        field: Field for ICSI instances
        budget: Node budget for kappa

    Returns:
        SchemePlan whose rate equals the bound's value
    """
    coded = _coded(instance, field)
    kind = SchemeKind(kind)
    if kind in (SchemeKind.KAPPA, SchemeKind.ENCODER):
        result = kappa(coded, budget)
        return scheme_from_encoder(coded, result.code_rows, kind=SchemeKind.KAPPA)

    name = BOUND_FOR_SCHEME[(kind, fractional)]
    bound = compute_bounds(coded, [name])[name]
    if kind == SchemeKind.MULTICAST:
        return scheme_partition_multicast(
            coded, [g.members for g in bound.groups], [g.weight for g in bound.groups]
        )
    cover, vectors, weights = _cover_lists(bound)
    if kind == SchemeKind.CLIQUE:
        return scheme_clique_cover(coded, cover, vectors, weights)
    if kind == SchemeKind.LOCAL:
        return scheme_local_clique(coded, cover, vectors, weights)
    return scheme_partitioned_local(coded, [g.members for g in bound.groups], cover, vectors, weights)
