"""
Instance Service
Conversions between instance kinds, decodability checks, decoding and JSON file I/O
"""

import json
import logging
from importlib import resources
from pathlib import Path
from typing import Iterable, Optional, Sequence, Union

import numpy as np
from pydantic import ValidationError

from icbound.core.exceptions import (
    DimensionMismatch,
    InstanceFormatError,
    NotCanonical,
    NotDecodable,
    PreconditionViolated,
)
from icbound.models.field import FieldSpec
from icbound.models.graph import Digraph, Hyperarc, Hypergraph
from icbound.models.instance import CodeValidity, DecodingWitness, IccsiInstance, IcsiInstance
from icbound.models.matrix import FqMatrix
from icbound.schemas.instance import (
    FieldSchema,
    IccsiSchema,
    IcsiSchema,
    InstanceDocument,
    MatrixSchema,
)
from icbound.services import linalg
from icbound.services.finite_field import field_make
from icbound.utils.constants import FIXTURE_PREFIX, FIXTURES

logger = logging.getLogger(__name__)

Instance = Union[IcsiInstance, IccsiInstance]


# ---- graph views of ICSI instances ----


def to_hypergraph(instance: IcsiInstance) -> Hypergraph:
    """One hyperarc (f(i), X_i) per receiver, in receiver order"""
    return Hypergraph(
        instance.n,
        tuple(Hyperarc(d, known) for d, known in zip(instance.f, instance.side_info)),
    )


def to_digraph(instance: IcsiInstance) -> Digraph:
    """
    Side-information digraph of a canonical instance

    Raises:
        NotCanonical: If m != n or f is not the identity
    """
    if not instance.is_canonical:
        raise NotCanonical("Digraph view needs m = n and f(i) = i for every receiver")
    return Digraph(
        instance.n,
        frozenset((i, j) for i, known in enumerate(instance.side_info, start=1) for j in known),
    )


def digraph_instance(graph: Digraph) -> IcsiInstance:
    """Canonical ICSI instance whose side-information digraph is `graph`"""
    return IcsiInstance(
        graph.n,
        tuple(graph.vertices),
        tuple(frozenset(graph.out_neighbors(i)) for i in graph.vertices),
    )


def embed_iccsi(instance: IcsiInstance, field: FieldSpec) -> IccsiInstance:
    """
    ICSI as ICCSI: V_S = I_n, R_i = e_f(i), V^(i) = unit rows of X_i

    Args:
        instance: Uncoded instance
        field: Field of the embedding

    Returns:
        Equivalent coded instance
    """
    n = instance.n
    return IccsiInstance(
        field,
        FqMatrix.identity(field, n),
        tuple(FqMatrix.unit_rows(field, n, [j - 1 for j in sorted(known)]) for known in instance.side_info),
        FqMatrix.unit_rows(field, n, [d - 1 for d in instance.f]),
        instance.t,
    )


def as_iccsi(instance: Instance, field: Optional[FieldSpec] = None) -> IccsiInstance:
    """Coded view of either kind; ICSI needs a field"""
    if isinstance(instance, IccsiInstance):
        return instance
    if field is None:
        raise PreconditionViolated("A field is required to embed an ICSI instance")
    return embed_iccsi(instance, field)


# ---- sub-instances and coordinates ----


def sub_instance(instance: IccsiInstance, members: Iterable[int]) -> IccsiInstance:
    """
    Multicast sub-instance of a receiver group

    Receivers are the members (0-based, in increasing order); the sender space becomes
    the span of their requests.

    Args:
        instance: Coded instance
        members: Receiver indices

    Returns:
        Instance (X^(j) for j in M, <R_M>, R_M)
    """
    members = sorted(set(members))
    if not members:
        raise PreconditionViolated("A multicast group needs at least one receiver")
    requests = instance.R.select_rows(members)
    sender = linalg.span(instance.field, instance.n, requests)
    return IccsiInstance(
        instance.field,
        sender.basis,
        tuple(instance.V[j] for j in members),
        requests,
        instance.t,
    )


def to_sender_coordinates(instance: IccsiInstance, rows: FqMatrix) -> FqMatrix:
    """
    Express ambient rows in terms of the sender's rows: returns L with L V_S = rows

    Raises:
        PreconditionViolated: If a row lies outside the sender space
    """
    coords = []
    for k in range(rows.rows):
        x = linalg.solve_left(instance.VS, rows.row(k))
        if x is None:
            raise PreconditionViolated(f"Row {k + 1} is not in the sender space")
        coords.append(x)
    return FqMatrix.from_rows(instance.field, coords, cols=instance.VS.rows)


def encoder_rows(instance: IccsiInstance, L: FqMatrix, ambient: Optional[bool] = None) -> FqMatrix:
    """
    Transmitted coding vectors in F_q^n

    L with d_S columns is read in sender coordinates (rows of L V_S); L with n columns is
    read as ambient rows, which must lie in the sender space.

    Raises:
        DimensionMismatch: If L matches neither width
    """
    if L.field != instance.field:
        raise DimensionMismatch(f"Encoder over {L.field}, instance over {instance.field}")
    if ambient is None:
        ambient = L.cols != instance.VS.rows
    if not ambient:
        if L.cols != instance.VS.rows:
            raise DimensionMismatch(f"Encoder has {L.cols} columns, sender holds {instance.VS.rows} rows")
        return L @ instance.VS
    if L.cols != instance.n:
        raise DimensionMismatch(
            f"Encoder has {L.cols} columns; expected {instance.VS.rows} or {instance.n}"
        )
    if L.rows and not linalg.contains_many(instance.sender_space, L.data).all():
        raise PreconditionViolated("Encoder rows must lie in the sender space")
    return L


# ---- decodability ----


def is_valid_code(L: FqMatrix, instance: Instance, ambient: Optional[bool] = None) -> CodeValidity:
    """
    Check R_i in <L V_S> + X^(i) for every receiver

    Args:
        L: Encoder, in sender coordinates or as ambient rows
        instance: Instance (ICSI instances are embedded over L's field)
        ambient: Force the reading of L (see encoder_rows)

    Returns:
        CodeValidity with per-receiver witnesses (b, a): R_i = b.(L V_S) + a.V^(i)
    """
    instance = as_iccsi(instance, L.field)
    sent = encoder_rows(instance, L, ambient)
    witnesses = []
    for i in range(instance.m):
        stacked = sent.vstack(instance.V[i])
        x = linalg.solve_left(stacked, instance.R.row(i))
        if x is None:
            witnesses.append(None)
            continue
        witnesses.append(
            DecodingWitness(tuple(int(c) for c in x[: sent.rows]), tuple(int(c) for c in x[sent.rows:]))
        )
    valid = all(w is not None for w in witnesses)
    logger.debug(f"Code with {L.rows} rows: valid={valid}")
    return CodeValidity(valid, tuple(witnesses))


def _block_width(Y: np.ndarray, y_rows: int, side: np.ndarray, side_rows: int) -> int:
    """Symbols per message block, read from whichever operand carries it"""
    shaped = sorted((data for data in (Y, side) if data.ndim == 2), key=lambda d: d.size == 0)
    if shaped:
        return shaped[0].shape[1]
    if y_rows:
        return Y.size // y_rows
    if side_rows:
        return side.size // side_rows
    return 0


def decode(
    instance: Instance,
    L: FqMatrix,
    Y: np.ndarray,
    i: int,
    side_packets: np.ndarray,
    validity: Optional[CodeValidity] = None,
) -> np.ndarray:
    """
    Receiver i's computation R_i X = b Y + a Lambda_i

    Args:
        instance: Instance
        L: Encoder used by the sender
        Y: Received block (L V_S X), one row per transmission
        i: Receiver (0-based)
        side_packets: Lambda_i = V^(i) X
        validity: Cached result of is_valid_code

    Returns:
        The recovered row R_i X

    Raises:
        NotDecodable: If receiver i has no witness
    """
    field = L.field
    instance = as_iccsi(instance, field)
    if validity is None:
        validity = is_valid_code(L, instance)
    witness = validity.witnesses[i]
    if witness is None:
        raise NotDecodable(f"Receiver {i + 1} cannot decode with this encoder")
    Y = np.asarray(Y, dtype=np.int64)
    side_packets = np.asarray(side_packets, dtype=np.int64)
    t = _block_width(Y, len(witness.b), side_packets, len(witness.a))
    Y = Y.reshape(len(witness.b), t)
    side_packets = side_packets.reshape(len(witness.a), t)
    result = np.zeros(t, dtype=np.int64)
    if witness.b:
        result = field.add(result, field.matmul(np.array([witness.b]), Y)[0])
    if witness.a:
        result = field.add(result, field.matmul(np.array([witness.a]), side_packets)[0])
    return result


# ---- file I/O ----


def resolve_path(path: Union[str, Path]) -> Path:
    """Bundled fixtures are addressed as @name"""
    text = str(path)
    if text.startswith(FIXTURE_PREFIX):
        name = text[len(FIXTURE_PREFIX):]
        if name not in FIXTURES:
            raise InstanceFormatError(f"Unknown fixture {name!r}; available: {', '.join(FIXTURES)}")
        return Path(str(resources.files("icbound.data").joinpath(f"{name}.json")))
    return Path(text)


def read_json(path: Union[str, Path]) -> dict:
    resolved = resolve_path(path)
    try:
        with open(resolved, "r", encoding="utf-8") as handle:
            return json.load(handle)
    except FileNotFoundError as e:
        raise InstanceFormatError(f"File not found: {resolved}") from e
    except json.JSONDecodeError as e:
        raise InstanceFormatError(f"{resolved} is not valid JSON: {e}") from e


def field_from_schema(schema: FieldSchema) -> FieldSpec:
    return field_make(schema.p, schema.ell, schema.modulus)


def field_to_schema(field: FieldSpec) -> FieldSchema:
    return FieldSchema(p=field.p, ell=field.ell, modulus=list(field.modulus))


def matrix_from_schema(schema: MatrixSchema, field: Optional[FieldSpec] = None) -> FqMatrix:
    """
    Matrix from its JSON form

    Raises:
        InstanceFormatError: If the matrix carries no field and none is given, or fields disagree
    """
    if schema.p is not None:
        own = field_make(schema.p, schema.ell or 1, schema.modulus)
        if field is not None and own != field:
            raise InstanceFormatError(f"Matrix over {own} inside an instance over {field}")
        field = own
    if field is None:
        raise InstanceFormatError("Matrix without field information")
    data = np.array(schema.entries, dtype=np.int64).reshape(schema.rows, schema.cols)
    try:
        return FqMatrix(field, data)
    except ValueError as e:
        raise InstanceFormatError(str(e)) from e


def matrix_to_schema(M: FqMatrix, with_field: bool = True) -> MatrixSchema:
    if with_field:
        return MatrixSchema(
            p=M.field.p,
            ell=M.field.ell,
            modulus=list(M.field.modulus),
            rows=M.rows,
            cols=M.cols,
            entries=M.entries,
        )
    return MatrixSchema(rows=M.rows, cols=M.cols, entries=M.entries)


def instance_from_data(data: dict) -> Instance:
    """
    Parse either instance kind from decoded JSON

    Raises:
        InstanceFormatError: On schema violations or inconsistent instances
    """
    try:
        schema = InstanceDocument.model_validate({"instance": data}).instance
    except ValidationError as e:
        raise InstanceFormatError(f"Invalid instance: {e}") from e
    try:
        if isinstance(schema, IcsiSchema):
            return IcsiInstance(
                schema.n,
                tuple(schema.f),
                tuple(frozenset(s) for s in schema.side_info),
                schema.t,
            )
        field = field_from_schema(schema.field)
        return IccsiInstance(
            field,
            matrix_from_schema(schema.VS, field),
            tuple(matrix_from_schema(v, field) for v in schema.V),
            matrix_from_schema(schema.R, field),
            schema.t,
        )
    except (PreconditionViolated, DimensionMismatch) as e:
        raise InstanceFormatError(f"Inconsistent instance: {e}") from e


def instance_to_data(instance: Instance) -> dict:
    """Canonical JSON form of an instance"""
    if isinstance(instance, IcsiInstance):
        schema = IcsiSchema(
            n=instance.n,
            m=instance.m,
            t=instance.t,
            f=list(instance.f),
            side_info=[sorted(s) for s in instance.side_info],
        )
    else:
        schema = IccsiSchema(
            field=field_to_schema(instance.field),
            n=instance.n,
            m=instance.m,
            t=instance.t,
            VS=matrix_to_schema(instance.VS, with_field=False),
            V=[matrix_to_schema(v, with_field=False) for v in instance.V],
            R=matrix_to_schema(instance.R, with_field=False),
        )
    return schema.model_dump(exclude_none=True)


def load_instance(path: Union[str, Path]) -> Instance:
    """Read an instance file (or a bundled @fixture)"""
    instance = instance_from_data(read_json(path))
    logger.info(f"Loaded {type(instance).__name__} from {path}: n={instance.n}, m={instance.m}")
    return instance


def dump_instance(instance: Instance) -> str:
    return json.dumps(instance_to_data(instance), sort_keys=True)


def unit_vector(field: FieldSpec, n: int, j: int) -> np.ndarray:
    v = np.zeros(n, dtype=np.int64)
    v[j] = 1
    return v


def support(v: Sequence[int]) -> set:
    """0-based indices of nonzero coordinates"""
    return {int(k) for k in np.nonzero(np.asarray(v))[0]}
