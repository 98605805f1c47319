"""
MDS Service
Reed-Solomon style generator matrices with an exhaustive MDS check
"""

import logging
from itertools import combinations
from typing import Optional, Tuple

import numpy as np

from icbound.config import settings
from icbound.core.exceptions import FieldTooSmall
from icbound.models.field import FieldSpec
from icbound.models.matrix import FqMatrix
from icbound.services import linalg
from icbound.services.finite_field import extension_field

logger = logging.getLogger(__name__)


def is_mds(G: FqMatrix) -> bool:
    """True iff every k columns of the k x s generator G are independent"""
    k, s = G.shape
    if k == 0:
        return True
    if k > s:
        return False
    return all(linalg.rank(G.select_cols(cols)) == k for cols in combinations(range(s), k))


def _vandermonde(field: FieldSpec, s: int, k: int) -> np.ndarray:
    points = list(range(s))
    return np.array(
        [[field.power(x, a) for x in points] for a in range(k)],
        dtype=np.int64,
    ).reshape(k, s)


def rs_generator(s: int, k: int, field: FieldSpec, check: Optional[bool] = None) -> FqMatrix:
    """
    Generator of an [s, k] MDS code

    k = 0 gives the empty matrix, k = s the identity, k = 1 the all-ones row and
    k = s - 1 the parity code [I | 1]; these exist over every field. Other dimensions use
    a Vandermonde matrix on the first s field elements, which needs q >= s.

    Args:
        s: Length
        k: Dimension, 0 <= k <= s
        field: Field of the code
        check: Verify every k x k minor (default: when s <= MDS_CHECK_MAX_LENGTH)

    Returns:
        k x s generator

    Raises:
        FieldTooSmall: If q < s for a Vandermonde dimension
    """
    if not 0 <= k <= s:
        raise ValueError(f"Dimension {k} outside 0..{s}")
    if k == 0:
        G = FqMatrix.zeros(field, 0, s)
    elif k == s:
        G = FqMatrix.identity(field, s)
    elif k == 1:
        G = FqMatrix(field, np.ones((1, s), dtype=np.int64))
    elif k == s - 1:
        G = FqMatrix(field, np.hstack([np.eye(k, dtype=np.int64), np.ones((k, 1), dtype=np.int64)]))
    else:
        if field.q < s:
            raise FieldTooSmall(f"An [{s},{k}] Vandermonde code needs {s} points, {field} has {field.q}")
        G = FqMatrix(field, _vandermonde(field, s, k))

    if check is None:
        check = s <= settings.MDS_CHECK_MAX_LENGTH
    if check and not is_mds(G):
        raise FieldTooSmall(f"[{s},{k}] generator over {field} is not MDS")  # pragma: no cover
    return G


def mds_field(field: FieldSpec, s: int, k: int) -> FieldSpec:
    """
    Field over which an [s, k] MDS generator is built

    The instance field when it suffices, else the smallest extension with at least s
    elements (prime fields only).
    """
    if k in (0, 1, s - 1, s) or field.q >= s:
        return field
    return extension_field(field, s)


def mds_generator(s: int, k: int, field: FieldSpec) -> Tuple[FqMatrix, FieldSpec]:
    """[s, k] MDS generator, extending the scalars when needed; returns (G, field used)"""
    used = mds_field(field, s, k)
    if used != field:
        logger.info(f"MDS [{s},{k}] needs {s} points; scalars extended from {field} to {used}")
    return rs_generator(s, k, used), used
