"""
Linear Algebra Service
Gaussian elimination, solving, membership and subspace operations over GF(p^ell)
"""

from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np

from icbound.core.exceptions import DimensionMismatch
from icbound.models.field import FieldSpec
from icbound.models.matrix import FqMatrix, Subspace


def rref_array(field: FieldSpec, array: np.ndarray) -> Tuple[np.ndarray, List[int]]:
    """
    Reduced row echelon form of an integer array over `field`

    Args:
        field: Field of the entries
        array: 2-D array of encoded elements

    Returns:
        (nonzero rows of the RREF, pivot columns)
    """
    R = np.array(array, dtype=np.int64, copy=True)
    n_rows, n_cols = R.shape
    pivots: List[int] = []
    row = 0
    for col in range(n_cols):
        if row == n_rows:
            break
        nonzero = np.nonzero(R[row:, col])[0]
        if nonzero.size == 0:
            continue
        pivot_row = row + int(nonzero[0])
        if pivot_row != row:
            R[[row, pivot_row]] = R[[pivot_row, row]]
        R[row] = field.mul(R[row], field.inv(int(R[row, col])))
        factors = R[:, col].copy()
        factors[row] = 0
        mask = factors != 0
        if mask.any():
            R[mask] = field.sub(R[mask], field.mul(factors[mask][:, None], R[row][None, :]))
        pivots.append(col)
        row += 1
    return R[:row], pivots


def rref(M: FqMatrix) -> FqMatrix:
    """Unique reduced row echelon form of M (zero rows dropped)"""
    R, _ = rref_array(M.field, M.data)
    return FqMatrix(M.field, R.reshape(len(R), M.cols))


def rank(M: FqMatrix) -> int:
    """Rank of M by Gaussian elimination"""
    if M.rows == 0 or M.cols == 0:
        return 0
    _, pivots = rref_array(M.field, M.data)
    return len(pivots)


@dataclass(frozen=True)
class LinearSolution:
    """All solutions of A x = b: particular + span(kernel rows)"""
    particular: np.ndarray
    kernel: FqMatrix


def _nullspace_rows(field: FieldSpec, R: np.ndarray, pivots: Sequence[int], n: int) -> np.ndarray:
    free = [c for c in range(n) if c not in set(pivots)]
    basis = np.zeros((len(free), n), dtype=np.int64)
    for k, f in enumerate(free):
        basis[k, f] = 1
        for i, pc in enumerate(pivots):
            basis[k, pc] = field.neg(int(R[i, f]))
    return basis


def kernel(A: FqMatrix) -> FqMatrix:
    """
    Right kernel of A

    Args:
        A: r x c matrix

    Returns:
        Matrix whose rows k form a basis of {k : A k = 0}
    """
    R, pivots = rref_array(A.field, A.data)
    return FqMatrix(A.field, _nullspace_rows(A.field, R, pivots, A.cols).reshape(-1, A.cols))


def solve(A: FqMatrix, b: Sequence[int]) -> Optional[LinearSolution]:
    """
    Solve A x = b

    Args:
        A: r x c matrix
        b: length-r right-hand side

    Returns:
        Particular solution and kernel basis, or None when the system is infeasible

    Raises:
        DimensionMismatch: If len(b) != A.rows
    """
    b = np.asarray(b, dtype=np.int64).ravel()
    if b.shape[0] != A.rows:
        raise DimensionMismatch(f"Right-hand side has {b.shape[0]} entries, A has {A.rows} rows")
    field, n = A.field, A.cols
    augmented = np.hstack([A.data.reshape(A.rows, n), b[:, None]])
    R, pivots = rref_array(field, augmented)
    if pivots and pivots[-1] == n:
        return None
    particular = np.zeros(n, dtype=np.int64)
    for i, pc in enumerate(pivots):
        particular[pc] = R[i, n]
    null = _nullspace_rows(field, R[:, :n], pivots, n)
    return LinearSolution(particular, FqMatrix(field, null.reshape(-1, n)))


def solve_left(A: FqMatrix, b: Sequence[int]) -> Optional[np.ndarray]:
    """
    One solution x of x A = b (row-vector form), or None

    Args:
        A: r x c matrix
        b: length-c target row

    Returns:
        Coefficient vector of length r, or None if b is not in the row space
    """
    solution = solve(A.T, b)
    return None if solution is None else solution.particular


def in_rowspace(v: Sequence[int], M: FqMatrix) -> bool:
    """True iff v lies in the row space of M"""
    v = np.asarray(v, dtype=np.int64).ravel()
    if v.shape[0] != M.cols:
        raise DimensionMismatch(f"Vector length {v.shape[0]} != {M.cols} columns")
    if not v.any():
        return True
    return rank(M.vstack(FqMatrix(M.field, v[None, :]))) == rank(M)


# ---- subspaces ----


def span(field: FieldSpec, n: int, rows) -> Subspace:
    """
    Row space of the given rows

    Args:
        field: Field
        n: Ambient dimension
        rows: FqMatrix, array or iterable of length-n vectors

    Returns:
        Subspace with RREF basis
    """
    if isinstance(rows, FqMatrix):
        data = rows.data
    else:
        data = np.asarray(list(rows) if not isinstance(rows, np.ndarray) else rows, dtype=np.int64)
    data = data.reshape(-1, n)
    if data.shape[0] == 0:
        return Subspace(field, n, FqMatrix.zeros(field, 0, n))
    R, _ = rref_array(field, data)
    return Subspace(field, n, FqMatrix(field, R.reshape(-1, n)))


def zero_space(field: FieldSpec, n: int) -> Subspace:
    return Subspace(field, n, FqMatrix.zeros(field, 0, n))


def full_space(field: FieldSpec, n: int) -> Subspace:
    return Subspace(field, n, FqMatrix.identity(field, n))


def _check_compatible(U: Subspace, W: Subspace) -> None:
    if U.field != W.field or U.ambient_dim != W.ambient_dim:
        raise DimensionMismatch(
            f"Subspaces live in different spaces: {U.field}^{U.ambient_dim} vs {W.field}^{W.ambient_dim}"
        )


def reduce_many(U: Subspace, vectors: np.ndarray) -> np.ndarray:
    """
    Residues of many vectors modulo U (zero rows exactly for members)

    Args:
        U: Subspace
        vectors: k x n array

    Returns:
        k x n array of residues
    """
    field = U.field
    V = np.array(vectors, dtype=np.int64, copy=True).reshape(-1, U.ambient_dim)
    for row, pc in zip(U.basis.data, U.pivots):
        coeffs = V[:, pc].copy()
        mask = coeffs != 0
        if mask.any():
            V[mask] = field.sub(V[mask], field.mul(coeffs[mask][:, None], row[None, :]))
    return V


def contains_many(U: Subspace, vectors: np.ndarray) -> np.ndarray:
    """Boolean membership of each row of `vectors` in U"""
    return ~reduce_many(U, vectors).any(axis=1)


def contains(U: Subspace, v: Sequence[int]) -> bool:
    """True iff v lies in U"""
    return bool(contains_many(U, np.asarray(v, dtype=np.int64)[None, :])[0])


def coordinates(U: Subspace, v: Sequence[int]) -> Optional[np.ndarray]:
    """
    Coefficients c with c . basis(U) = v

    Args:
        U: Subspace
        v: Vector of length n

    Returns:
        Coefficient vector, or None if v is not in U
    """
    v = np.asarray(v, dtype=np.int64)
    if not contains(U, v):
        return None
    return v[list(U.pivots)].copy()


def subspace_sum(U: Subspace, W: Subspace) -> Subspace:
    """U + W as the row space of the stacked bases"""
    _check_compatible(U, W)
    return span(U.field, U.ambient_dim, U.basis.vstack(W.basis))


def subspace_intersect(U: Subspace, W: Subspace) -> Subspace:
    """
    U intersect W by the kernel method

    Pairs (x, y) with x.B_U = y.B_W are the left kernel of the stacked bases;
    each gives the common vector x.B_U.

    Args:
        U: Subspace
        W: Subspace of the same ambient space

    Returns:
        The intersection
    """
    _check_compatible(U, W)
    field, n = U.field, U.ambient_dim
    if U.dim == 0 or W.dim == 0:
        return zero_space(field, n)
    stacked = U.basis.vstack(W.basis)
    left_kernel = kernel(stacked.T)
    if left_kernel.rows == 0:
        return zero_space(field, n)
    x = FqMatrix(field, left_kernel.data[:, : U.dim])
    return span(field, n, x @ U.basis)


def is_subspace(U: Subspace, W: Subspace) -> bool:
    """True iff U is contained in W"""
    _check_compatible(U, W)
    return bool(contains_many(W, U.basis.data).all()) if U.dim else True


class EchelonBasis:
    """
    Incremental echelon form for search loops

    Rows are kept with unit pivots and zeros at the pivots of earlier rows, so
    reducing a vector row by row in insertion order leaves a zero residue exactly
    for members of the span. `extend` returns a new basis and never mutates.
    """

    __slots__ = ("field", "n", "rows", "pivots")

    def __init__(self, field: FieldSpec, n: int, rows: Tuple = (), pivots: Tuple = ()):
        self.field = field
        self.n = n
        self.rows = rows
        self.pivots = pivots

    @property
    def rank(self) -> int:
        return len(self.rows)

    def reduce(self, v: np.ndarray) -> np.ndarray:
        field = self.field
        v = np.asarray(v, dtype=np.int64)
        for row, pc in zip(self.rows, self.pivots):
            c = int(v[pc])
            if c:
                v = field.sub(v, field.mul(c, row))
        return v

    def contains(self, v: np.ndarray) -> bool:
        return not self.reduce(v).any()

    def extend(self, v: np.ndarray) -> "EchelonBasis":
        residue = self.reduce(v)
        nonzero = np.nonzero(residue)[0]
        if nonzero.size == 0:
            return self
        pc = int(nonzero[0])
        row = self.field.mul(residue, self.field.inv(int(residue[pc])))
        row.setflags(write=False)
        return EchelonBasis(self.field, self.n, self.rows + (row,), self.pivots + (pc,))

    @classmethod
    def from_rows(cls, field: FieldSpec, n: int, rows: Iterable[np.ndarray]) -> "EchelonBasis":
        basis = cls(field, n)
        for v in rows:
            basis = basis.extend(v)
        return basis
