"""
Matrix Models
Immutable matrices over GF(p^ell) and row-space (subspace) values
"""

from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np

from icbound.core.exceptions import DimensionMismatch
from icbound.models.field import FieldSpec


class FqMatrix:
    """Matrix over a finite field; entries are canonical integer encodings"""

    __slots__ = ("field", "data")

    def __init__(self, field: FieldSpec, data):
        array = np.array(data, dtype=np.int64)
        if array.ndim != 2:
            raise DimensionMismatch(f"Matrix data must be 2-D, got shape {array.shape}")
        if array.size and (array.min() < 0 or array.max() >= field.q):
            raise ValueError(f"Entries must lie in 0..{field.q - 1}")
        array.setflags(write=False)
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "data", array)

    def __setattr__(self, name, value):
        raise AttributeError("FqMatrix is immutable")

    # ---- constructors ----

    @classmethod
    def from_rows(cls, field: FieldSpec, rows: Iterable[Sequence[int]], cols: Optional[int] = None):
        rows = [list(r) for r in rows]
        if not rows:
            if cols is None:
                raise DimensionMismatch("Column count required for a matrix without rows")
            return cls(field, np.zeros((0, cols), dtype=np.int64))
        if cols is not None and any(len(r) != cols for r in rows):
            raise DimensionMismatch(f"Every row must have {cols} entries")
        return cls(field, rows)

    @classmethod
    def zeros(cls, field: FieldSpec, rows: int, cols: int):
        return cls(field, np.zeros((rows, cols), dtype=np.int64))

    @classmethod
    def identity(cls, field: FieldSpec, n: int):
        return cls(field, np.eye(n, dtype=np.int64))

    @classmethod
    def unit_rows(cls, field: FieldSpec, n: int, positions: Iterable[int]):
        """Rows e_j (0-based j) in the given order"""
        positions = list(positions)
        data = np.zeros((len(positions), n), dtype=np.int64)
        for row, j in enumerate(positions):
            data[row, j] = 1
        return cls(field, data)

    # ---- shape and access ----

    @property
    def rows(self) -> int:
        return int(self.data.shape[0])

    @property
    def cols(self) -> int:
        return int(self.data.shape[1])

    @property
    def shape(self) -> Tuple[int, int]:
        return self.rows, self.cols

    @property
    def entries(self) -> List[int]:
        """Row-major entry list"""
        return [int(x) for x in self.data.ravel()]

    def row(self, i: int) -> np.ndarray:
        return self.data[i]

    def tolist(self) -> List[List[int]]:
        return [[int(x) for x in row] for row in self.data]

    def is_zero(self) -> bool:
        return not np.any(self.data)

    # ---- algebra ----

    def _check_field(self, other: "FqMatrix") -> None:
        if other.field != self.field:
            raise DimensionMismatch(f"Field mismatch: {self.field} vs {other.field}")

    @property
    def T(self) -> "FqMatrix":
        return FqMatrix(self.field, self.data.T)

    def __matmul__(self, other: "FqMatrix") -> "FqMatrix":
        self._check_field(other)
        if self.cols != other.rows:
            raise DimensionMismatch(f"Cannot multiply {self.shape} by {other.shape}")
        return FqMatrix(self.field, self.field.matmul(self.data, other.data))

    def __add__(self, other: "FqMatrix") -> "FqMatrix":
        self._check_field(other)
        if self.shape != other.shape:
            raise DimensionMismatch(f"Cannot add {self.shape} and {other.shape}")
        return FqMatrix(self.field, self.field.add(self.data, other.data))

    def __sub__(self, other: "FqMatrix") -> "FqMatrix":
        self._check_field(other)
        if self.shape != other.shape:
            raise DimensionMismatch(f"Cannot subtract {other.shape} from {self.shape}")
        return FqMatrix(self.field, self.field.sub(self.data, other.data))

    def scale(self, c: int) -> "FqMatrix":
        return FqMatrix(self.field, self.field.mul(self.data, c))

    def vstack(self, *others: "FqMatrix") -> "FqMatrix":
        for other in others:
            self._check_field(other)
            if other.cols != self.cols:
                raise DimensionMismatch(f"Cannot stack {other.shape} under {self.shape}")
        return FqMatrix(self.field, np.vstack([self.data] + [o.data for o in others]))

    def select_rows(self, indices: Sequence[int]) -> "FqMatrix":
        return FqMatrix(self.field, self.data[list(indices), :].reshape(len(indices), self.cols))

    def select_cols(self, indices: Sequence[int]) -> "FqMatrix":
        return FqMatrix(self.field, self.data[:, list(indices)].reshape(self.rows, len(indices)))

    def with_field(self, field: FieldSpec) -> "FqMatrix":
        """Same entries read in another field (valid for prime-subfield embeddings)"""
        return FqMatrix(field, self.data)

    # ---- comparison ----

    def __eq__(self, other) -> bool:
        if not isinstance(other, FqMatrix):
            return NotImplemented
        return (
            self.field == other.field
            and self.shape == other.shape
            and bool(np.array_equal(self.data, other.data))
        )

    def __hash__(self) -> int:
        return hash((self.field, self.shape, self.data.tobytes()))

    def __repr__(self) -> str:
        return f"FqMatrix({self.field}, {self.tolist()})"


class Subspace:
    """
    Row space in F_q^n, stored by its reduced row echelon basis

    Two subspaces are equal iff their bases are equal. Build instances with
    `icbound.services.linalg.span`; the constructor only checks the echelon shape.
    """

    __slots__ = ("field", "ambient_dim", "basis", "pivots")

    def __init__(self, field: FieldSpec, ambient_dim: int, basis: FqMatrix):
        if basis.cols != ambient_dim:
            raise DimensionMismatch(f"Basis has {basis.cols} columns, ambient is {ambient_dim}")
        pivots = []
        for row in basis.data:
            nonzero = np.nonzero(row)[0]
            if nonzero.size == 0 or row[nonzero[0]] != 1:
                raise ValueError("Basis rows must be nonzero with unit pivots")
            pivots.append(int(nonzero[0]))
        if any(b <= a for a, b in zip(pivots, pivots[1:])):
            raise ValueError("Pivot columns must strictly increase")
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "ambient_dim", ambient_dim)
        object.__setattr__(self, "basis", basis)
        object.__setattr__(self, "pivots", tuple(pivots))

    def __setattr__(self, name, value):
        raise AttributeError("Subspace is immutable")

    @property
    def dim(self) -> int:
        return self.basis.rows

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.basis == other.basis

    def __hash__(self) -> int:
        return hash((self.ambient_dim, self.basis))

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, n={self.ambient_dim}, basis={self.basis.tolist()})"
